use thiserror::Error;

/// Errors surfaced by the arithmetic kernel and the verification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precision exponent must be >= 1")]
    ZeroPrecision,

    #[error("modulus {p}^{b} does not fit in a machine word")]
    ModulusOverflow { p: u64, b: u32 },

    #[error("residue rings differ: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} is divisible by p; Teichmuller lift undefined")]
    TeichmullerDomain(u64),

    #[error("element {0} is not invertible modulo {1}")]
    NotInvertible(u64, u64),

    #[error("Bernoulli number B_{k} has a pole modulo {p} ((p-1) | k)")]
    BernoulliPole { k: u64, p: u64 },

    #[error("generalized Bernoulli number B_({n},chi) has negative valuation at {p}")]
    GenBernoulliPole { n: u32, p: u64 },

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("character must be {0}")]
    CharacterDomain(String),

    #[error("character values of order {order} are not realizable modulo {p}^{b}")]
    ValueNotRealizable { order: u64, p: u64, b: u32 },

    #[error("group order {0} is not invertible modulo {1}")]
    GroupOrderNotInvertible(u64, u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("({p},{k}) is not an irregular pair: B_{k} = {residue} mod {p}")]
    NotIrregular { p: u64, k: u64, residue: u64 },

    #[error("validation check failed at stage {stage}: {detail}")]
    ValidationFailed { stage: String, detail: String },

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
