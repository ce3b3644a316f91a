//! Arithmetic verification that U_p - 1 generates the weight-2 Eisenstein
//! ideal modulo its square, for irregular pairs (p, k).
//!
//! The pipeline builds weight-2 cuspidal modular symbols of level p with
//! nebentypus omega^(k-2), reduces the Hecke operators T_1..T_s (s the
//! Sturm-type bound (p+1)/6) and U_p into d x d matrices over Z/p^2, spans
//! the Hecke algebra image M, forms the Eisenstein ideal image I and its
//! square J, and decides whether I is generated by J together with
//! U_p - 1. Supporting machinery: exact linear algebra over Z/p^B in
//! Howell normal form, Bernoulli and generalized Bernoulli numbers modulo
//! p-powers, Dirichlet characters with Teichmuller-lift values, and the
//! eigenspace calculus for modules over (Z/p^m)[Delta] with |Delta| prime
//! to p.

pub mod error;
pub mod residue;
pub mod matrix;
pub mod howell;
pub mod character;
pub mod bernoulli;

pub use error::{Error, Result};
pub use howell::HowellBasis;
pub use matrix::PadicMatrix;
pub use residue::{teichmuller, Residue, ResidueRing};
