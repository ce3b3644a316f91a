//! Exact arithmetic in Z/p^B for a prime p and precision exponent B.
//!
//! Every value is stored as a canonical representative in [0, p^B) in a
//! machine word; products go through a double-width intermediate. The ring
//! rejects moduli that do not fit in a word (p^B must be < 2^63), which
//! covers every working precision used by the verification pipeline
//! (p < 1000, B + guard digits <= 6).

use crate::error::{Error, Result};

/// The coefficient ring Z/p^B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueRing {
    p: u64,
    b: u32,
    modulus: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl ResidueRing {
    pub fn new(p: u64, b: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if b == 0 {
            return Err(Error::ZeroPrecision);
        }
        let mut modulus: u64 = 1;
        for _ in 0..b {
            modulus = modulus
                .checked_mul(p)
                .filter(|&m| m < (1u64 << 63))
                .ok_or(Error::ModulusOverflow { p, b })?;
        }
        Ok(ResidueRing { p, b, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.b
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Same prime, possibly different precision.
    pub fn with_precision(&self, b: u32) -> Result<Self> {
        ResidueRing::new(self.p, b)
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        let m = self.modulus as i64;
        (((v % m) + m) % m) as u64
    }

    pub fn reduce_u64(&self, v: u64) -> u64 {
        v % self.modulus
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc: u64 = 1 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse for units (v coprime to p).
    pub fn inv(&self, v: u64) -> Result<u64> {
        let v = v % self.modulus;
        if v % self.p == 0 {
            return Err(Error::NotInvertible(v, self.modulus));
        }
        // extended Euclid on (v, modulus)
        let (mut r0, mut r1) = (self.modulus as i128, v as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        let m = self.modulus as i128;
        Ok((((t0 % m) + m) % m) as u64)
    }

    /// p-adic valuation of v, capped at B (val(0) = B).
    pub fn valuation(&self, v: u64) -> u32 {
        if v == 0 {
            return self.b;
        }
        let mut v = v;
        let mut e = 0;
        while v % self.p == 0 {
            v /= self.p;
            e += 1;
        }
        e
    }

    /// Exact division by p^e; errors if p^e does not divide v.
    pub fn div_pow_p(&self, v: u64, e: u32) -> Result<u64> {
        let mut q: u64 = 1;
        for _ in 0..e {
            q *= self.p;
        }
        if v % q != 0 {
            return Err(Error::Precision(format!(
                "{} is not divisible by {}^{}",
                v, self.p, e
            )));
        }
        Ok(v / q)
    }

    pub fn pow_p(&self, e: u32) -> u64 {
        let mut q: u64 = 1;
        for _ in 0..e.min(self.b) {
            q *= self.p;
        }
        if e >= self.b {
            0
        } else {
            q
        }
    }

    /// Truncate a value of this ring into a ring of lower precision.
    pub fn truncate(&self, v: u64, target: &ResidueRing) -> u64 {
        debug_assert_eq!(self.p, target.p);
        debug_assert!(target.b <= self.b);
        v % target.modulus
    }

    pub fn residue(&self, v: i64) -> Residue {
        Residue {
            value: self.reduce_i64(v),
            ring: *self,
        }
    }
}

/// An element of Z/p^B, carrying its ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residue {
    value: u64,
    ring: ResidueRing,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &Residue) -> Residue {
        debug_assert_eq!(self.ring, other.ring);
        Residue {
            value: self.ring.add(self.value, other.value),
            ring: self.ring,
        }
    }

    pub fn sub(&self, other: &Residue) -> Residue {
        debug_assert_eq!(self.ring, other.ring);
        Residue {
            value: self.ring.sub(self.value, other.value),
            ring: self.ring,
        }
    }

    pub fn mul(&self, other: &Residue) -> Residue {
        debug_assert_eq!(self.ring, other.ring);
        Residue {
            value: self.ring.mul(self.value, other.value),
            ring: self.ring,
        }
    }

    pub fn pow(&self, e: u64) -> Residue {
        Residue {
            value: self.ring.pow(self.value, e),
            ring: self.ring,
        }
    }

    pub fn inv(&self) -> Result<Residue> {
        Ok(Residue {
            value: self.ring.inv(self.value)?,
            ring: self.ring,
        })
    }

    pub fn valuation(&self) -> u32 {
        self.ring.valuation(self.value)
    }
}

/// Teichmuller lift: the unique root of unity in Z/p^B of order dividing
/// p-1 that is congruent to a mod p. Computed by iterating x -> x^p to its
/// fixed point; each step doubles the p-adic accuracy, so B iterations
/// always suffice.
pub fn teichmuller(a: u64, ring: &ResidueRing) -> Result<Residue> {
    let a0 = a % ring.modulus();
    if a0 % ring.p() == 0 {
        return Err(Error::TeichmullerDomain(a));
    }
    let mut x = a0;
    for _ in 0..ring.precision() {
        let next = ring.pow(x, ring.p());
        if next == x {
            break;
        }
        x = next;
    }
    debug_assert_eq!(ring.pow(x, ring.p()), x);
    Ok(ring.residue(x as i64))
}
