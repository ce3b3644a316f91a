//! Dirichlet characters with values realized in Z/p^B via Teichmuller lifts.
//!
//! The verification pipeline only meets characters of modulus 1 or p (the
//! level-p nebentypus omega^(k-2) and the Teichmuller character itself), so
//! a character is stored as a power of omega: chi(a) = teich(a)^j. Values
//! are honest roots of unity in the coefficient ring, which keeps every
//! character sum exact.

use crate::error::{Error, Result};
use crate::residue::{teichmuller, ResidueRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    /// Exponent j with chi = omega^j (reduced mod p-1); unused when the
    /// modulus is 1.
    exponent: u64,
    ring: ResidueRing,
}

impl DirichletCharacter {
    /// The trivial character of modulus 1 (constant 1).
    pub fn trivial(ring: ResidueRing) -> Self {
        DirichletCharacter {
            modulus: 1,
            exponent: 0,
            ring,
        }
    }

    /// The Teichmuller character omega of (Z/p)^*, p the ring prime.
    pub fn teichmuller_character(ring: ResidueRing) -> Self {
        DirichletCharacter {
            modulus: ring.p(),
            exponent: 1,
            ring,
        }
    }

    /// omega^j of modulus p.
    pub fn omega_power(j: i64, ring: ResidueRing) -> Self {
        let n = (ring.p() - 1) as i64;
        let exponent = (((j % n) + n) % n) as u64;
        DirichletCharacter {
            modulus: ring.p(),
            exponent,
            ring,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus == 1 || self.exponent == 0
    }

    /// Order of the character as a group element.
    pub fn order(&self) -> u64 {
        if self.is_trivial() {
            1
        } else {
            let n = self.ring.p() - 1;
            n / gcd(self.exponent, n)
        }
    }

    /// chi(-1) = +1?
    pub fn is_even(&self) -> bool {
        self.is_trivial() || self.exponent % 2 == 0
    }

    /// Pointwise power chi^e.
    pub fn pow(&self, e: i64) -> Self {
        if self.modulus == 1 {
            return self.clone();
        }
        let n = (self.ring.p() - 1) as i64;
        let j = self.exponent as i64 * (((e % n) + n) % n);
        DirichletCharacter::omega_power(j, self.ring)
    }

    /// Same character realized at a different precision over the same prime.
    pub fn with_ring(&self, ring: ResidueRing) -> Self {
        DirichletCharacter {
            modulus: self.modulus,
            exponent: self.exponent,
            ring,
        }
    }

    /// chi(a) as a raw ring value; 0 when gcd(a, modulus) > 1.
    pub fn eval(&self, a: u64) -> u64 {
        if self.modulus == 1 {
            return 1 % self.ring.modulus();
        }
        let p = self.ring.p();
        if a % p == 0 {
            return 0;
        }
        if self.exponent == 0 {
            return 1 % self.ring.modulus();
        }
        let w = teichmuller(a, &self.ring)
            .expect("a is coprime to p")
            .value();
        self.ring.pow(w, self.exponent)
    }

    pub fn eval_i64(&self, a: i64) -> u64 {
        if self.modulus == 1 {
            return 1 % self.ring.modulus();
        }
        let p = self.ring.p() as i64;
        self.eval((((a % p) + p) % p) as u64)
    }
}

/// omega itself, checking that the ring is a p-power ring (it always is).
pub fn teichmuller_character(ring: ResidueRing) -> DirichletCharacter {
    DirichletCharacter::teichmuller_character(ring)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A root of unity of exact order `order` in the ring, via the Teichmuller
/// lift of a primitive root; order must divide p-1.
pub fn root_of_unity(order: u64, ring: &ResidueRing) -> Result<u64> {
    let p = ring.p();
    if order == 0 || (p - 1) % order != 0 {
        return Err(Error::ValueNotRealizable {
            order,
            p,
            b: ring.precision(),
        });
    }
    let g = primitive_root(p);
    let w = teichmuller(g, ring)?.value();
    Ok(ring.pow(w, (p - 1) / order))
}

/// Smallest primitive root modulo an odd prime p.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    let pow = |mut b: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc as u128 * b as u128 % p as u128) as u64;
            }
            b = (b as u128 * b as u128 % p as u128) as u64;
            e >>= 1;
        }
        acc
    };
    'outer: for g in 2..p {
        for &q in &factors {
            if pow(g, (p - 1) / q) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root found for prime {p}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_character_values() {
        let r = ResidueRing::new(5, 2).unwrap();
        let w = DirichletCharacter::teichmuller_character(r);
        assert_eq!(w.eval(2), 7);
        assert_eq!(w.eval(1), 1);
        assert_eq!(w.eval(4), 24); // omega(p-1) = -1
        assert_eq!(w.eval(5), 0);
        assert_eq!(w.order(), 4);
        assert!(!w.is_even());
    }

    #[test]
    fn char_pow_identities() {
        let r = ResidueRing::new(37, 2).unwrap();
        let w = DirichletCharacter::teichmuller_character(r);
        assert!(w.pow(0).is_trivial());
        assert!(w.pow(36).is_trivial());
        let k = 32i64;
        let prod_exp =
            (w.pow(k).exponent() + w.pow(-k).exponent()) % 36;
        assert_eq!(prod_exp, 0);
        for a in 1..37 {
            let lhs = r.mul(w.pow(k).eval(a), w.pow(-k).eval(a));
            assert_eq!(lhs, 1);
        }
    }

    #[test]
    fn multiplicativity_and_order_exactness() {
        for p in [5u64, 13, 37] {
            let r = ResidueRing::new(p, 2).unwrap();
            for j in 0..(p - 1).min(12) {
                let chi = DirichletCharacter::omega_power(j as i64, r);
                for a in 1..p {
                    for b in 1..p {
                        assert_eq!(
                            chi.eval(a * b % p),
                            r.mul(chi.eval(a), chi.eval(b))
                        );
                    }
                }
                let t = chi.order();
                if !chi.is_trivial() {
                    let g = primitive_root(p);
                    let v = chi.eval(g);
                    assert_eq!(r.pow(v, t), 1);
                    for s in 1..t {
                        assert_ne!(r.pow(v, s), 1, "order not exact");
                    }
                }
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let r = ResidueRing::new(13, 2).unwrap();
        for t in [1u64, 2, 3, 4, 6, 12] {
            let z = root_of_unity(t, &r).unwrap();
            assert_eq!(r.pow(z, t), 1);
            for s in 1..t {
                assert_ne!(r.pow(z, s), 1);
            }
        }
        assert!(root_of_unity(5, &r).is_err());
    }
}
