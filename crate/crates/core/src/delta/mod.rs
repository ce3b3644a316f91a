//! Eigenspace calculus for finite modules over (Z/p^m)[Delta], Delta a
//! finite abelian group of order prime to p.
//!
//! A module is a direct sum of cyclic p-power factors with commuting
//! action matrices for the group generators. Characters whose values lie
//! in Z/p^m (order dividing p-1) give honest idempotents there; for the
//! rest, characters fall into Frobenius conjugacy classes and the class
//! idempotents still have Z/p^m coefficients, computed by summing root-of-
//! unity powers inside a Galois-ring extension (Z/p^m)[x]/(g).

use crate::character::{gcd, root_of_unity};
use crate::error::{Error, Result};
use crate::howell::HowellBasis;
use crate::residue::ResidueRing;

/// A finite abelian group given by cyclic factor orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaGroup {
    orders: Vec<u64>,
}

impl DeltaGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::Unsupported("cyclic factor of order 0".into()));
        }
        Ok(DeltaGroup { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |l, &n| l / gcd(l, n) * n)
    }

    /// All group elements as exponent vectors, in mixed-radix order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &n in &self.orders {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for e in &out {
                for t in 0..n {
                    let mut e2 = e.clone();
                    e2.push(t);
                    next.push(e2);
                }
            }
            out = next;
        }
        out
    }

    pub fn invert(&self, el: &[u64]) -> Vec<u64> {
        el.iter()
            .zip(&self.orders)
            .map(|(&t, &n)| (n - t % n) % n)
            .collect()
    }

    /// All characters (as exponent vectors on the generators).
    pub fn characters(&self) -> Vec<DeltaCharacter> {
        self.elements()
            .into_iter()
            .map(|exps| DeltaCharacter {
                group: self.clone(),
                exponents: exps,
            })
            .collect()
    }

    pub fn character(&self, exponents: Vec<u64>) -> DeltaCharacter {
        assert_eq!(exponents.len(), self.orders.len());
        DeltaCharacter {
            group: self.clone(),
            exponents: exponents
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| c % n)
                .collect(),
        }
    }
}

/// A character of DeltaGroup: value on generator i is zeta_{n_i}^{c_i}.
/// Values are encoded as exponents of a fixed primitive L-th root of
/// unity, L the group exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaCharacter {
    group: DeltaGroup,
    exponents: Vec<u64>,
}

impl DeltaCharacter {
    pub fn group(&self) -> &DeltaGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    /// Exponent e with psi(delta) = zeta_L^e, L the group exponent.
    pub fn eval_exponent(&self, delta: &[u64]) -> u64 {
        let l = self.group.exponent();
        let mut e = 0u64;
        for ((&c, &t), &n) in self.exponents.iter().zip(delta).zip(&self.group.orders) {
            e = (e + (l / n) * (c % n) * (t % n)) % l;
        }
        e
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&c, &n)| n / gcd(c, n))
            .fold(1, |l, o| l / gcd(l, o) * o)
    }

    pub fn inverse(&self) -> DeltaCharacter {
        DeltaCharacter {
            group: self.group.clone(),
            exponents: self.group.invert(&self.exponents),
        }
    }

    pub fn mul(&self, other: &DeltaCharacter) -> DeltaCharacter {
        DeltaCharacter {
            group: self.group.clone(),
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .zip(&self.group.orders)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        }
    }

    /// Frobenius orbit [psi] = {psi^(p^i)}, sorted by exponent vector.
    pub fn frobenius_orbit(&self, p: u64) -> Vec<DeltaCharacter> {
        let mut orbit = vec![self.clone()];
        let mut cur = self.clone();
        loop {
            let next = DeltaCharacter {
                group: self.group.clone(),
                exponents: cur
                    .exponents
                    .iter()
                    .zip(&self.group.orders)
                    .map(|(&c, &n)| c * (p % n) % n)
                    .collect(),
            };
            if next == orbit[0] {
                break;
            }
            orbit.push(next.clone());
            cur = next;
        }
        orbit.sort_by(|a, b| a.exponents.cmp(&b.exponents));
        orbit
    }

    /// Values realizable in Z/p^m, i.e. order divides p-1.
    pub fn is_split(&self, p: u64) -> bool {
        (p - 1) % self.order() == 0
    }

    /// psi(delta) as a ring value (split case only).
    pub fn eval(&self, delta: &[u64], ring: &ResidueRing) -> Result<u64> {
        let t = self.order();
        let zeta = root_of_unity(t, ring)?;
        let l = self.group.exponent();
        let e = self.eval_exponent(delta);
        debug_assert_eq!(e % (l / t), 0);
        Ok(ring.pow(zeta, e / (l / t)))
    }
}

/// Conjugacy classes of characters under Frobenius, each given by its
/// sorted orbit. Returned sorted by class representative.
pub fn character_classes(group: &DeltaGroup, p: u64) -> Vec<Vec<DeltaCharacter>> {
    let mut seen: Vec<Vec<u64>> = Vec::new();
    let mut classes = Vec::new();
    for psi in group.characters() {
        if seen.contains(&psi.exponents) {
            continue;
        }
        let orbit = psi.frobenius_orbit(p);
        for c in &orbit {
            seen.push(c.exponents.clone());
        }
        classes.push(orbit);
    }
    classes.sort_by(|a, b| a[0].exponents.cmp(&b[0].exponents));
    classes
}

/// An element of the group algebra (Z/p^m)[Delta]: one coefficient per
/// group element in mixed-radix enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub group: DeltaGroup,
    pub ring: ResidueRing,
    pub coeffs: Vec<u64>,
}

impl GroupAlgebraElement {
    fn element_index(group: &DeltaGroup, el: &[u64]) -> usize {
        let mut idx = 0usize;
        for (&t, &n) in el.iter().zip(&group.orders) {
            idx = idx * n as usize + (t % n) as usize;
        }
        idx
    }

    pub fn one(group: &DeltaGroup, ring: ResidueRing) -> Self {
        let mut coeffs = vec![0; group.order() as usize];
        coeffs[0] = 1;
        GroupAlgebraElement {
            group: group.clone(),
            ring,
            coeffs,
        }
    }

    pub fn mul(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let els = self.group.elements();
        let mut coeffs = vec![0u64; self.coeffs.len()];
        for (i, a) in els.iter().enumerate() {
            if self.coeffs[i] == 0 {
                continue;
            }
            for (j, b) in els.iter().enumerate() {
                if other.coeffs[j] == 0 {
                    continue;
                }
                let prod: Vec<u64> = a
                    .iter()
                    .zip(b)
                    .zip(&self.group.orders)
                    .map(|((&x, &y), &n)| (x + y) % n)
                    .collect();
                let idx = Self::element_index(&self.group, &prod);
                coeffs[idx] = self
                    .ring
                    .add(coeffs[idx], self.ring.mul(self.coeffs[i], other.coeffs[j]));
            }
        }
        GroupAlgebraElement {
            group: self.group.clone(),
            ring: self.ring,
            coeffs,
        }
    }
}

/// e_psi = |Delta|^{-1} sum_delta psi(delta^{-1}) delta, for psi with
/// values realizable in the ring.
pub fn idempotent(
    psi: &DeltaCharacter,
    group: &DeltaGroup,
    ring: &ResidueRing,
) -> Result<GroupAlgebraElement> {
    if group.order() % ring.p() == 0 {
        return Err(Error::GroupOrderNotInvertible(group.order(), ring.modulus()));
    }
    if !psi.is_split(ring.p()) {
        return Err(Error::ValueNotRealizable {
            order: psi.order(),
            p: ring.p(),
            b: ring.precision(),
        });
    }
    let inv_ord = ring.inv(group.order() % ring.modulus())?;
    let els = group.elements();
    let mut coeffs = Vec::with_capacity(els.len());
    for el in &els {
        let v = psi.eval(&group.invert(el), ring)?;
        coeffs.push(ring.mul(inv_ord, v));
    }
    Ok(GroupAlgebraElement {
        group: group.clone(),
        ring: *ring,
        coeffs,
    })
}

/// Class idempotent e_[psi] = sum over the Frobenius orbit of e_psi'.
/// Coefficients are Galois-stable, hence land in Z/p^m; they are computed
/// inside a Galois-ring extension and checked to be scalars.
pub fn class_idempotent(
    psi: &DeltaCharacter,
    group: &DeltaGroup,
    ring: &ResidueRing,
) -> Result<GroupAlgebraElement> {
    if group.order() % ring.p() == 0 {
        return Err(Error::GroupOrderNotInvertible(group.order(), ring.modulus()));
    }
    if psi.is_split(ring.p()) {
        return idempotent(psi, group, ring);
    }
    let t = psi.order();
    let ext = GaloisRing::with_root_order(ring, t)?;
    let orbit = psi.frobenius_orbit(ring.p());
    let l = group.exponent();
    let inv_ord = ring.inv(group.order() % ring.modulus())?;
    let els = group.elements();
    let mut coeffs = Vec::with_capacity(els.len());
    for el in &els {
        let inv = group.invert(el);
        let mut sum = ext.zero();
        for chi in &orbit {
            let e = chi.eval_exponent(&inv);
            debug_assert_eq!(e % (l / chi.order()), 0);
            // all orbit members share psi's order
            let zpow = ext.pow_root(e / (l / t));
            sum = ext.add(&sum, &zpow);
        }
        let scalar = ext
            .as_scalar(&sum)
            .ok_or_else(|| Error::ValidationFailed {
                stage: "class_idempotent".into(),
                detail: "orbit trace is not a scalar".into(),
            })?;
        coeffs.push(ring.mul(inv_ord, scalar));
    }
    Ok(GroupAlgebraElement {
        group: group.clone(),
        ring: *ring,
        coeffs,
    })
}

/// The Galois ring (Z/p^m)[x]/(g), g monic with irreducible reduction
/// mod p, carrying a fixed root of unity of prescribed order.
struct GaloisRing {
    ring: ResidueRing,
    /// monic modulus of degree f, coefficients of x^0..x^{f-1} (leading 1
    /// implicit)
    modulus: Vec<u64>,
    degree: usize,
    /// the chosen root of unity
    root: Vec<u64>,
    root_order: u64,
}

impl GaloisRing {
    fn with_root_order(ring: &ResidueRing, t: u64) -> Result<GaloisRing> {
        let p = ring.p();
        if t % p == 0 {
            return Err(Error::ValueNotRealizable {
                order: t,
                p,
                b: ring.precision(),
            });
        }
        // f = multiplicative order of p mod t
        let mut f = 1u64;
        let mut acc = p % t;
        while acc != 1 {
            acc = acc * (p % t) % t;
            f += 1;
        }
        let g = irreducible_poly(p, f as usize);
        let mut ext = GaloisRing {
            ring: *ring,
            modulus: g,
            degree: f as usize,
            root: vec![],
            root_order: t,
        };
        // |R*| = p^{(m-1)f} (p^f - 1); a random unit to the power |R*|/t
        // has order dividing t, and exact order t with decent probability
        let pf: u128 = (p as u128).pow(f as u32);
        let unit_order: u128 =
            (p as u128).pow(((ring.precision() - 1) as u64 * f) as u32) * (pf - 1);
        let exp = unit_order / t as u128;
        let prime_divs = prime_divisors(t);
        let mut seed = 1u64;
        loop {
            seed += 1;
            let mut cand = vec![0u64; ext.degree];
            // deterministic sweep over small elements x + seed
            cand[0] = seed % ring.modulus();
            if ext.degree > 1 {
                cand[1] = 1;
            }
            let z = ext.pow(&cand, exp);
            if ext.is_zero(&z) || ext.as_scalar(&z) == Some(0) {
                continue;
            }
            if !ext.is_one(&ext.pow(&z, t as u128)) {
                continue;
            }
            let exact = prime_divs
                .iter()
                .all(|&q| !ext.is_one(&ext.pow(&z, (t / q) as u128)));
            if exact {
                ext.root = z;
                return Ok(ext);
            }
            if seed > 10_000 {
                return Err(Error::ValidationFailed {
                    stage: "galois_ring".into(),
                    detail: format!("no root of unity of order {t} found"),
                });
            }
        }
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree]
    }

    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn is_one(&self, a: &[u64]) -> bool {
        a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }

    fn as_scalar(&self, a: &[u64]) -> Option<u64> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.ring.add(x, y))
            .collect()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.degree;
        let mut prod = vec![0u64; 2 * f - 1];
        for i in 0..f {
            if a[i] == 0 {
                continue;
            }
            for j in 0..f {
                prod[i + j] = self.ring.add(prod[i + j], self.ring.mul(a[i], b[j]));
            }
        }
        // reduce by the monic modulus
        for d in (f..2 * f - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &m) in self.modulus.iter().enumerate() {
                let idx = d - f + k;
                prod[idx] = self.ring.sub(prod[idx], self.ring.mul(c, m));
            }
        }
        prod.truncate(f);
        prod
    }

    fn pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn pow_root(&self, e: u64) -> Vec<u64> {
        self.pow(&self.root, (e % self.root_order) as u128)
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A monic polynomial of the given degree over F_p with irreducible
/// reduction, found by deterministic sweep, returned as coefficients of
/// x^0..x^{degree-1} (leading 1 implicit).
fn irreducible_poly(p: u64, degree: usize) -> Vec<u64> {
    if degree == 1 {
        return vec![0]; // x itself; never used for roots of unity of order > 1
    }
    let mut counter = 0u64;
    loop {
        // enumerate candidate constant/linear parts
        let mut g = vec![0u64; degree];
        let mut c = counter;
        for gi in g.iter_mut() {
            *gi = c % p;
            c /= p;
        }
        counter += 1;
        if is_irreducible_mod_p(&g, p) {
            return g;
        }
        assert!(
            counter < (p as u64).saturating_pow(degree as u32 + 1),
            "no irreducible polynomial found"
        );
    }
}

/// Irreducibility of x^degree + g(x) over F_p:
/// x^(p^degree) == x mod g and gcd-free at proper prime-power steps.
fn is_irreducible_mod_p(g: &[u64], p: u64) -> bool {
    let f = g.len();
    let mulmod = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut prod = vec![0u64; 2 * f - 1];
        for i in 0..f {
            if a[i] == 0 {
                continue;
            }
            for j in 0..f {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        for d in (f..2 * f - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &m) in g.iter().enumerate() {
                let idx = d - f + k;
                prod[idx] = (prod[idx] + p * p - c * m % p) % p;
            }
        }
        prod.truncate(f);
        prod
    };
    let xpow = |e: u128| -> Vec<u64> {
        let mut acc = vec![0u64; f];
        acc[0] = 1;
        let mut base = vec![0u64; f];
        if f == 1 {
            base[0] = (p - g[0]) % p;
        } else {
            base[1] = 1;
        }
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base);
            }
            base = mulmod(&base, &base);
            e >>= 1;
        }
        acc
    };
    // x^(p^f) must equal x
    let xq = xpow((p as u128).pow(f as u32));
    let mut x = vec![0u64; f];
    x[1 % f] = if f == 1 { 0 } else { 1 };
    if f > 1 && xq != x {
        return false;
    }
    // for each prime divisor q of f, x^(p^(f/q)) must differ from x
    for q in prime_divisors(f as u64) {
        let e = (p as u128).pow((f as u64 / q) as u32);
        if xpow(e) == x {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_order_two_over_z25() {
        let ring = ResidueRing::new(5, 2).unwrap();
        let g = DeltaGroup::new(vec![2]).unwrap();
        let triv = g.character(vec![0]);
        let e = idempotent(&triv, &g, &ring).unwrap();
        assert_eq!(e.coeffs, vec![13, 13]); // 13 = 2^{-1} mod 25
        let e2 = e.mul(&e);
        assert_eq!(e2, e);
    }

    #[test]
    fn idempotents_complete_and_orthogonal() {
        for (p, m, orders) in [
            (5u64, 2u32, vec![2u64]),
            (5, 2, vec![4]),
            (7, 2, vec![2, 3]),
            (13, 1, vec![12]),
            (13, 2, vec![2, 2]),
        ] {
            let ring = ResidueRing::new(p, m).unwrap();
            let g = DeltaGroup::new(orders).unwrap();
            let chars = g.characters();
            let idems: Vec<_> = chars
                .iter()
                .map(|psi| idempotent(psi, &g, &ring).unwrap())
                .collect();
            let mut total = vec![0u64; g.order() as usize];
            for e in &idems {
                assert_eq!(e.mul(e), *e, "e^2 = e");
                for v in total.iter_mut().zip(&e.coeffs) {
                    *v.0 = ring.add(*v.0, *v.1);
                }
            }
            let one = GroupAlgebraElement::one(&g, ring);
            assert_eq!(total, one.coeffs, "sum of idempotents is 1");
            for i in 0..idems.len() {
                for j in 0..idems.len() {
                    if i != j {
                        let prod = idems[i].mul(&idems[j]);
                        assert!(prod.coeffs.iter().all(|&c| c == 0), "orthogonality");
                    }
                }
            }
        }
    }

    #[test]
    fn class_idempotents_complete() {
        // nonsplit: Delta = Z/5 over p = 7 (ord_5(7) = 4), Z/12 over p = 5
        for (p, m, orders) in [(7u64, 2u32, vec![5u64]), (5, 2, vec![12]), (7, 1, vec![4, 3])] {
            let ring = ResidueRing::new(p, m).unwrap();
            let g = DeltaGroup::new(orders).unwrap();
            let classes = character_classes(&g, p);
            let idems: Vec<_> = classes
                .iter()
                .map(|cl| class_idempotent(&cl[0], &g, &ring).unwrap())
                .collect();
            let mut total = vec![0u64; g.order() as usize];
            for e in &idems {
                assert_eq!(e.mul(e), *e);
                for v in total.iter_mut().zip(&e.coeffs) {
                    *v.0 = ring.add(*v.0, *v.1);
                }
            }
            assert_eq!(total, GroupAlgebraElement::one(&g, ring).coeffs);
            for i in 0..idems.len() {
                for j in 0..idems.len() {
                    if i != j {
                        assert!(idems[i].mul(&idems[j]).coeffs.iter().all(|&c| c == 0));
                    }
                }
            }
        }
    }

    #[test]
    fn galois_ring_root_orders() {
        let ring = ResidueRing::new(7, 2).unwrap();
        let ext = GaloisRing::with_root_order(&ring, 5).unwrap();
        assert!(ext.is_one(&ext.pow_root(5)));
        for e in 1..5 {
            assert!(!ext.is_one(&ext.pow_root(e)));
        }
        // sum over all nontrivial 5th roots is -1
        let mut s = ext.pow_root(1);
        for e in 2..5 {
            s = ext.add(&s, &ext.pow_root(e));
        }
        assert_eq!(ext.as_scalar(&s), Some(ring.reduce_i64(-1)));
    }
}
