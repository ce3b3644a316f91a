//! Howell normal form for submodules of (Z/p^B)^n.
//!
//! Z/p^B has zero divisors, so ordinary echelon form does not decide span
//! membership. The Howell form fixes this: whenever a basis row has pivot
//! p^e with e > 0, the span also contains p^(B-e) times that row, whose
//! leading entries vanish; those "shadow" rows are folded back in so that
//! every span element can be reduced to zero by successive pivot
//! elimination. Over the chain ring Z/p^B the resulting canonical form is
//! unique: pivot columns strictly increase, each pivot entry is exactly a
//! power of p, and entries above a pivot are reduced modulo that power.

use crate::residue::ResidueRing;

#[derive(Debug, Clone)]
pub struct HowellBasis {
    ring: ResidueRing,
    n: usize,
    /// Rows in echelon order; row i has its first nonzero entry (= p^{e_i},
    /// exactly) in column pivots[i].0.
    rows: Vec<Vec<u64>>,
    /// (pivot column, pivot valuation e) per row.
    pivots: Vec<(usize, u32)>,
}

impl HowellBasis {
    pub fn empty(n: usize, ring: ResidueRing) -> Self {
        HowellBasis {
            ring,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Howell basis of the span of the given vectors.
    pub fn from_rows<I>(rows: I, n: usize, ring: ResidueRing) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let mut basis = HowellBasis::empty(n, ring);
        for r in rows {
            basis.insert(r);
        }
        basis.canonicalize();
        basis
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    fn first_nonzero(v: &[u64]) -> Option<usize> {
        v.iter().position(|&x| x != 0)
    }

    /// Scale v so its leading entry becomes exactly p^e; returns the pivot
    /// (column, valuation). v must be nonzero.
    fn normalize(&self, v: &mut [u64]) -> (usize, u32) {
        let c = Self::first_nonzero(v).expect("normalize on zero vector");
        let e = self.ring.valuation(v[c]);
        let unit = v[c] / self.ring.pow_p(e);
        let uinv = self.ring.inv(unit).expect("leading unit is invertible");
        if uinv != 1 {
            for x in v.iter_mut() {
                *x = self.ring.mul(*x, uinv);
            }
        }
        (c, e)
    }

    fn sub_scaled(&self, v: &mut [u64], row: &[u64], q: u64) {
        if q == 0 {
            return;
        }
        for (x, &r) in v.iter_mut().zip(row) {
            *x = self.ring.sub(*x, self.ring.mul(q, r));
        }
    }

    /// Insert one vector, growing the span. Canonical reduction of entries
    /// above pivots is deferred to canonicalize().
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.n, "ambient dimension mismatch");
        let mut grew = false;
        let mut work = vec![v];
        while let Some(mut v) = work.pop() {
            let mut idx = 0;
            loop {
                let Some(c) = Self::first_nonzero(&v) else {
                    break;
                };
                // skip basis rows entirely to the left of v's leading column
                while idx < self.rows.len() && self.pivots[idx].0 < c {
                    idx += 1;
                }
                if idx < self.rows.len() && self.pivots[idx].0 == c {
                    let e = self.pivots[idx].1;
                    let f = self.ring.valuation(v[c]);
                    if f >= e {
                        let q = v[c] / self.ring.pow_p(e);
                        let row = std::mem::take(&mut self.rows[idx]);
                        self.sub_scaled(&mut v, &row, q);
                        self.rows[idx] = row;
                        debug_assert_eq!(v[c], 0);
                    } else {
                        // v has the smaller valuation: it becomes the basis
                        // row and the old row is re-inserted.
                        let (_, f) = self.normalize(&mut v);
                        std::mem::swap(&mut self.rows[idx], &mut v);
                        self.pivots[idx] = (c, f);
                        grew = true;
                        if f > 0 {
                            let shadow = self.scale_by_p_power(&self.rows[idx], self.ring.precision() - f);
                            work.push(shadow);
                        }
                        // continue reducing the displaced row
                        let q = v[c] / self.ring.pow_p(f);
                        let row = std::mem::take(&mut self.rows[idx]);
                        self.sub_scaled(&mut v, &row, q);
                        self.rows[idx] = row;
                        debug_assert_eq!(v[c], 0);
                    }
                } else {
                    // new pivot column
                    let (c, e) = self.normalize(&mut v);
                    if e > 0 {
                        let shadow = self.scale_by_p_power(&v, self.ring.precision() - e);
                        work.push(shadow);
                    }
                    self.rows.insert(idx, v);
                    self.pivots.insert(idx, (c, e));
                    grew = true;
                    break;
                }
            }
        }
        grew
    }

    fn scale_by_p_power(&self, v: &[u64], e: u32) -> Vec<u64> {
        let q = if e >= self.ring.precision() {
            0
        } else {
            self.ring.pow_p(e)
        };
        v.iter().map(|&x| self.ring.mul(x, q)).collect()
    }

    /// Reduce entries above each pivot into [0, p^e); after this the basis
    /// is the unique canonical form of its span.
    pub fn canonicalize(&mut self) {
        for i in 0..self.rows.len() {
            for j in (i + 1)..self.rows.len() {
                let (c, e) = self.pivots[j];
                let q = self.rows[i][c] / self.ring.pow_p(e);
                if q != 0 {
                    let row = std::mem::take(&mut self.rows[j]);
                    let mut vi = std::mem::take(&mut self.rows[i]);
                    self.sub_scaled(&mut vi, &row, q);
                    self.rows[i] = vi;
                    self.rows[j] = row;
                }
            }
        }
    }

    /// True iff v lies in the span.
    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.n, "ambient dimension mismatch");
        let mut v = v.to_vec();
        for (i, &(c, e)) in self.pivots.iter().enumerate() {
            if v[c] != 0 {
                if self.ring.valuation(v[c]) < e {
                    return false;
                }
                let q = v[c] / self.ring.pow_p(e);
                let row = &self.rows[i];
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = self.ring.sub(*x, self.ring.mul(q, r));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// Coefficients expressing v over the basis rows, if v is in the span.
    pub fn solve(&self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        let mut coeffs = vec![0u64; self.rows.len()];
        for (i, &(c, e)) in self.pivots.iter().enumerate() {
            if v[c] != 0 {
                if self.ring.valuation(v[c]) < e {
                    return None;
                }
                let q = v[c] / self.ring.pow_p(e);
                coeffs[i] = q;
                let row = &self.rows[i];
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = self.ring.sub(*x, self.ring.mul(q, r));
                }
            }
        }
        if v.iter().all(|&x| x == 0) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// |span| as an exponent of p: sum over rows of (B - e_i).
    pub fn span_order_exponent(&self) -> u32 {
        let b = self.ring.precision();
        self.pivots.iter().map(|&(_, e)| b - e).sum()
    }

    /// Without scaling: the minimal number of generators,
    /// dim_{F_p} span/(p*span) = number of basis rows.
    /// With scaling: dim_{F_p} of the image of p*span inside
    /// p*(Z/p^B)^n = (Z/p^{B-1})^n reduced mod p, i.e. the F_p-rank of the
    /// basis rows reduced mod p.
    pub fn p_rank(&self, scale_by_p: bool) -> usize {
        if !scale_by_p {
            return self.rows.len();
        }
        let p = self.ring.p();
        let mut reduced: Vec<Vec<u64>> = Vec::new();
        'rows: for row in &self.rows {
            let mut v: Vec<u64> = row.iter().map(|&x| x % p).collect();
            for r in &reduced {
                let c = r.iter().position(|&x| x != 0).unwrap();
                if v[c] != 0 {
                    let q = (v[c] * mod_inv_prime(r[c], p)) % p;
                    for (x, &y) in v.iter_mut().zip(r) {
                        *x = (*x + p - q * y % p) % p;
                    }
                }
            }
            if let Some(c) = v.iter().position(|&x| x != 0) {
                // keep rows sorted by leading column for the elimination above
                let at = reduced
                    .iter()
                    .position(|r| r.iter().position(|&x| x != 0).unwrap() > c)
                    .unwrap_or(reduced.len());
                reduced.insert(at, v);
                continue 'rows;
            }
        }
        reduced.len()
    }

    /// Two bases span the same module iff their canonical forms agree.
    pub fn span_eq(&self, other: &HowellBasis) -> bool {
        self.ring == other.ring
            && self.n == other.n
            && self.pivots == other.pivots
            && self.rows == other.rows
    }

    /// A copy extended by the given vectors (re-canonicalized).
    pub fn extended<I>(&self, extra: I) -> HowellBasis
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let mut b = self.clone();
        for v in extra {
            b.insert(v);
        }
        b.canonicalize();
        b
    }
}

fn mod_inv_prime(v: u64, p: u64) -> u64 {
    // Fermat; p prime, v not divisible by p.
    let mut acc = 1u64;
    let mut base = v % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Kernel of the row-vector action v -> v * mat, where mat is given as
/// `dim` rows of length `cols`. Returns a Howell basis of the kernel in
/// (Z/p^B)^dim.
///
/// Works by Howell-reducing the block matrix [mat | I]: rows whose mat-part
/// is zero have tails spanning exactly {v : v*mat = 0}, which the Howell
/// property guarantees to be complete.
pub fn kernel(mat_rows: &[Vec<u64>], cols: usize, ring: ResidueRing) -> HowellBasis {
    let dim = mat_rows.len();
    let aug = mat_rows.iter().enumerate().map(|(i, r)| {
        assert_eq!(r.len(), cols);
        let mut v = Vec::with_capacity(cols + dim);
        v.extend_from_slice(r);
        v.extend(std::iter::repeat(0).take(dim));
        v[cols + i] = 1;
        v
    });
    let big = HowellBasis::from_rows(aug, cols + dim, ring);
    let mut ker = HowellBasis::empty(dim, ring);
    for (i, &(c, _)) in big.pivots.iter().enumerate() {
        if c >= cols {
            ker.insert(big.rows[i][cols..].to_vec());
        }
    }
    ker.canonicalize();
    ker
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Brute-force span enumeration: closure of {0} under adding generators.
    fn enumerate_span(rows: &[Vec<u64>], n: usize, ring: &ResidueRing) -> HashSet<Vec<u64>> {
        let mut span: HashSet<Vec<u64>> = HashSet::new();
        span.insert(vec![0; n]);
        for g in rows {
            let snapshot: Vec<Vec<u64>> = span.iter().cloned().collect();
            for base in snapshot {
                let mut cur = base;
                loop {
                    let next: Vec<u64> = cur
                        .iter()
                        .zip(g)
                        .map(|(&a, &b)| ring.add(a, b))
                        .collect();
                    if !span.insert(next.clone()) {
                        break;
                    }
                    cur = next;
                }
            }
        }
        span
    }

    #[test]
    fn empty_basis() {
        let r = ResidueRing::new(5, 2).unwrap();
        let b = HowellBasis::from_rows(Vec::<Vec<u64>>::new(), 2, r);
        assert_eq!(b.num_rows(), 0);
        assert_eq!(b.span_order_exponent(), 0);
        assert!(b.contains(&[0, 0]));
        assert!(!b.contains(&[1, 0]));
        assert_eq!(b.p_rank(false), 0);
        assert_eq!(b.p_rank(true), 0);
    }

    #[test]
    fn torsion_rows_over_z25() {
        let r = ResidueRing::new(5, 2).unwrap();
        // independent torsion rows (p,0),(0,p): span of order p^2
        let b = HowellBasis::from_rows(vec![vec![5, 0], vec![0, 5]], 2, r);
        assert_eq!(b.num_rows(), 2);
        assert_eq!(b.span_order_exponent(), 2);
        assert_eq!(enumerate_span(&[vec![5, 0], vec![0, 5]], 2, &r).len(), 25);
    }

    #[test]
    fn dependent_rows_over_z25() {
        let r = ResidueRing::new(5, 2).unwrap();
        let rows = vec![vec![1, 2], vec![2, 4]];
        let b = HowellBasis::from_rows(rows.clone(), 2, r);
        let span = enumerate_span(&rows, 2, &r);
        assert_eq!(span.len(), 25); // all multiples of (1,2)
        assert_eq!(b.span_order_exponent(), 2);
        for v in &span {
            assert!(b.contains(v));
        }
    }

    #[test]
    fn membership_examples() {
        let r = ResidueRing::new(5, 2).unwrap();
        let b = HowellBasis::from_rows(vec![vec![5, 0]], 2, r);
        assert!(b.contains(&[0, 0]));
        assert!(b.contains(&[5, 0]));
        assert!(b.contains(&[10, 0]));
        assert!(!b.contains(&[1, 0]));
        let span = enumerate_span(&[vec![5, 0]], 2, &r);
        assert!(!span.contains(&vec![1u64, 0]));
    }

    #[test]
    fn span_order_examples() {
        let r = ResidueRing::new(5, 2).unwrap();
        // {(5,0),(0,1)}: order 5 * 25 = p^3
        let b = HowellBasis::from_rows(vec![vec![5, 0], vec![0, 1]], 2, r);
        assert_eq!(b.span_order_exponent(), 3);
        assert_eq!(enumerate_span(&[vec![5, 0], vec![0, 1]], 2, &r).len(), 125);
        // full ambient (Z/p^2)^d has order p^(2d)
        let d = 3;
        let full = HowellBasis::from_rows(
            (0..d).map(|i| {
                let mut v = vec![0u64; d];
                v[i] = 1;
                v
            }),
            d,
            r,
        );
        assert_eq!(full.span_order_exponent(), 2 * d as u32);
        assert_eq!(full.p_rank(true), d);
    }

    #[test]
    fn p_rank_scaled_examples() {
        let r = ResidueRing::new(5, 2).unwrap();
        // p*span of {(5,0)} is {0}
        let b = HowellBasis::from_rows(vec![vec![5, 0]], 2, r);
        assert_eq!(b.p_rank(true), 0);
        // (p,1) generates a cyclic module of order 25 whose mod-p image has rank 1
        let b2 = HowellBasis::from_rows(vec![vec![5, 1]], 2, r);
        assert_eq!(b2.p_rank(true), 1);
        assert_eq!(b2.span_order_exponent(), 2);
    }

    #[test]
    fn howell_is_closure_operator() {
        let r = ResidueRing::new(5, 3).unwrap();
        let rows = vec![vec![5, 30, 1], vec![25, 0, 10], vec![0, 75, 5]];
        let b = HowellBasis::from_rows(rows, 3, r);
        let rebuilt = HowellBasis::from_rows(b.rows().to_vec(), 3, r);
        assert!(b.span_eq(&rebuilt));
    }

    #[test]
    fn membership_agrees_with_enumeration_randomized() {
        // deterministic xorshift so the test is reproducible
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for &(p, b, n) in &[(5u64, 2u32, 2usize), (5, 3, 2), (3, 2, 3), (2, 3, 3), (7, 2, 2)] {
            let ring = ResidueRing::new(p, b).unwrap();
            for _ in 0..40 {
                let nrows = (next() % 3) as usize + 1;
                let rows: Vec<Vec<u64>> = (0..nrows)
                    .map(|_| (0..n).map(|_| next() % ring.modulus()).collect())
                    .collect();
                let basis = HowellBasis::from_rows(rows.clone(), n, ring);
                let span = enumerate_span(&rows, n, &ring);
                assert_eq!(
                    (p as u128).pow(basis.span_order_exponent()),
                    span.len() as u128
                );
                // membership spot checks: all span elements + random outsiders
                for v in span.iter().take(200) {
                    assert!(basis.contains(v));
                }
                for _ in 0..50 {
                    let v: Vec<u64> = (0..n).map(|_| next() % ring.modulus()).collect();
                    assert_eq!(basis.contains(&v), span.contains(&v));
                }
            }
        }
    }

    #[test]
    fn kernel_of_simple_map() {
        let r = ResidueRing::new(5, 2).unwrap();
        // map (x,y) -> x * (1,0) + y * (5,0): kernel = {(x,y): x + 5y = 0}
        let mat = vec![vec![1u64, 0], vec![5, 0]];
        let ker = kernel(&mat, 2, r);
        for row in ker.rows() {
            let s = r.add(row[0], r.mul(5, row[1]));
            assert_eq!(s, 0);
        }
        // kernel = {(-5y, y)} + {(5a, 0)... }: order: solutions x = -5y mod 25:
        // 25 pairs (x,y) with x ≡ -5y: y free (25), x determined up to nothing => wait
        // x + 5y ≡ 0 mod 25 has 25 solutions (y free, x = -5y). As module order 25.
        assert_eq!(ker.span_order_exponent(), 2);
        assert!(ker.contains(&[r.reduce_i64(-5), 1]));
    }

    #[test]
    fn solve_roundtrip() {
        let r = ResidueRing::new(7, 2).unwrap();
        let rows = vec![vec![1, 3, 5], vec![0, 7, 14]];
        let b = HowellBasis::from_rows(rows, 3, r);
        let mut v = vec![0u64; 3];
        // v = 2*row0 + 3*row1 (using the canonical basis rows)
        for (i, row) in b.rows().iter().enumerate() {
            let c = [2u64, 3][i.min(1)];
            for (x, &e) in v.iter_mut().zip(row) {
                *x = r.add(*x, r.mul(c, e));
            }
        }
        let coeffs = b.solve(&v).unwrap();
        let mut w = vec![0u64; 3];
        for (c, row) in coeffs.iter().zip(b.rows()) {
            for (x, &e) in w.iter_mut().zip(row) {
                *x = r.add(*x, r.mul(*c, e));
            }
        }
        assert_eq!(v, w);
        assert!(b.solve(&[1, 0, 0]).is_none() || b.contains(&[1, 0, 0]));
    }
}
