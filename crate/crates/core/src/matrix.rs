//! Dense matrices over Z/p^B, stored row-major as raw word values.

use crate::error::{Error, Result};
use crate::residue::ResidueRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicMatrix {
    rows: usize,
    cols: usize,
    ring: ResidueRing,
    entries: Vec<u64>,
}

impl PadicMatrix {
    pub fn zero(rows: usize, cols: usize, ring: ResidueRing) -> Self {
        PadicMatrix {
            rows,
            cols,
            ring,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, ring: ResidueRing) -> Self {
        let mut m = PadicMatrix::zero(n, n, ring);
        for i in 0..n {
            m.entries[i * n + i] = 1 % ring.modulus();
        }
        m
    }

    pub fn scalar(n: usize, value: u64, ring: ResidueRing) -> Self {
        let mut m = PadicMatrix::zero(n, n, ring);
        for i in 0..n {
            m.entries[i * n + i] = value % ring.modulus();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, ring: ResidueRing) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: r.len(),
                });
            }
            entries.extend(r.iter().map(|&v| v % ring.modulus()));
        }
        Ok(PadicMatrix {
            rows: nrows,
            cols: ncols,
            ring,
            entries,
        })
    }

    pub fn from_flat(n: usize, flat: &[u64], ring: ResidueRing) -> Result<Self> {
        if flat.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: flat.len(),
            });
        }
        Ok(PadicMatrix {
            rows: n,
            cols: n,
            ring,
            entries: flat.to_vec(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.ring.modulus();
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Row-major flattening (the vector the algebra-span machinery works on).
    pub fn flatten(&self) -> &[u64] {
        &self.entries
    }

    pub fn add(&self, other: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.ring, other.ring);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.ring.add(a, b))
            .collect();
        PadicMatrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries,
        }
    }

    pub fn sub(&self, other: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.ring, other.ring);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.ring.sub(a, b))
            .collect();
        PadicMatrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries,
        }
    }

    pub fn scale(&self, c: u64) -> PadicMatrix {
        let entries = self.entries.iter().map(|&a| self.ring.mul(a, c)).collect();
        PadicMatrix {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries,
        }
    }

    pub fn mul(&self, other: &PadicMatrix) -> PadicMatrix {
        assert_eq!(self.ring, other.ring);
        assert_eq!(self.cols, other.rows);
        let m = self.ring.modulus() as u128;
        let mut entries = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let a = a as u128;
                let out = &mut entries[i * other.cols..(i + 1) * other.cols];
                let orow = other.row(k);
                for (o, &b) in out.iter_mut().zip(orow) {
                    *o = ((*o as u128 + a * b as u128) % m) as u64;
                }
            }
        }
        PadicMatrix {
            rows: self.rows,
            cols: other.cols,
            ring: self.ring,
            entries,
        }
    }

    pub fn transpose(&self) -> PadicMatrix {
        let mut entries = vec![0u64; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                entries[j * self.rows + i] = self.entries[i * self.cols + j];
            }
        }
        PadicMatrix {
            rows: self.cols,
            cols: self.rows,
            ring: self.ring,
            entries,
        }
    }

    pub fn trace(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let mut t = 0u64;
        for i in 0..self.rows {
            t = self.ring.add(t, self.entries[i * self.cols + i]);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Entrywise truncation into a lower-precision ring over the same prime.
    pub fn truncate(&self, target: ResidueRing) -> PadicMatrix {
        let entries = self
            .entries
            .iter()
            .map(|&v| self.ring.truncate(v, &target))
            .collect();
        PadicMatrix {
            rows: self.rows,
            cols: self.cols,
            ring: target,
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_identity() {
        let r = ResidueRing::new(5, 2).unwrap();
        let a = PadicMatrix::from_rows(vec![vec![1, 2], vec![3, 4]], r).unwrap();
        let id = PadicMatrix::identity(2, r);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
        let b = PadicMatrix::from_rows(vec![vec![0, 1], vec![1, 0]], r).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab, PadicMatrix::from_rows(vec![vec![2, 1], vec![4, 3]], r).unwrap());
    }

    #[test]
    fn transpose_antihomomorphism() {
        let r = ResidueRing::new(7, 2).unwrap();
        let a = PadicMatrix::from_rows(vec![vec![1, 2], vec![3, 4]], r).unwrap();
        let b = PadicMatrix::from_rows(vec![vec![5, 6], vec![0, 48]], r).unwrap();
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
    }
}
