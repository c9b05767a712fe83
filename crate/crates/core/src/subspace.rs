//! Canonical subspaces of F_p^n.
//!
//! A subspace is stored as the reduced row-echelon basis of its row space,
//! which makes equality structural: two values are equal exactly when they
//! are the same subspace. All lattice operations (span, sum, intersection)
//! return canonical values.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::fp;
use crate::mat;
use crate::vector::FpVector;

/// A subspace of F_p^n in canonical (reduced row-echelon) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u64,
    ambient_dim: usize,
    basis: Vec<Vec<u64>>,
}

impl Subspace {
    /// The zero subspace of F_p^n.
    pub fn zero(p: u64, ambient_dim: usize) -> Result<Self> {
        fp::validate_prime(p)?;
        Ok(Self {
            p,
            ambient_dim,
            basis: Vec::new(),
        })
    }

    /// The full ambient space F_p^n.
    pub fn full(p: u64, ambient_dim: usize) -> Result<Self> {
        fp::validate_prime(p)?;
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut row = vec![0; ambient_dim];
                row[i] = 1;
                row
            })
            .collect();
        Ok(Self {
            p,
            ambient_dim,
            basis,
        })
    }

    /// The subspace spanned by the given vectors.
    ///
    /// All vectors must share `p` and have length `ambient_dim`; the result
    /// is canonical and idempotent under re-spanning its own basis.
    pub fn span(p: u64, ambient_dim: usize, vectors: &[FpVector]) -> Result<Self> {
        fp::validate_prime(p)?;
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.p() != p {
                return Err(Error::ModulusMismatch {
                    left: p,
                    right: v.p(),
                });
            }
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
            rows.push(v.coords().to_vec());
        }
        mat::rref(&mut rows, p);
        Ok(Self {
            p,
            ambient_dim,
            basis: rows,
        })
    }

    /// Builds a subspace from raw rows already known to span it.
    pub(crate) fn from_rows(p: u64, ambient_dim: usize, mut rows: Vec<Vec<u64>>) -> Self {
        mat::rref(&mut rows, p);
        Self {
            p,
            ambient_dim,
            basis: rows,
        }
    }

    /// Builds a subspace from rows that are already in reduced row-echelon
    /// form. Debug builds verify canonicity.
    pub(crate) fn from_rref_rows(p: u64, ambient_dim: usize, rows: Vec<Vec<u64>>) -> Self {
        let s = Self {
            p,
            ambient_dim,
            basis: rows,
        };
        debug_assert!(s.is_canonical(), "rows not in reduced row-echelon form");
        s
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> Vec<FpVector> {
        self.basis
            .iter()
            .map(|row| FpVector::new(self.p, row.clone()).expect("valid residues"))
            .collect()
    }

    pub(crate) fn basis_rows(&self) -> &[Vec<u64>] {
        &self.basis
    }

    fn is_canonical(&self) -> bool {
        let mut last_pivot = None;
        for row in &self.basis {
            let Some(pivot) = row.iter().position(|&c| c != 0) else {
                return false;
            };
            if row[pivot] != 1 {
                return false;
            }
            if let Some(lp) = last_pivot {
                if pivot <= lp {
                    return false;
                }
            }
            if self.basis.iter().filter(|r| r[pivot] != 0).count() != 1 {
                return false;
            }
            last_pivot = Some(pivot);
        }
        true
    }

    pub fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// The smallest subspace containing both `self` and `other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Self::from_rows(self.p, self.ambient_dim, rows))
    }

    /// The largest subspace contained in both, via the Zassenhaus block trick:
    /// row-reduce [A|A; B|0] and read the intersection off the rows whose left
    /// block became zero.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient_dim;
        let mut block: Vec<Vec<u64>> = Vec::with_capacity(self.dim() + other.dim());
        for row in &self.basis {
            let mut wide = vec![0; 2 * n];
            wide[..n].copy_from_slice(row);
            wide[n..].copy_from_slice(row);
            block.push(wide);
        }
        for row in &other.basis {
            let mut wide = vec![0; 2 * n];
            wide[..n].copy_from_slice(row);
            block.push(wide);
        }
        mat::rref(&mut block, self.p);
        let rows: Vec<Vec<u64>> = block
            .into_iter()
            .filter(|row| row[..n].iter().all(|&c| c == 0))
            .map(|row| row[n..].to_vec())
            .collect();
        Ok(Self::from_rows(self.p, n, rows))
    }

    /// Membership test by reduction against the canonical basis.
    pub fn contains(&self, v: &FpVector) -> Result<bool> {
        if v.p() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: v.p(),
            });
        }
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(self.reduce(v).is_zero())
    }

    /// The canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &FpVector) -> FpVector {
        assert_eq!(v.p(), self.p);
        assert_eq!(v.len(), self.ambient_dim);
        let mut coords = v.coords().to_vec();
        for row in &self.basis {
            let pivot = row.iter().position(|&c| c != 0).expect("nonzero row");
            let factor = coords[pivot];
            if factor != 0 {
                for (c, &r) in coords.iter_mut().zip(row) {
                    *c = fp::sub(*c, fp::mul(factor, r, self.p), self.p);
                }
            }
        }
        FpVector::new(self.p, coords).expect("valid residues")
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for row in &other.basis {
            let v = FpVector::new(self.p, row.clone()).expect("valid residues");
            if !self.reduce(&v).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All vectors of the subspace, in the order induced by iterating
    /// coefficient tuples over the canonical basis.
    pub fn elements(&self) -> Vec<FpVector> {
        let d = self.dim();
        let count = (self.p as u128).pow(d as u32) as usize;
        let mut out = Vec::with_capacity(count);
        let mut coeffs = vec![0u64; d];
        loop {
            let mut v = vec![0u64; self.ambient_dim];
            for (c, row) in coeffs.iter().zip(&self.basis) {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = fp::add(*x, fp::mul(*c, r, self.p), self.p);
                }
            }
            out.push(FpVector::new(self.p, v).expect("valid residues"));
            let mut i = d;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < self.p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    /// Parses a semicolon-separated list of vector literals and spans it.
    /// The keyword `zero` (or an empty string) denotes the zero subspace.
    pub fn parse(text: &str, p: u64, ambient_dim: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "zero" {
            return Self::zero(p, ambient_dim);
        }
        let vectors = text
            .split(';')
            .map(|part| FpVector::parse(part, p, ambient_dim))
            .collect::<Result<Vec<_>>>()?;
        Self::span(p, ambient_dim, &vectors)
    }
}

impl fmt::Display for Subspace {
    /// The literal form: basis rows joined by `;`, or `zero`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "zero");
        }
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    /// Canonical enumeration order: dimension first, then the basis matrix
    /// compared lexicographically. Ambient parameters order first so the
    /// ordering is total across ambients.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.ambient_dim, self.dim())
            .cmp(&(other.p, other.ambient_dim, other.dim()))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}
