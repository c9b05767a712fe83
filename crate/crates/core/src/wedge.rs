//! The exterior square Λ²M: wedge products, bivectors, and their rank.
//!
//! For M = F_p^n the space Λ²M has the basis {e_i ∧ e_j : i < j}; its
//! coordinates are kept in lexicographic order on the index pairs (i, j).
//! That order is fixed because the structure file format depends on it.

use std::fmt;

use crate::enumerate::{self, Guardrail};
use crate::error::{Error, Result};
use crate::fp;
use crate::mat;
use crate::subspace::Subspace;
use crate::vector::FpVector;

/// The ordered wedge basis of Λ²F_p^n: all pairs (i, j) with i < j in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeBasis {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl WedgeBasis {
    pub fn new(n: usize) -> Self {
        let mut pairs = Vec::with_capacity(dim(n));
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        Self { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Position of the pair (i, j), i < j, in the coordinate order.
    pub fn index_of(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        // Pairs starting below i come first, then the offset within row i.
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn pair_at(&self, idx: usize) -> (usize, usize) {
        self.pairs[idx]
    }
}

/// Dimension of Λ²F_p^n, i.e. n(n-1)/2.
pub fn dim(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An element of Λ²M in wedge-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bivector {
    p: u64,
    n: usize,
    coords: Vec<u64>,
}

impl Bivector {
    pub fn new(p: u64, n: usize, coords: Vec<u64>) -> Result<Self> {
        fp::validate_prime(p)?;
        if coords.len() != dim(n) {
            return Err(Error::DimensionMismatch {
                expected: dim(n),
                got: coords.len(),
            });
        }
        let coords = coords.into_iter().map(|c| c % p).collect();
        Ok(Self { p, n, coords })
    }

    pub fn zero(p: u64, n: usize) -> Result<Self> {
        Self::new(p, n, vec![0; dim(n)])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Dimension of the underlying space M, not of Λ²M.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Coordinate at the wedge-basis position (i, j), i < j.
    pub fn coord_at(&self, i: usize, j: usize) -> u64 {
        self.coords[WedgeBasis::new(self.n).index_of(i, j)]
    }

    pub fn add(&self, other: &Bivector) -> Bivector {
        assert_eq!(self.p, other.p);
        assert_eq!(self.n, other.n);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| fp::add(a, b, self.p))
            .collect();
        Bivector {
            p: self.p,
            n: self.n,
            coords,
        }
    }

    pub fn neg(&self) -> Bivector {
        let coords = self.coords.iter().map(|&a| fp::neg(a, self.p)).collect();
        Bivector {
            p: self.p,
            n: self.n,
            coords,
        }
    }

    /// This bivector as a plain coordinate vector of the wedge ambient.
    pub fn as_vector(&self) -> FpVector {
        FpVector::new(self.p, self.coords.clone()).expect("valid residues")
    }

    /// Reads a bivector back from wedge-ambient coordinates.
    pub fn from_vector(n: usize, v: &FpVector) -> Result<Self> {
        Self::new(v.p(), n, v.coords().to_vec())
    }

    /// The alternating n×n matrix of the bivector: entry (i, j) is the
    /// coordinate at i ∧ j for i < j, its negative below the diagonal, and
    /// zero on the diagonal.
    pub fn alternating_matrix(&self) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; self.n]; self.n];
        let basis = WedgeBasis::new(self.n);
        for (idx, &(i, j)) in basis.pairs().iter().enumerate() {
            let c = self.coords[idx];
            m[i][j] = c;
            m[j][i] = fp::neg(c, self.p);
        }
        m
    }

    /// Rank of the alternating matrix. Always even, and equal to the
    /// smallest dimension of a subspace E with this bivector in Λ²E.
    pub fn rank(&self) -> usize {
        mat::rank(self.alternating_matrix(), self.p)
    }

    /// The row space of the alternating matrix: the smallest subspace E of M
    /// with this bivector in Λ²E.
    pub fn support(&self) -> Subspace {
        Subspace::from_rows(self.p, self.n, self.alternating_matrix())
    }

    /// Parses the comma-separated literal of length n(n-1)/2.
    pub fn parse(text: &str, p: u64, n: usize) -> Result<Self> {
        let v = FpVector::parse(text, p, dim(n))?;
        Self::from_vector(n, &v)
    }
}

impl fmt::Display for Bivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_vector())
    }
}

/// The wedge product u ∧ v: coordinate (i, j) is u_i v_j - u_j v_i.
pub fn wedge(u: &FpVector, v: &FpVector) -> Result<Bivector> {
    u.check_compatible(v)?;
    let p = u.p();
    let n = u.len();
    let basis = WedgeBasis::new(n);
    let coords = basis
        .pairs()
        .iter()
        .map(|&(i, j)| {
            fp::sub(
                fp::mul(u.get(i), v.get(j), p),
                fp::mul(u.get(j), v.get(i), p),
                p,
            )
        })
        .collect();
    Bivector::new(p, n, coords)
}

/// The image of Λ²H inside Λ²M: the span of the wedges of all basis pairs
/// of H. Its dimension is d(d-1)/2 for d = dim H.
pub fn lambda2_embed(h: &Subspace) -> Subspace {
    let n = h.ambient_dim();
    let basis = h.basis();
    let mut gens = Vec::with_capacity(dim(basis.len()));
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            gens.push(
                wedge(&basis[i], &basis[j])
                    .expect("basis vectors are compatible")
                    .as_vector(),
            );
        }
    }
    Subspace::span(h.p(), dim(n), &gens).expect("prime validated by h")
}

/// The test element Σ_{i<m} a_{2i} ∧ a_{2i+1} built from 2m linearly
/// independent vectors.
pub fn build_w(m: usize, vectors: &[FpVector]) -> Result<Bivector> {
    if vectors.len() != 2 * m || m == 0 {
        return Err(Error::DimensionMismatch {
            expected: 2 * m,
            got: vectors.len(),
        });
    }
    let p = vectors[0].p();
    let n = vectors[0].len();
    let span = Subspace::span(p, n, vectors)?;
    if span.dim() != 2 * m {
        return Err(Error::DependentVectors);
    }
    let mut acc = Bivector::zero(p, n)?;
    for pair in vectors.chunks_exact(2) {
        acc = acc.add(&wedge(&pair[0], &pair[1])?);
    }
    Ok(acc)
}

/// Brute-force minimum dimension of a subspace E with `w` in Λ²E, by
/// scanning every subspace of the ambient in dimension order.
///
/// This is the independent oracle for [`Bivector::rank`]; it stays a plain
/// exhaustive search on purpose.
pub fn min_support_dim_oracle(w: &Bivector, guard: &Guardrail) -> Result<usize> {
    guard.check(enumerate::subspace_count(w.p(), w.n()))?;
    let target = w.as_vector();
    let mut best: Option<usize> = None;
    for e in enumerate::SubspaceIter::new(w.p(), w.n()) {
        if let Some(b) = best {
            // The stream is dimension-ascending, so the first hit is final.
            if e.dim() > b {
                break;
            }
        }
        if lambda2_embed(&e).contains(&target)? {
            best = Some(e.dim());
        }
    }
    best.ok_or_else(|| Error::Internal("bivector not supported by the full space".into()))
}
