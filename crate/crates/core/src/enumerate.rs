//! Exhaustive enumeration of vectors, subspaces, and superspaces.
//!
//! Enumerations are exact and duplicate-free. The public functions return
//! results in a fixed canonical order (dimension-major, then lexicographic
//! on the canonical basis matrix) so every downstream output is
//! deterministic. A guardrail bounds how many items any enumeration may
//! produce; exceeding it reports the count that would have been required.

use crate::error::{Error, Result};
use crate::fp;
use crate::subspace::Subspace;
use crate::vector::FpVector;

/// Upper bound on the number of items an enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guardrail {
    limit: u64,
}

impl Guardrail {
    pub const DEFAULT_LIMIT: u64 = 1_000_000;

    pub const fn new(limit: u64) -> Self {
        Self { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.limit as u128 {
            Err(Error::GuardrailExceeded {
                required,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Guardrail {
    fn default() -> Self {
        Self::new(Self::DEFAULT_LIMIT)
    }
}

/// Number of vectors in F_p^n, saturating at `u128::MAX`.
pub fn vector_count(p: u64, n: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(p as u128);
    }
    acc
}

/// The Gaussian binomial coefficient: the number of d-dimensional subspaces
/// of F_p^n. Computed by the Pascal-style recurrence
/// `[n d] = [n-1 d-1] + p^d [n-1 d]`, saturating at `u128::MAX`.
pub fn gaussian_binomial(p: u64, n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    let mut row: Vec<u128> = vec![1];
    for _ in 1..=n {
        let mut next = vec![1u128; row.len() + 1];
        for j in 1..row.len() {
            let pj = power_u128(p, j);
            next[j] = row[j - 1].saturating_add(pj.saturating_mul(row[j]));
        }
        row = next;
    }
    row[d]
}

/// Total number of subspaces of F_p^n, saturating at `u128::MAX`.
pub fn subspace_count(p: u64, n: usize) -> u128 {
    (0..=n)
        .map(|d| gaussian_binomial(p, n, d))
        .fold(0u128, u128::saturating_add)
}

fn power_u128(p: u64, e: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(p as u128);
    }
    acc
}

/// All vectors of F_p^n in lexicographic coordinate order (the first
/// coordinate is most significant), starting at the zero vector.
pub fn vectors(p: u64, n: usize, guard: &Guardrail) -> Result<VectorIter> {
    fp::validate_prime(p)?;
    guard.check(vector_count(p, n))?;
    Ok(VectorIter {
        p,
        n,
        current: Some(vec![0; n]),
    })
}

pub struct VectorIter {
    p: u64,
    n: usize,
    current: Option<Vec<u64>>,
}

impl Iterator for VectorIter {
    type Item = FpVector;

    fn next(&mut self) -> Option<FpVector> {
        let coords = self.current.take()?;
        let out = FpVector::new(self.p, coords.clone()).expect("valid residues");
        let mut next = coords;
        let mut i = self.n;
        loop {
            if i == 0 {
                self.current = None;
                return Some(out);
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.p {
                break;
            }
            next[i] = 0;
        }
        self.current = Some(next);
        Some(out)
    }
}

/// All subspaces of F_p^n in canonical order.
pub fn subspaces(p: u64, n: usize, guard: &Guardrail) -> Result<Vec<Subspace>> {
    fp::validate_prime(p)?;
    guard.check(subspace_count(p, n))?;
    let mut out: Vec<Subspace> = SubspaceIter::new(p, n).collect();
    out.sort();
    Ok(out)
}

/// All superspaces K with H ⊆ K ⊆ F_p^n, in canonical order.
///
/// Produced by lifting the subspaces of the quotient along the non-pivot
/// coordinates of H, which hits every superspace exactly once.
pub fn superspaces(h: &Subspace, guard: &Guardrail) -> Result<Vec<Subspace>> {
    let q = h.ambient_dim() - h.dim();
    guard.check(subspace_count(h.p(), q))?;
    let p = h.p();
    let n = h.ambient_dim();

    // Columns without a pivot of H index a basis of the quotient.
    let mut pivot_cols = vec![false; n];
    for row in h.basis_rows() {
        let pivot = row.iter().position(|&c| c != 0).expect("nonzero row");
        pivot_cols[pivot] = true;
    }
    let free_cols: Vec<usize> = (0..n).filter(|&c| !pivot_cols[c]).collect();
    debug_assert_eq!(free_cols.len(), q);

    let mut out = Vec::new();
    for quotient_sub in SubspaceIter::new(p, q) {
        let mut rows: Vec<Vec<u64>> = h.basis_rows().to_vec();
        for qrow in quotient_sub.basis_rows() {
            let mut lifted = vec![0u64; n];
            for (&col, &coeff) in free_cols.iter().zip(qrow) {
                lifted[col] = coeff;
            }
            rows.push(lifted);
        }
        out.push(Subspace::from_rows(p, n, rows));
    }
    out.sort();
    Ok(out)
}

/// Streaming enumeration of all subspaces of F_p^n, grouped by dimension in
/// ascending order. The order within a dimension follows the pivot-column
/// choice, not the canonical order; callers that need the canonical order
/// use [`subspaces`].
pub(crate) struct SubspaceIter {
    p: u64,
    n: usize,
    dim: usize,
    pivots: Vec<usize>,
    free_cells: Vec<(usize, usize)>,
    free_vals: Vec<u64>,
    done_dim: bool,
}

impl SubspaceIter {
    pub(crate) fn new(p: u64, n: usize) -> Self {
        let mut it = Self {
            p,
            n,
            dim: 0,
            pivots: Vec::new(),
            free_cells: Vec::new(),
            free_vals: Vec::new(),
            done_dim: false,
        };
        it.reset_dim(0);
        it
    }

    fn reset_dim(&mut self, dim: usize) {
        self.dim = dim;
        self.done_dim = dim > self.n;
        if !self.done_dim {
            self.pivots = (0..dim).collect();
            self.load_free_cells();
        }
    }

    /// Free entries of an RREF pattern: row i may be nonzero at columns to
    /// the right of its pivot that are not pivots themselves.
    fn load_free_cells(&mut self) {
        self.free_cells.clear();
        for (i, &pi) in self.pivots.iter().enumerate() {
            for c in pi + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free_cells.push((i, c));
                }
            }
        }
        self.free_vals = vec![0; self.free_cells.len()];
    }

    fn emit(&self) -> Subspace {
        let mut rows = vec![vec![0u64; self.n]; self.dim];
        for (i, &pi) in self.pivots.iter().enumerate() {
            rows[i][pi] = 1;
        }
        for (&(r, c), &v) in self.free_cells.iter().zip(&self.free_vals) {
            rows[r][c] = v;
        }
        Subspace::from_rref_rows(self.p, self.n, rows)
    }

    /// Advances the free-value odometer; false when it wraps.
    fn bump_free(&mut self) -> bool {
        let mut i = self.free_vals.len();
        while i > 0 {
            i -= 1;
            self.free_vals[i] += 1;
            if self.free_vals[i] < self.p {
                return true;
            }
            self.free_vals[i] = 0;
        }
        false
    }

    /// Advances the pivot combination in lexicographic order; false when
    /// the dimension is exhausted.
    fn bump_pivots(&mut self) -> bool {
        let d = self.dim;
        if d == 0 {
            return false;
        }
        let mut i = d;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < self.n - (d - i) {
                self.pivots[i] += 1;
                for j in i + 1..d {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.load_free_cells();
                return true;
            }
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done_dim {
            return None;
        }
        let out = self.emit();
        if !self.bump_free() && !self.bump_pivots() {
            self.reset_dim(self.dim + 1);
        }
        Some(out)
    }
}
