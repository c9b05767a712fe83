//! Alternating bilinear maps in pair form: the ambient space together with
//! its relation subspace inside the exterior square.
//!
//! A structure ⟨M, W, β⟩ with W generated by the image of β is determined up
//! to isomorphism by the pair (M, N) where N ⊆ Λ²M is the kernel of the map
//! Λ²M → W. This module works with that pair directly: W is never
//! materialized, values of β are canonical coset representatives modulo N.

use std::cmp::Ordering;
use std::fmt;

use crate::enumerate::{self, Guardrail};
use crate::error::{Error, Result};
use crate::fp;
use crate::subspace::Subspace;
use crate::vector::FpVector;
use crate::wedge::{self, Bivector};

/// The pair (M, N) plus the few-relations constant k.
///
/// `relations` is a subspace of the wedge ambient of dimension n(n-1)/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearStructure {
    p: u64,
    n: usize,
    k: u64,
    relations: Subspace,
}

/// The k-scaled predimension: the exact integer k·dim(H) - dim(N(H)).
///
/// The unscaled value δ_k(H) = dim(H) - dim(N(H))/k is this divided by k.
/// Values of the same structure compare as plain integers; values with
/// different k are not ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaledDelta {
    value: i64,
    k: u64,
}

impl ScaledDelta {
    pub fn new(value: i64, k: u64) -> Self {
        Self { value, k }
    }

    /// The scaled integer k·dim(H) - dim(N(H)).
    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Exact rendering of the unscaled rational value, reduced.
    pub fn rational(&self) -> String {
        let g = gcd(self.value.unsigned_abs(), self.k);
        let num = self.value / g as i64;
        let den = self.k / g;
        if den == 1 {
            format!("{num}")
        } else {
            format!("{num}/{den}")
        }
    }
}

impl PartialOrd for ScaledDelta {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.k == other.k).then(|| self.value.cmp(&other.value))
    }
}

impl fmt::Display for ScaledDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Outcome of the exhaustive few-relations check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FewRelationsVerdict {
    Holds {
        subspaces_checked: u64,
    },
    /// The first failing subspace in dimension-major canonical order, which
    /// makes the witness minimal-dimensional.
    Fails {
        witness: Subspace,
        relation_dim: usize,
    },
}

impl FewRelationsVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, FewRelationsVerdict::Holds { .. })
    }
}

impl BilinearStructure {
    /// Builds a structure, validating the prime, k ≥ 1, and that the
    /// relations live in the wedge ambient of dimension n(n-1)/2 over p.
    pub fn new(p: u64, n: usize, k: u64, relations: Subspace) -> Result<Self> {
        fp::validate_prime(p)?;
        if k == 0 {
            return Err(Error::InvalidK(k));
        }
        if relations.p() != p {
            return Err(Error::ModulusMismatch {
                left: p,
                right: relations.p(),
            });
        }
        if relations.ambient_dim() != wedge::dim(n) {
            return Err(Error::DimensionMismatch {
                expected: wedge::dim(n),
                got: relations.ambient_dim(),
            });
        }
        Ok(Self { p, n, k, relations })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Dimension of the ambient space M.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// The relation subspace N ⊆ Λ²M.
    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// The same structure with a different few-relations constant.
    pub fn with_k(&self, k: u64) -> Result<Self> {
        Self::new(self.p, self.n, k, self.relations.clone())
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.p, self.n).expect("validated prime")
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.p, self.n).expect("validated prime")
    }

    fn check_ambient(&self, h: &Subspace) -> Result<()> {
        if h.p() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: h.p(),
            });
        }
        if h.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: h.ambient_dim(),
            });
        }
        Ok(())
    }

    /// N(H) = N ∩ Λ²H: the relations visible inside H.
    pub fn n_of(&self, h: &Subspace) -> Result<Subspace> {
        self.check_ambient(h)?;
        self.relations.intersect(&wedge::lambda2_embed(h))
    }

    /// The scaled predimension k·dim(H) - dim(N(H)).
    pub fn delta(&self, h: &Subspace) -> Result<ScaledDelta> {
        let n_h = self.n_of(h)?;
        let value = self.k as i64 * h.dim() as i64 - n_h.dim() as i64;
        Ok(ScaledDelta::new(value, self.k))
    }

    /// The value β(u, v) as the canonical representative of u ∧ v modulo
    /// the relations. Two pairs have equal β-value exactly when their
    /// wedges differ by a relation.
    pub fn beta_map(&self, u: &FpVector, v: &FpVector) -> Result<Bivector> {
        if u.p() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: u.p(),
            });
        }
        if u.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: u.len(),
            });
        }
        u.check_compatible(v)?;
        let w = wedge::wedge(u, v)?;
        let reduced = self.relations.reduce(&w.as_vector());
        Bivector::from_vector(self.n, &reduced)
    }

    /// Exhaustively checks dim(N(H)) ≤ k·dim(H) over every subspace of the
    /// ambient. On failure the witness is the first violator in canonical
    /// order, hence of minimal dimension.
    pub fn check_few_relations(&self, guard: &Guardrail) -> Result<FewRelationsVerdict> {
        guard.check(enumerate::subspace_count(self.p, self.n))?;
        let mut checked = 0u64;
        for h in enumerate::subspaces(self.p, self.n, guard)? {
            checked += 1;
            let n_h = self.n_of(&h)?;
            if n_h.dim() as u64 > self.k * h.dim() as u64 {
                return Ok(FewRelationsVerdict::Fails {
                    witness: h,
                    relation_dim: n_h.dim(),
                });
            }
        }
        Ok(FewRelationsVerdict::Holds {
            subspaces_checked: checked,
        })
    }

    /// Parses the line-oriented structure file format.
    ///
    /// Recognized lines, in any order: `p <prime>`, `dim <n>`,
    /// `k <positive int>`, and zero or more `rel <residues>` with n(n-1)/2
    /// whitespace-separated residues in wedge-basis order. `#` starts a
    /// comment; blank lines are ignored. The relations are the span of all
    /// `rel` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p: Option<u64> = None;
        let mut n: Option<usize> = None;
        let mut k: Option<u64> = None;
        let mut rel_lines: Vec<(usize, Vec<u64>)> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let key = tokens.next().expect("nonempty line has a token");
            let rest: Vec<&str> = tokens.collect();
            let lineno = lineno + 1;
            match key {
                "p" => {
                    set_once(&mut p, parse_scalar(&rest, "p", lineno)?, "p", lineno)?;
                }
                "dim" => {
                    set_once(
                        &mut n,
                        parse_scalar::<usize>(&rest, "dim", lineno)?,
                        "dim",
                        lineno,
                    )?;
                }
                "k" => {
                    set_once(&mut k, parse_scalar(&rest, "k", lineno)?, "k", lineno)?;
                }
                "rel" => {
                    let coords = rest
                        .iter()
                        .map(|t| {
                            t.parse::<u64>().map_err(|_| {
                                Error::Parse(format!("line {lineno}: bad residue `{t}`"))
                            })
                        })
                        .collect::<Result<Vec<u64>>>()?;
                    rel_lines.push((lineno, coords));
                }
                other => {
                    return Err(Error::Parse(format!(
                        "line {lineno}: unknown key `{other}`"
                    )));
                }
            }
        }

        let p = p.ok_or_else(|| Error::Parse("missing `p` line".into()))?;
        let n = n.ok_or_else(|| Error::Parse("missing `dim` line".into()))?;
        let k = k.ok_or_else(|| Error::Parse("missing `k` line".into()))?;
        let wd = wedge::dim(n);
        let mut gens = Vec::with_capacity(rel_lines.len());
        for (lineno, coords) in rel_lines {
            if coords.len() != wd {
                return Err(Error::Parse(format!(
                    "line {lineno}: rel needs {wd} residues, got {}",
                    coords.len()
                )));
            }
            if let Some(c) = coords.iter().find(|&&c| c >= p) {
                return Err(Error::Parse(format!(
                    "line {lineno}: residue {c} out of range for p={p}"
                )));
            }
            gens.push(FpVector::new(p, coords)?);
        }
        let relations = Subspace::span(p, wd, &gens)?;
        Self::new(p, n, k, relations)
    }

    /// Canonical serialization: `p`, `dim`, `k`, then one `rel` line per
    /// canonical basis row of the relations. Parsing this output yields the
    /// identical structure, and re-serializing a parsed canonical file is
    /// byte-exact.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p {}\n", self.p));
        out.push_str(&format!("dim {}\n", self.n));
        out.push_str(&format!("k {}\n", self.k));
        for row in self.relations.basis_rows() {
            out.push_str("rel");
            for c in row {
                out.push_str(&format!(" {c}"));
            }
            out.push('\n');
        }
        out
    }
}

fn parse_scalar<T: std::str::FromStr>(rest: &[&str], key: &str, lineno: usize) -> Result<T> {
    if rest.len() != 1 {
        return Err(Error::Parse(format!(
            "line {lineno}: `{key}` takes exactly one value"
        )));
    }
    rest[0]
        .parse()
        .map_err(|_| Error::Parse(format!("line {lineno}: bad value `{}` for `{key}`", rest[0])))
}

fn set_once<T>(slot: &mut Option<T>, value: T, key: &str, lineno: usize) -> Result<()> {
    if slot.is_some() {
        return Err(Error::Parse(format!("line {lineno}: duplicate `{key}`")));
    }
    *slot = Some(value);
    Ok(())
}

impl fmt::Display for BilinearStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(p={}, dim={}, k={}, relations dim {})",
            self.p,
            self.n,
            self.k,
            self.relations.dim()
        )
    }
}
