//! Predimension and closure calculus for alternating bilinear maps over
//! prime fields.
//!
//! A structure is a pair (M, N) where M = F_p^n and N is a subspace of the
//! exterior square Λ²M: the relations of an alternating bilinear map whose
//! target is the quotient Λ²M/N. On top of this the crate computes the
//! k-scaled predimension δ_k, selfsufficiency, the selfsufficient closure
//! CSS, the combinatorial closure cl_k, minimal extensions, and the closure
//! chain, plus the free-case bivector-rank invariants. Exhaustive suites on
//! enumerated small structures check each law the calculus relies on.
//!
//! Everything is exact integer arithmetic; every enumeration is guarded and
//! deterministic.

pub mod closure;
pub mod enumerate;
pub mod error;
mod fp;
pub mod free;
mod lattice;
mod mat;
pub mod propcheck;
pub mod structure;
pub mod subspace;
pub mod vector;
pub mod wedge;

pub use closure::{
    closure_chain, closure_set, css, delta_rel, dk, in_closure, is_selfsufficient,
    minimal_extensions, ClosureReport, ClosureSet,
};
pub use enumerate::Guardrail;
pub use error::{Error, Result};
pub use structure::{BilinearStructure, FewRelationsVerdict, ScaledDelta};
pub use subspace::Subspace;
pub use vector::FpVector;
pub use wedge::{Bivector, WedgeBasis};
