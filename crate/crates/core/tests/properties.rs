//! Property tests for the algebraic laws the calculus rests on.

use proptest::prelude::*;

use predim::enumerate::{self, Guardrail};
use predim::structure::BilinearStructure;
use predim::subspace::Subspace;
use predim::vector::FpVector;
use predim::wedge;

fn residue(p: u64) -> impl Strategy<Value = u64> {
    0..p
}

fn vector(p: u64, n: usize) -> impl Strategy<Value = FpVector> {
    prop::collection::vec(residue(p), n).prop_map(move |coords| FpVector::new(p, coords).unwrap())
}

fn subspace(p: u64, n: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(vector(p, n), 0..=n)
        .prop_map(move |gens| Subspace::span(p, n, &gens).unwrap())
}

/// A strategy over the small primes the crate targets.
fn params() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=5)
}

proptest! {
    /// dim H + dim K = dim(H+K) + dim(H∩K).
    #[test]
    fn modular_dimension_law(pair in params().prop_flat_map(|(p, n)| {
        (subspace(p, n), subspace(p, n))
    })) {
        let (h, k) = pair;
        let s = h.sum(&k).unwrap();
        let i = h.intersect(&k).unwrap();
        prop_assert_eq!(h.dim() + k.dim(), s.dim() + i.dim());
        prop_assert!(s.contains_subspace(&h).unwrap());
        prop_assert!(h.contains_subspace(&i).unwrap());
    }
    /// Re-spanning the canonical basis reproduces the subspace.
    #[test]
    fn span_is_canonical(pair in params().prop_flat_map(|(p, n)| (Just((p, n)), subspace(p, n)))) {
        let ((p, n), h) = pair;
        prop_assert_eq!(Subspace::span(p, n, &h.basis()).unwrap(), h);
    }

    /// Wedge is bilinear and alternating.
    #[test]
    fn wedge_laws(triple in params().prop_flat_map(|(p, n)| {
        (vector(p, n), vector(p, n), vector(p, n))
    })) {
        let (u, v, w) = triple;
        prop_assert!(wedge::wedge(&u, &u).unwrap().is_zero());
        let uv = wedge::wedge(&u, &v).unwrap();
        prop_assert_eq!(uv.neg(), wedge::wedge(&v, &u).unwrap());
        let lhs = wedge::wedge(&u.add(&w), &v).unwrap();
        let rhs = uv.add(&wedge::wedge(&w, &v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// Bivector rank is always even and bounded by the ambient dimension.
    #[test]
    fn rank_is_even(biv in params().prop_flat_map(|(p, n)| {
        prop::collection::vec(residue(p), wedge::dim(n))
            .prop_map(move |coords| wedge::Bivector::new(p, n, coords).unwrap())
    })) {
        let r = biv.rank();
        prop_assert_eq!(r % 2, 0);
        prop_assert!(r <= biv.n());
    }

    /// Structure files survive a parse/serialize round trip.
    #[test]
    fn structure_serialization_round_trips(s in (prop::sample::select(vec![2u64, 3]), 2usize..=4, 1u64..=3)
        .prop_flat_map(|(p, n, k)| {
            let wd = wedge::dim(n);
            prop::collection::vec(prop::collection::vec(0..p, wd), 0..=wd)
                .prop_map(move |rows| {
                    let gens: Vec<FpVector> = rows
                        .into_iter()
                        .map(|r| FpVector::new(p, r).unwrap())
                        .collect();
                    let rel = Subspace::span(p, wd, &gens).unwrap();
                    BilinearStructure::new(p, n, k, rel).unwrap()
                })
        })) {
        let text = s.serialize();
        let reparsed = BilinearStructure::parse(&text).unwrap();
        prop_assert_eq!(&reparsed, &s);
        prop_assert_eq!(reparsed.serialize(), text);
    }
}

#[test]
fn superspace_counts_follow_the_quotient() {
    // The number of superspaces of H is the subspace count of the quotient.
    let g = Guardrail::default();
    for (p, n) in [(2u64, 4usize), (3, 3)] {
        for h in enumerate::subspaces(p, n, &g).unwrap() {
            let supers = enumerate::superspaces(&h, &g).unwrap();
            assert_eq!(
                supers.len() as u128,
                enumerate::subspace_count(p, n - h.dim())
            );
        }
    }
}
