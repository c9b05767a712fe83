//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Criteria 1–8 drive the named law suites at their shipped default
//! catalogs; criterion 9 exercises the few-relations checker directly.
//! The format and determinism criterion lives in the CLI crate's own
//! acceptance suite, next to the binary it tests.

use std::time::Instant;

use predim::enumerate::Guardrail;
use predim::free;
use predim::propcheck::{run_suite, CatalogConfig, LemmaId};
use predim::structure::{BilinearStructure, FewRelationsVerdict};
use predim::subspace::Subspace;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {} ({detail})",
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn run_default(id: LemmaId) -> (bool, u64, u128) {
    let cfg = CatalogConfig::acceptance_default(id);
    let r = run_suite(id, &cfg, 1).expect("suite runs");
    if let Some(ce) = &r.counterexample {
        eprintln!("counterexample for {id}: {}\n{}", ce.detail, ce.structure);
    }
    (r.pass, r.instances, r.time_ms)
}

#[test]
fn criterion_01_submodularity_suite() {
    let start = Instant::now();
    let (pass, instances, _) = run_default(LemmaId::L3_1);
    let elapsed = start.elapsed();
    report(
        "1 L3.1 submodularity",
        pass && elapsed.as_secs() < 60,
        &format!("instances={instances}, time={elapsed:.2?}, budget 60s"),
    );
    // Exhaustive coverage floor: 18 relation subspaces per k at n ≤ 3,
    // each checked over all (H, K) pairs.
    assert!(instances > 48 * 16 * 16);
}

#[test]
fn criterion_02_selfsufficient_intersections() {
    let (pass, instances, _) = run_default(LemmaId::L3_2);
    report(
        "2 L3.2 intersections stay selfsufficient",
        pass,
        &format!("instances={instances}"),
    );
}

#[test]
fn criterion_03_css_oracle() {
    let (pass, instances, _) = run_default(LemmaId::CssOracle);
    report(
        "3 CSS-oracle search equals literal intersection",
        pass,
        &format!("instances={instances}"),
    );
}

#[test]
fn criterion_04_closure_operator_axioms() {
    let (pass, instances, _) = run_default(LemmaId::L3_3);
    report(
        "4 L3.3 closure operator axioms",
        pass,
        &format!("instances={instances}"),
    );
}

#[test]
fn criterion_05_relative_predimension_consistency() {
    let (pass, instances, _) = run_default(LemmaId::DeltaRel);
    report(
        "5 DREL min formula equals closed formula",
        pass,
        &format!("instances={instances}"),
    );
}

#[test]
fn criterion_06_minimal_extension_lemmas() {
    let (pass1, i1, _) = run_default(LemmaId::L5_1);
    let (pass2, i2, _) = run_default(LemmaId::L5_2);
    report(
        "6 L5.1/L5.2 minimal extensions",
        pass1 && pass2,
        &format!("instances={i1}+{i2}, exhaustive p=2 n ≤ 4"),
    );
}

#[test]
fn criterion_07_closure_chain() {
    let (pass, instances, _) = run_default(LemmaId::T6_1Chain);
    report(
        "7 T6.1-chain termination and closure equality",
        pass,
        &format!("instances={instances}"),
    );
}

#[test]
fn criterion_08_free_case() {
    let start = Instant::now();
    let (pass, instances, _) = run_default(LemmaId::L4_1);
    let g = free::g_sequence(3);
    let guard = Guardrail::default();
    let ranks: Vec<usize> = free::orbit_separation_witnesses(2, 2, &guard)
        .unwrap()
        .iter()
        .map(|w| w.rank)
        .collect();
    let elapsed = start.elapsed();
    let ok = pass && g == vec![1, 3, 7] && ranks == vec![2, 6] && elapsed.as_secs() < 30;
    report(
        "8 L4.1 and rank-orbit separation",
        ok,
        &format!("instances={instances}, g={g:?}, ranks={ranks:?}, time={elapsed:.2?}, budget 30s"),
    );
}

#[test]
fn criterion_09_few_relations_checker() {
    let guard = Guardrail::default();
    let mut ok = true;
    let mut notes = Vec::new();

    for k in [1u64, 2, 3] {
        let free = free::free_structure(4, 2, k).unwrap();
        if !free.check_few_relations(&guard).unwrap().holds() {
            ok = false;
            notes.push(format!("free structure failed at k={k}"));
        }
    }

    let full = BilinearStructure::new(2, 4, 1, Subspace::full(2, 6).unwrap()).unwrap();
    match full.check_few_relations(&guard).unwrap() {
        FewRelationsVerdict::Fails {
            witness,
            relation_dim,
        } => {
            if witness != Subspace::full(2, 4).unwrap() || relation_dim != 6 {
                ok = false;
                notes.push(format!("wrong witness {witness} (dim N = {relation_dim})"));
            }
            // Minimality: no lower-dimensional subspace violates the bound.
            for h in predim::enumerate::subspaces(2, 4, &guard).unwrap() {
                if h.dim() < witness.dim() {
                    let n_h = full.n_of(&h).unwrap();
                    if n_h.dim() as u64 > full.k() * h.dim() as u64 {
                        ok = false;
                        notes.push(format!("smaller witness {h} exists"));
                    }
                }
            }
        }
        FewRelationsVerdict::Holds { .. } => {
            ok = false;
            notes.push("full relations at k=1 unexpectedly hold".into());
        }
    }

    if !full.with_k(2).unwrap().check_few_relations(&guard).unwrap().holds() {
        ok = false;
        notes.push("full relations at k=2 should hold".into());
    }

    report(
        "9 few-relations checker",
        ok,
        &if notes.is_empty() {
            "free holds for k=1..3; full n=4 fails at k=1 with minimal witness M, holds at k=2"
                .to_string()
        } else {
            notes.join("; ")
        },
    );
}
