//! End-to-end checks of the command-line surface: worked examples, output
//! formats, and exit codes.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn predim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_predim"))
        .args(args)
        .env_remove("PREDIM_GUARDRAIL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write_structure(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(text.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

const S1: &str = "p 2\ndim 3\nk 1\nrel 1 0 0\n";
const S2: &str = "p 2\ndim 3\nk 1\nrel 1 0 0\nrel 0 1 0\nrel 0 0 1\n";

#[test]
fn css_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = write_structure(dir.path(), "s2.txt", S2);
    let out = predim(&["css", "--structure", &s2, "--subspace", "1,0,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("css: 1,0,0;0,1,0;0,0,1"));
    assert!(text.contains("delta: 0 (scaled)"));
}

#[test]
fn inline_structures_work() {
    let out = predim(&[
        "delta",
        "--inline",
        "p 2;dim 3;k 1;rel 1 0 0",
        "--subspace",
        "1,0,0;0,1,0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("delta: 1 (scaled)"));
}

#[test]
fn bivector_rank_example() {
    let out = predim(&["bivector-rank", "--p", "2", "--n", "4", "--bivector", "1,0,0,0,0,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn machine_output_is_versioned_key_value() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = write_structure(dir.path(), "s1.txt", S1);
    let out = predim(&[
        "delta",
        "--structure",
        &s1,
        "--subspace",
        "1,0,0;0,1,0",
        "--output",
        "machine",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "format 1\ncommand delta\ndelta_scaled 1\nk 1\ndelta_rational 1\n"
    );
}

#[test]
fn k_override_changes_the_scale() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = write_structure(dir.path(), "s1.txt", S1);
    let out = predim(&[
        "delta", "--structure", &s1, "--k", "3", "--subspace", "1,0,0;0,1,0",
    ]);
    // 3·2 - 1 = 5.
    assert!(stdout(&out).contains("delta: 5 (scaled)"));
}

#[test]
fn predicate_commands_signal_false_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = write_structure(dir.path(), "s2.txt", S2);
    let out = predim(&["selfsufficient", "--structure", &s2, "--subspace", "1,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "false\n");

    let out = predim(&["selfsufficient", "--structure", &s2, "--subspace", "zero"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "true\n");
}

#[test]
fn few_relations_failure_prints_witness_and_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let full = write_structure(
        dir.path(),
        "full.txt",
        "p 2\ndim 4\nk 1\nrel 1 0 0 0 0 0\nrel 0 1 0 0 0 0\nrel 0 0 1 0 0 0\nrel 0 0 0 1 0 0\nrel 0 0 0 0 1 0\nrel 0 0 0 0 0 1\n",
    );
    let out = predim(&["few-relations", "--structure", &full]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("fails"));
    assert!(text.contains("1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1"));

    let out = predim(&["few-relations", "--structure", &full, "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_structure(dir.path(), "bad.txt", "p 4\ndim 3\nk 1\n");
    let out = predim(&["delta", "--structure", &bad, "--subspace", "zero"]);
    assert_eq!(out.status.code(), Some(2));

    let out = predim(&["delta", "--inline", "p 2;dim 3", "--subspace", "zero"]);
    assert_eq!(out.status.code(), Some(2));

    let out = predim(&["verify", "L9.9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn guardrail_exceeded_exits_three_with_required_count() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = write_structure(dir.path(), "s1.txt", S1);
    let out = predim(&[
        "few-relations",
        "--structure",
        &s1,
        "--guardrail",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("16"), "stderr should report the required count: {err}");
}

#[test]
fn raising_the_guardrail_needs_acknowledgement() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = write_structure(dir.path(), "s1.txt", S1);
    let out = predim(&[
        "few-relations",
        "--structure",
        &s1,
        "--guardrail",
        "2000000",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = predim(&[
        "few-relations",
        "--structure",
        &s1,
        "--guardrail",
        "2000000",
        "--allow-expensive",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn delta_rel_requires_selfsufficient_base() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = write_structure(dir.path(), "s2.txt", S2);
    let out = predim(&[
        "delta-rel",
        "--structure",
        &s2,
        "--subspace",
        "0,1,0",
        "--over",
        "1,0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chain_report_machine_schema() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = write_structure(dir.path(), "s1.txt", S1);
    let out = predim(&[
        "chain",
        "--structure",
        &s1,
        "--subspace",
        "1,0,0",
        "--output",
        "machine",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("format 1\ncommand chain\ninput 1,0,0\n"));
    assert!(text.contains("dk_scaled 1\n"));
    assert!(text.contains("closure_is_subspace true\n"));
    assert!(text.contains("chain_1 1,0,0;0,1,0\n"));
}

#[test]
fn free_orbit_witnesses() {
    let out = predim(&["free-orbits", "--count", "2", "--p", "2", "--output", "machine"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("witness_0_rank 2\n"));
    assert!(text.contains("witness_1_rank 6\n"));
    assert!(text.contains("distinct_ranks true\n"));
}

#[test]
fn lemma41_verdict() {
    let out = predim(&["lemma41", "--m", "2", "--p", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mode: exhaustive"));
    assert!(text.contains("bound holds (no membership below dim 2): true"));
    assert!(text.contains("observed membership threshold: 4"));
}

#[test]
fn verify_single_suite() {
    let out = predim(&["verify", "L3.3", "--output", "machine"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("format 1\ncommand verify\n"));
    assert!(text.contains("SUITE L3.3 pass instances="));
    assert!(text.contains("time_ms=0"));
}

#[test]
fn fmt_canonicalizes_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    // Messy draft: comments, reordered keys, dependent rel generators.
    let messy = write_structure(
        dir.path(),
        "messy.txt",
        "# draft\nk 2\np 2\ndim 3\nrel 1 1 0\nrel 0 1 1\nrel 1 0 1  # dependent\n",
    );
    let out = predim(&["fmt", "--structure", &messy]);
    assert!(out.status.success());
    let canonical = stdout(&out);
    assert_eq!(canonical, "p 2\ndim 3\nk 2\nrel 1 0 1\nrel 0 1 1\n");

    // fmt of canonical output is byte-identical.
    let canon_file = write_structure(dir.path(), "canon.txt", &canonical);
    let again = predim(&["fmt", "--structure", &canon_file]);
    assert_eq!(stdout(&again), canonical);
}
