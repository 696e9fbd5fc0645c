use std::process::{Command, Output};

use serde_json::Value;

fn recovery(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recovery")).args(args).env_remove("RECOVERY_SEED").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn all_pass(v: &Value) -> bool {
    v["checks"].as_array().expect("checks").iter().all(|c| c["pass"] == Value::Bool(true))
}

#[test]
fn recover_sym_example() {
    let out = recovery(&["recover-sym", "--k", "2", "--n", "2", "--weights", "1 2\n1 0\n1 -2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert!(all_pass(&v));
    let mut got: Vec<i64> = v["result"]["recovered"]["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["weight"][0].as_i64().unwrap())
        .collect();
    got.sort();
    assert_eq!(got, vec![-1, 1]);
}

#[test]
fn recover_infers_n_and_reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    std::fs::write(&path, "1 2\n2 0\n1 -2\n").unwrap();
    let out = recovery(&["recover-tensor", "--k", "2", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["n"], 2);
}

#[test]
fn heisenberg_example() {
    let out = recovery(&["heisenberg", "--n", "3", "--a", "1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(all_pass(&v));
    let r = &v["result"];
    assert_eq!(r["group_order"], 27);
    assert_eq!(r["conjugacy_classes"], 11);
    assert_eq!(r["kth_power_equal"], true);
    assert_eq!(r["characters_equal"], false);
    assert_eq!(r["twist_search"], Value::Null);
    assert_eq!(r["clifford_multiplicity_one"], true);
    assert_eq!(r["fixed_sets_agree"], true);
}

#[test]
fn density_example() {
    let out = recovery(&[
        "density", "--group", "sym:3", "--g0", "alt", "--rep1", "std", "--rep2", "triv+sign", "--samples", "20000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(all_pass(&v));
    assert_eq!(v["result"]["report"]["lambda"], "1/2");
    assert_eq!(v["result"]["report"]["agreement_density"], "2/3");
}

#[test]
fn deterministic_runs_are_byte_identical() {
    let args = ["--deterministic", "--seed", "7", "density", "--group", "dihedral:5", "--g0", "derived", "--rep1",
        "irr:2", "--rep2", "irr:3", "--samples", "5000"];
    let a = recovery(&args);
    let b = recovery(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["wall_time_ms"], 0);
}

#[test]
fn seed_comes_from_the_environment() {
    let args = ["--deterministic", "density", "--group", "sym:3", "--g0", "alt", "--rep1", "std", "--rep2", "triv+sign"];
    let flag = recovery(&[&["--seed", "11"], &args[..]].concat());
    let env = Command::new(env!("CARGO_BIN_EXE_recovery")).args(args).env("RECOVERY_SEED", "11").output().unwrap();
    assert_eq!(flag.stdout, env.stdout);
}

#[test]
fn output_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = recovery(&["--format", "text", "--output", path.to_str().unwrap(), "lattice-saturate", "--basis", "2 4; 0 6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("status: ok"));
    assert!(text.contains("check PASS idempotent"));
}

#[test]
fn domain_refusals_exit_2_with_a_report() {
    let out = recovery(&["recover-sym", "--k", "2", "--weights", "1 2; 1 0"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["name"], "NotASymPower");
    assert!(!all_pass(&v));

    let out = recovery(&["density", "--group", "sym:3", "--g0", "whole", "--rep1", "std", "--rep2", "triv"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["name"], "InvalidModel");
}

#[test]
fn malformed_input_exits_3() {
    for args in [
        &["recover-sym", "--k", "2", "--weights", "1 x"][..],
        &["nope"],
        &["adjoint-fibre", "--algebra", "G2", "--hw", "1,0"],
        &["twist-search", "--group", "sym:3", "--rep1", "std", "--rep2", "bogus"],
        &["clifford", "--group", "sym:3", "--rep", "std", "--normal", "gens:zz"],
        &["selftest", "--filter", "bogus"],
        &["recover-sym", "--k", "2"],
    ] {
        let out = recovery(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim().lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn twist_search_finds_sign_twist_and_no_heisenberg_twist() {
    let v = json(&recovery(&["twist-search", "--group", "sym:3", "--rep1", "std", "--rep2", "std*lin:1"]));
    assert!(all_pass(&v));
    assert_ne!(v["result"]["twist"], Value::Null);
    let v = json(&recovery(&["twist-search", "--group", "heisenberg:3", "--rep1", "rho:1", "--rep2", "rho:2", "--k", "3"]));
    assert!(all_pass(&v));
    assert_eq!(v["result"]["twist"], Value::Null);
    assert_eq!(v["result"]["kth_power_equal"], true);
}

#[test]
fn structural_commands_pass_their_checks() {
    for args in [
        &["ext-search", "--k", "2", "--weights", "1 1 0; 1 0 1; 1 -1 -1"][..],
        &["factorize", "--algebra", "A2", "--bound", "1"],
        &["adjoint-fibre", "--algebra", "C2", "--hw", "(1,0)", "--product"],
        &["clifford", "--group", "heisenberg:3", "--rep", "rho:1", "--normal", "t", "--rep2", "rho:2"],
        &["clifford", "--group", "dihedral:4", "--rep", "irr:4", "--normal", "gens:r"],
        &["asai", "--group", "sym:3", "--normal", "alt", "--rep", "lin:1"],
        &["cocycle", "--demo"],
        &["cocycle", "--group", "sym:3", "--normal", "alt", "--rep1", "std", "--rep2", "std*lin:1"],
        &["lattice-lift", "--restriction", "1 0", "--extension", "1 0; 0 1; 0 0"],
    ] {
        let out = recovery(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(all_pass(&json(&out)), "{args:?}");
    }
}

#[test]
fn selftest_with_filter() {
    let out = recovery(&["selftest", "--filter", "lattice,5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["total"], 2);
    assert_eq!(v["result"]["passed"], 2);

    let out = recovery(&["selftest", "--filter", "9", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["passed"], 0);
}

#[test]
fn strict_mode_exits_0_when_every_check_passes() {
    let out = recovery(&["--strict", "selftest", "--filter", "lattice"]);
    assert_eq!(out.status.code(), Some(0));
}
