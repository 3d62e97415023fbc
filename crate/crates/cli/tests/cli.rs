use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiprime-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn canon_prints_normal_form_and_shape() {
    let out = run(&[
        "canon",
        "--gens",
        "2,5",
        "--p",
        "2",
        "--elem",
        "t^4+t^5+t^6+t^7",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(t^4 + t^5)\nshape: PRINCIPAL(4; 1, 0)\n");
}

#[test]
fn non_coprime_generators_exit_with_one() {
    let out = run(&["semigroup", "--gens", "2,4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotCoprime"));
}

#[test]
fn conflicting_flags_exit_with_two() {
    let out = run(&[
        "demo-fractional",
        "--dvr",
        "--element",
        "t^2",
        "--ideal",
        "(t^2)",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("exactly one") && err.contains("--gens"),
        "{err}"
    );
    assert_eq!(
        run(&["--threads", "0", "semigroup", "--gens", "2,5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn prime_search_reports_identity_only() {
    let out = run(&[
        "search",
        "--gens",
        "2,5",
        "--max-order",
        "8",
        "--expect-identity-only",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1 operation(s)"));
    let semi = run(&[
        "search",
        "--gens",
        "2,5",
        "--max-order",
        "6",
        "--mode",
        "semiprime",
        "--expect-identity-only",
    ]);
    assert_eq!(semi.status.code(), Some(1));
}

#[test]
fn json_output_is_versioned_and_reproducible() {
    let args = [
        "--threads",
        "2",
        "search",
        "--gens",
        "3,4,5",
        "--max-order",
        "6",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args[2..]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "search");
}

#[test]
fn verify_expect_pass_follows_axiom_results() {
    let ok = [
        "verify",
        "--gens",
        "2,5",
        "--max-order",
        "6",
        "--op",
        "integral_closure",
        "--axioms",
        "1-4",
        "--expect-pass",
    ];
    assert!(run(&ok).status.success());
    let mut bad = ok.to_vec();
    bad[8] = "1-5";
    assert_eq!(run(&bad).status.code(), Some(1));
}

#[test]
fn lattice_writes_dot_file() {
    let path =
        std::env::temp_dir().join(format!("semiprime-lab-lattice-{}.dot", std::process::id()));
    let out = run(&[
        "lattice",
        "--gens",
        "2,5",
        "--max-order",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(dot.starts_with("digraph") && dot.contains("->"));
}

#[test]
fn demo_fractional_finds_witnesses_for_the_dvr_family() {
    let out = run(&["demo-fractional", "--dvr", "--D", "6", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cands = doc["candidates"].as_array().unwrap();
    assert!(!cands.is_empty());
    assert!(
        cands.iter().all(|c| c["result"]["verdict"] != "Unrefuted"),
        "{doc}"
    );
}
