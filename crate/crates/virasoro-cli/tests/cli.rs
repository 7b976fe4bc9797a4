use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_virasoro"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn phi_symbolic_example() {
    let out = run(&[
        "phi",
        "--alpha",
        "0",
        "--beta",
        "0",
        "--symbolic",
        "--elem",
        "d(-1)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("symbolic: -n - a + b - 1"));
}

#[test]
fn simplicity_example_is_simple() {
    let out = run(&[
        "simplicity",
        "--c",
        "0",
        "--h",
        "0",
        "--alpha",
        "1/3",
        "--beta",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: simple"));
}

#[test]
fn negative_rationals_accepted() {
    let out = run(&["singular", "--c", "-22/5", "--h", "0", "--level", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("- d(-1)"));
}

#[test]
fn parse_error_names_token() {
    let out = run(&[
        "phi",
        "--alpha",
        "0",
        "--beta",
        "0",
        "--elem",
        "2*d(-1) + x",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 10"), "stderr was: {err}");
    assert!(err.contains("'x'"), "stderr was: {err}");
}

#[test]
fn unknown_flag_exits_2() {
    let out = run(&["gens", "--c", "0", "--h", "0", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("failed: 0"));
}

#[test]
fn json_reports_are_stable_modulo_timing() {
    let args = [
        "simplicity",
        "--c",
        "1/2",
        "--h",
        "-1/2",
        "--alpha",
        "1/2",
        "--beta",
        "1/2",
        "--format",
        "json",
    ];
    let strip = |s: String| -> String {
        s.lines()
            .filter(|l| !l.contains("timing_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let a = strip(stdout(&run(&args)));
    let b = strip(stdout(&run(&args)));
    assert_eq!(a, b);
    assert!(a.contains("\"verdict\": \"not_simple\""));
    assert!(a.contains("\"phi_roots\": \"{0}\""));
}

#[test]
fn act_applies_generator() {
    let dir = std::env::temp_dir();
    let path = dir.join("virasoro_cli_act_state.txt");
    std::fs::write(&path, "1@v(3)").unwrap();
    let out = run(&[
        "act",
        "--gen",
        "2",
        "--state",
        path.to_str().unwrap(),
        "--c",
        "1/2",
        "--h",
        "1/3",
        "--alpha",
        "1/4",
        "--beta",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("output: 29/4@v(5)"));
}

#[test]
fn window_violation_exits_1() {
    let dir = std::env::temp_dir();
    let path = dir.join("virasoro_cli_window_state.txt");
    std::fs::write(&path, "d(-2)@v(0)").unwrap();
    let out = run(&[
        "act",
        "--gen",
        "-1",
        "--state",
        path.to_str().unwrap(),
        "--c",
        "1/2",
        "--h",
        "1/3",
        "--alpha",
        "1/4",
        "--beta",
        "2",
        "--max-level",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("escapes the truncation window"));
}

#[test]
fn cap_precedence_flag_over_env_over_default() {
    let out = bin()
        .args(["gens", "--c", "1", "--h", "17/16"])
        .env("VIRASORO_LEVEL_CAP", "5")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("scanned_to: 5"));

    let out = bin()
        .args(["gens", "--c", "1", "--h", "17/16", "--cap", "3"])
        .env("VIRASORO_LEVEL_CAP", "5")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("scanned_to: 3"));

    let out = bin()
        .args(["gens", "--c", "1", "--h", "17/16"])
        .env("VIRASORO_LEVEL_CAP", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn filtration_lists_chain() {
    let out = run(&[
        "filtration",
        "--c",
        "1",
        "--h",
        "-1",
        "--alpha",
        "0",
        "--beta",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("- index: -3"));
    assert!(text.contains("quotient: (1, -4)"));
    assert!(text.contains("- index: 1"));
    assert!(text.contains("quotient: (1, 0)"));
    assert!(text.contains("minimal_submodule_index: 1"));
}

#[test]
fn classify_pre_canonical_tuples() {
    let out = run(&[
        "classify", "--c1", "1", "--h1", "0", "--alpha1", "5/2", "--beta1", "1", "--c2", "1",
        "--h2", "0", "--alpha2", "1/2", "--beta2", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("isomorphic: true"));
}
