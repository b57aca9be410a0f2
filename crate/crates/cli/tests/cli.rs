use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn rss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rss"))
        .current_dir(corpus())
        .env_remove("RSS_SIZE_GUARD")
        .args(args)
        .output()
        .expect("run rss")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn validate_exit_codes() {
    let ok = rss(&["space", "validate", "--space", "spaces/skew2.json"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout(&ok).trim(), "valid");

    let bad = rss(&["space", "validate", "--space", "spaces/bad.json"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("spanning"));

    let missing = rss(&["space", "validate", "--space", "spaces/missing.json"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn dual_output_reloads_as_a_space() {
    let dir = tempfile::tempdir().unwrap();
    let out = rss(&["space", "dual", "--space", "spaces/skew2.json"]);
    assert_eq!(code(&out), 0);
    let path = dir.path().join("dual.json");
    std::fs::write(&path, out.stdout).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&rss(&["space", "validate", "--space", p])), 0);
    // Norm in the dualized file equals the dual norm in the original.
    let n = rss(&["norm", "--space", p, "--vec", "1,1"]);
    let d = rss(&["norm", "--space", "spaces/skew2.json", "--vec", "1,1", "--dual"]);
    assert_eq!(stdout(&n), stdout(&d));
}

#[test]
fn combine_hom_and_arity() {
    let out = rss(&[
        "--format",
        "json",
        "space",
        "combine",
        "--op",
        "hom",
        "--space",
        "spaces/sup2.json",
        "--space",
        "spaces/sum3.json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["labels"].as_array().unwrap().len(), 6);

    let one = rss(&["space", "combine", "--op", "tensor", "--space", "spaces/sup2.json"]);
    assert_eq!(code(&one), 2);
}

#[test]
fn norm_and_pair() {
    let out = rss(&["norm", "--space", "spaces/skew2.json", "--vec", "1,-1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "4 ~ 4.000000000000");

    let out = rss(&[
        "--format",
        "json",
        "pair",
        "--space",
        "spaces/skew2.json",
        "--vec",
        "1,2",
        "--vec",
        "3,-1",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pairing"]["exact"], "1");
    assert_eq!(v["bound"]["exact"], "21/2");

    let short = rss(&["norm", "--space", "spaces/skew2.json", "--vec", "1"]);
    assert_eq!(code(&short), 2);
}

#[test]
fn mapnorm_and_morphism() {
    let sup = "spaces/sup2.json";
    let out = rss(&["mapnorm", "--space", sup, "--space", sup, "--matrix", "maps/double2.json"]);
    assert_eq!(stdout(&out).trim(), "2 ~ 2.000000000000");
    let out = rss(&["morphism", "--space", sup, "--space", sup, "--matrix", "maps/double2.json"]);
    assert_eq!(code(&out), 1);
    let out = rss(&["morphism", "--space", sup, "--space", sup, "--matrix", "maps/swap2.json"]);
    assert_eq!(code(&out), 0);
    let out = rss(&[
        "morphism",
        "--space",
        "spaces/skew2.json",
        "--space",
        "spaces/sum3.json",
        "--matrix",
        "maps/skew_to_sum3.json",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1/4"));
    // Labels must line up with the spaces.
    let out = rss(&[
        "morphism",
        "--space",
        "spaces/skew2.json",
        "--space",
        sup,
        "--matrix",
        "maps/swap2.json",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn counterexample_report() {
    let out = rss(&["--format", "json", "counterexample", "--N", "3"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["abs_omega_norm"]["exact"], "11/12");
    assert_eq!(v["levels"].as_array().unwrap().len(), 3);

    let csv = rss(&["--format", "csv", "counterexample", "-N", "2"]);
    let lines: Vec<String> = stdout(&csv).lines().map(String::from).collect();
    assert_eq!(lines[0], "n,abs_omega,T_enumerated,T_binomial,level_bound");
    assert_eq!(lines[2], "2,1/4,24,24,3/32");

    assert_eq!(code(&rss(&["counterexample", "--N", "0"])), 2);
    assert_eq!(code(&rss(&["counterexample", "--N", "10"])), 2);
}

#[test]
fn exp_norm_interval() {
    let out = rss(&[
        "--format",
        "json",
        "exp",
        "norm",
        "--space",
        "spaces/sup2.json",
        "--series",
        "series/x1x2.json",
        "--nmax",
        "40",
        "--tol",
        "1/100",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lower"]["exact"], "1/4");
    let width: f64 = v["width"]["decimal"].as_str().unwrap().parse().unwrap();
    assert!(width <= 0.01);

    let low = rss(&[
        "exp",
        "norm",
        "--space",
        "spaces/sup2.json",
        "--series",
        "series/x1x2.json",
        "--nmax",
        "1",
    ]);
    assert_eq!(code(&low), 2);
}

#[test]
fn exp_convergence_csv() {
    let out = rss(&[
        "--format",
        "csv",
        "exp",
        "convergence",
        "--space",
        "spaces/sup2.json",
        "--series",
        "series/x1x2.json",
        "--nmax",
        "6",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,level_norm,best_lower,width"));
    assert_eq!(lines.next(), Some("2,1/2,1/4,1/4"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn exp_laws_pass() {
    let out = rss(&[
        "exp",
        "laws",
        "--space",
        "spaces/skew2.json",
        "--degree",
        "3",
        "--nmax",
        "3",
        "--trials",
        "3",
        "--lifts",
        "5",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn proof_check_and_interpret() {
    for entry in std::fs::read_dir(corpus().join("proofs")).unwrap() {
        let path = entry.unwrap().path();
        let out = rss(&["proof", "check", "--proof", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", path.display());
    }

    let out = rss(&[
        "--format",
        "json",
        "proof",
        "interpret",
        "--proof",
        "proofs/cut_ax.proof",
        "--bindings",
        "bindings.json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["norm_upper"]["exact"], "1");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.proof");
    std::fs::write(&bad, "(cut (ax :formula \"A\") (ax :formula \"B\"))\n").unwrap();
    let out = rss(&["proof", "check", "--proof", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    std::fs::write(&bad, "(cut (ax :formula \"A\")\n").unwrap();
    let out = rss(&["proof", "check", "--proof", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn size_guard_refusal_names_the_guard() {
    let out = Command::new(env!("CARGO_BIN_EXE_rss"))
        .current_dir(corpus())
        .env("RSS_SIZE_GUARD", "2")
        .args([
            "space",
            "combine",
            "--op",
            "tensor",
            "--space",
            "spaces/sup2.json",
            "--space",
            "spaces/sum3.json",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("polar_vertices"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&rss(&["bogus"])), 2);
    assert_eq!(code(&rss(&["norm", "--space", "spaces/skew2.json"])), 2);
}
