use std::process::{Command, Output};

use mixed_frame::frames::PairDocument;
use serde_json::Value;

fn mixfp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixfp"))
        .args(args)
        .output()
        .expect("run mixfp")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

#[test]
fn gen_random_is_deterministic() {
    let args = [
        "gen", "random", "--field", "R", "--d", "2", "--N", "4", "--seed", "1",
    ];
    let a = mixfp(&args);
    let b = mixfp(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = mixfp(&[
        "gen", "random", "--field", "R", "--d", "2", "--N", "4", "--seed", "2",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn retracted_random_pair_reloads_on_constraint() {
    let out = mixfp(&[
        "gen", "random", "--alpha", "1,1,1", "--field", "R", "--d", "2", "--N", "3", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (pair, alpha) = PairDocument::parse(std::str::from_utf8(&out.stdout).unwrap())
        .unwrap()
        .to_pair()
        .unwrap();
    let worst = pair
        .constraint_residual(&alpha.unwrap())
        .unwrap()
        .into_iter()
        .fold(0.0, f64::max);
    assert!(worst <= 1e-15, "{worst}");
}

#[test]
fn complex_alpha_needs_complex_field() {
    let out = mixfp(&[
        "gen", "random", "--alpha", "1+1i,1", "--field", "R", "--d", "1", "--N", "2", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = mixfp(&[
        "gen", "random", "--alpha", "1+1i,1", "--field", "C", "--d", "1", "--N", "2", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_reproducible_and_echo_tolerances() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mix.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        mixfp(&["gen", "fixture", "FX-MIX", "--output", p])
            .status
            .code(),
        Some(0)
    );
    for args in [
        vec!["potential", p],
        vec!["check", p, "--tol", "1e-9"],
        vec!["decompose", p, "--cluster-tol", "1e-5"],
        vec!["corollary", p],
    ] {
        let a = mixfp(&args);
        let b = mixfp(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v = report(&a);
        assert_eq!(v["command"], args[0]);
        assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
        assert!(v["tolerances"].is_object());
    }
    let v = report(&mixfp(&["check", p, "--tol", "1e-9"]));
    assert_eq!(v["tolerances"]["tol"], 1e-9);
    let v = report(&mixfp(&["decompose", p, "--cluster-tol", "1e-5"]));
    assert_eq!(v["tolerances"]["cluster_tol"], 1e-5);
}

#[test]
fn decompose_embeds_critical_report_when_not_critical() {
    let out = mixfp(&[
        "gen", "random", "--alpha", "1,1,1", "--field", "R", "--d", "2", "--N", "3", "--seed", "4",
    ]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let out = mixfp(&["decompose", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = report(&out);
    assert_eq!(v["outputs"]["critical_report"]["is_critical"], false);
}

#[test]
fn potential_reports_both_forms() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d1.json");
    let p = path.to_str().unwrap();
    mixfp(&["gen", "fixture", "FX-D1", "--output", p]);
    let out = mixfp(&["potential", p]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("direct") && text.contains("trace"), "{text}");
}

#[test]
fn optimize_writes_final_pair_that_passes_corollary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dual.json");
    let p = path.to_str().unwrap();
    let out = mixfp(&[
        "optimize",
        "--alpha",
        "0.5,0.5,0.5,0.5",
        "--field",
        "R",
        "--d",
        "2",
        "--mode",
        "critical",
        "--seed",
        "3",
        "--restarts",
        "8",
        "--output",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["status"], "OK");
    let out = mixfp(&["corollary", p]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"mode": "CRITICAL_SEARCH", "seed": 7, "max_iters": 1}"#,
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let base = [
        "optimize", "--alpha", "1,1,1", "--field", "R", "--d", "2", "--config", c,
    ];
    assert_eq!(mixfp(&base).status.code(), Some(1));
    let mut more = base.to_vec();
    more.extend(["--max-iters", "5000"]);
    assert_eq!(mixfp(&more).status.code(), Some(0));
    std::fs::write(&cfg, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(mixfp(&base).status.code(), Some(2));
}
