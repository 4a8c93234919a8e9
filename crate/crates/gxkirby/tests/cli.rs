use std::process::Command;

use gxkirby::cli::InvariantOut;
use gxkirby::diagram::DiagramReport;
use gxkirby::gxcat::{fixture, ValidationReport};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gxkirby"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let o = bin().args(args).output().unwrap();
    (
        o.status.code().unwrap(),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

#[test]
fn validate_shipped_category() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("semion.json");
    std::fs::write(&p, fixture("semion").unwrap().to_json_string()).unwrap();
    let (code, out, _) = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("pass"));
    let (code, out, _) = run(&["validate", "--format", "json", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r: ValidationReport = serde_json::from_str(&out).unwrap();
    assert!(r.passed());
}

#[test]
fn broken_pentagon_fails_with_witness() {
    let text = fixture("fibonacci").unwrap().to_json_string();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let f = v["F"].as_array_mut().unwrap();
    let entry = f
        .iter_mut()
        .find(|e| e["idx"].as_array().is_some_and(|l| l.iter().all(|x| x == 1)))
        .expect("an all-τ F entry");
    let coeffs = entry["value"]["coeffs"].as_array_mut().unwrap();
    coeffs[0] = serde_json::json!("7");
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, out, _) = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("pentagon"), "{out}");
}

#[test]
fn missing_and_malformed_inputs_exit_2() {
    assert_eq!(run(&["validate", "/no/such/file.json"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("junk.json");
    std::fs::write(&p, "{ not json").unwrap();
    assert_eq!(run(&["validate", p.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["invariant", "-c", "nope", "-m", "s4"]).0, 2);
    assert_eq!(run(&["invariant", "-c", "semion", "-m", "nope"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn invariant_values() {
    let (code, out, _) = run(&["invariant", "-c", "vect_z3_z2_twisted", "-m", "s1_x_s1_x_s2"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "I = 18"), "{out}");
    let (_, out, _) = run(&["invariant", "-c", "semion", "-m", "cp2_plus"]);
    assert!(out.contains("I = (1+ζ₄)/2"), "{out}");
    assert!(out.contains("≈ 0.5+0.5i"), "{out}");
    let (_, out, _) = run(&["invariant", "-c", "fibonacci", "-m", "s4"]);
    assert!(out.lines().any(|l| l == "I = 1"));
}

#[test]
fn invariant_json_round_trips_and_echo_is_close() {
    let (code, out, _) = run(&[
        "invariant",
        "--format",
        "json",
        "--keep-contributions",
        "-c",
        "fibonacci",
        "-m",
        "s2_x_s2",
    ]);
    assert_eq!(code, 0);
    let r: InvariantOut = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap().trim(), out.trim());
    let z = r.value.to_complex();
    assert!((z.re - r.approx[0]).abs() < 1e-9 && (z.im - r.approx[1]).abs() < 1e-9);
    assert_eq!(r.contributions.unwrap().len(), 1);
}

#[test]
fn threads_env_does_not_change_output() {
    let args = ["invariant", "-c", "vect_s3_s3", "-m", "s1_x_s1_x_s2", "--keep-contributions"];
    let a = bin().args(args).env("GXKIRBY_THREADS", "1").output().unwrap();
    let b = bin().args(args).env("GXKIRBY_THREADS", "4").output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table2_all_rows_match() {
    let (code, out, _) = run(&["table2"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("MISMATCH"));
    assert!(out.contains("n/a (faithful grading required)"));
}

#[test]
fn dims_examples() {
    let (_, out, _) = run(&["dims", "-c", "vect_z3_z2_trivial"]);
    assert!(out.contains("dim Z(S³) = 1") && out.contains("dim Z(S¹×S²) = 6"), "{out}");
    let (_, out, _) = run(&["dims", "-c", "vect_z3_z2_twisted"]);
    assert!(out.contains("dim Z(S¹×S²) = 3"));
    let (_, out, _) = run(&["dims", "-c", "semion"]);
    assert!(out.contains("dim Z(S¹×S²) = 1"));
}

#[test]
fn dw_reports_presentation_and_count() {
    let (code, out, _) = run(&["dw", "-c", "vect_z3_z2_trivial", "-m", "s1_x_s1_x_s2"]);
    assert_eq!(code, 0);
    assert!(out.contains("⟨A,B | ε, ABA⁻¹B⁻¹⟩"));
    assert!(out.contains("|Hom(π₁, G)| = 4"));
    assert!(out.contains("holds"));
}

#[test]
fn export_then_validate_and_regress() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["export", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let m = dir.path().join("manifolds/s1_x_s1_x_s2.json");
    let (code, out, _) = run(&["validate", "--format", "json", m.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r: DiagramReport = serde_json::from_str(&out).unwrap();
    assert!(r.passed());
    let f = dir.path().join("fixtures/vect_z3_z2_twisted.json");
    let (_, out, _) = run(&["invariant", "-c", f.to_str().unwrap(), "-m", m.to_str().unwrap()]);
    assert!(out.lines().any(|l| l == "I = 18"), "{out}");

    let script = dir.path().join("script.json");
    std::fs::write(
        &script,
        r#"[{"kind":"slide33","a":"A","b":"B"},{"kind":"cancel23","index":0,"pos":0},{"kind":"reverse2","h2":"b"}]"#,
    )
    .unwrap();
    let (code, out, err) = run(&["moves-regress", "-m", "s1_x_s1_x_s2", "-s", script.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("CHANGED"));
    std::fs::write(&script, r#"[{"kind":"isotopyR2","index":0,"pos":0,"over":true}]"#).unwrap();
    assert_eq!(run(&["moves-regress", "-m", "s4", "-s", script.to_str().unwrap()]).0, 1);
}
