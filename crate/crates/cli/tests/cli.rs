use std::path::{Path, PathBuf};
use std::process::Command;

use cubicgap_certify::GapCertificate;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubicgap"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn spectra_of_fixtures() {
    let k4 = fixture("k4.json");
    assert_eq!(run(&["spectrum", k4.to_str().unwrap()]), (0, "-1,-1,-1,3\n".into()));
    let b2 = fixture("b2.json");
    assert_eq!(run(&["spectrum", b2.to_str().unwrap()]), (0, "-1,2,2,3\n".into()));
}

#[test]
fn bad_input_exits_with_4() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"n": 4, "edges": [], "name": "empty"}"#).unwrap();
    assert_eq!(run(&["spectrum", empty.to_str().unwrap()]).0, 4);
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{").unwrap();
    assert_eq!(run(&["spectrum", broken.to_str().unwrap()]).0, 4);
    assert_eq!(run(&["capacity", "--set", "disk:1"]).0, 4);
    assert_eq!(run(&["no-such-command"]).0, 4);
}

#[test]
fn refuted_audit_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, _) = run(&["audit", "--family", "w_b", "--target", "(2.83,3)", "--out", out]);
    assert_eq!(code, 2);
    assert!(dir.path().join("audit.json").exists());
    assert_eq!(run(&["audit", "--family", "w_b", "--target", "(-1,1)"]).0, 0);
}

#[test]
fn certify_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout) = run(&["certify", "--target", "(-1,1)", "--exact", "--out", out]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("eigenvalues 1,1,-1,-1"));
    let cert = GapCertificate::load(dir.path().join("certificate.json")).unwrap();
    cert.reverify().unwrap();
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("certify.json")).unwrap()).unwrap();
    assert_eq!(summary["catalog_hash"].as_str().unwrap().len(), 64);
    assert!(summary["tool_version"].as_str().unwrap().starts_with("cubicgap "));
}

#[test]
fn capacity_of_level_four() {
    let (code, stdout) = run(&["capacity", "--set", "level:4"]);
    assert_eq!(code, 0);
    let estimate: f64 = stdout.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((estimate - 1.5f64.powf(1.0 / 16.0)).abs() < 0.02);
}

#[test]
fn witness_inside_a_catalogued_gap() {
    let (code, stdout) = run(&["witness", "--xi", "-1.5", "--delta", "0.05", "--order", "4"]);
    assert_eq!(code, 0);
    assert!(stdout.contains(" k 0 "), "{stdout}");
}

#[test]
fn tmap_classifies_every_eigenvalue() {
    let k4 = fixture("k4.json");
    let (code, stdout) = run(&["tmap", k4.to_str().unwrap(), "-k", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("108 vertices, 108 of 108"));
    assert_eq!(run(&["tmap", k4.to_str().unwrap(), "-k", "6"]).0, 4);
}

#[test]
fn outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = dir.path().to_str().unwrap();
        assert_eq!(run(&["search", "--order", "4", "--rank", "1", "--grid", "64", "--out", out]).0, 0);
        assert_eq!(run(&["bands", "wbar_a", "--grid", "64", "--exact", "--out", out]).0, 0);
        assert_eq!(run(&["bound", "--random", "40", "--seed", "5", "--lambda", "0.7", "--out", out]).0, 0);
    }
    for name in ["catalog.jsonl", "search.json", "bands.csv", "gaps.json", "bound.json"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs");
    }
}
