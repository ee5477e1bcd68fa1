use std::process::{Command, Output};

use jackpoly::mpoly::MPoly;

fn jackpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jackpoly")).args(args).output().expect("run jackpoly")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_parseable_text() {
    let o = jackpoly(&["compute", "jack-p", "--label", "2,1,0", "--alpha", "1"]);
    assert!(o.status.success());
    let p = MPoly::from_text(stdout(&o).trim()).unwrap();
    assert_eq!(p.nvars(), 3);
    assert_eq!(p.coeff_of(&[1, 1, 1]).to_string(), "2");
}

#[test]
fn compute_rejects_mixed_coefficients() {
    let o = jackpoly(&["compute", "mac-p", "--label", "1,0", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = jackpoly(&["compute", "jack-p", "--label", "2,0", "--alpha", "-1"]);
    assert_eq!(o.status.code(), Some(2), "pole must be an error");
}

#[test]
fn verify_exit_codes_follow_the_verdict() {
    let base = ["verify", "CLUSTER25_1", "--k", "1", "--r", "2", "--s", "2", "--m", "1", "--b", "1"];
    let ok = jackpoly(&base);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("holds"));

    let mut perturbed = base.to_vec();
    perturbed.extend(["--perturb", "--format", "json"]);
    let bad = jackpoly(&perturbed);
    assert_eq!(bad.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_str(&stdout(&bad)).unwrap();
    assert!(json.to_string().contains("fails"));
}

#[test]
fn scan_then_report_reads_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("scan.json");
    std::fs::write(&config, r#"{"entries":[{"id":"PROP1","r":[2],"n":[2],"kappa_max":1}]}"#).unwrap();
    let cache = dir.path().join("cache");
    let cache = cache.to_str().unwrap();
    let o = jackpoly(&["scan", config.to_str().unwrap(), "--cache-dir", cache]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let scanned = stdout(&o);
    let r = jackpoly(&["report", "--cache-dir", cache]);
    assert!(r.status.success());
    let total = |s: &str| s.lines().find(|l| l.starts_with("total")).map(str::to_string);
    assert_eq!(total(&stdout(&r)), total(&scanned));
    assert!(total(&scanned).unwrap().contains("holds"));
}

#[test]
fn report_without_cache_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope");
    let o = jackpoly(&["report", "--cache-dir", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
