use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nckernel::MPoly;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nckernel"));
    c.env_remove("NCKERNEL_NMAX");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn appendix_matches_golden_files() {
    for n in 5..=8 {
        let out = run(&["appendix", "--n", &n.to_string()]);
        assert!(out.status.success());
        let expected = fs::read(golden(&format!("appendix_n{n}.json"))).unwrap();
        assert_eq!(out.stdout, expected, "n = {n}");
    }
}

#[test]
fn appendix_five_is_the_single_term() {
    let v = stdout_json(&run(&["appendix", "--n", "5"]));
    let got: MPoly = v["discrepancy"].as_str().unwrap().parse().unwrap();
    assert_eq!(got, "-1/12*rx2*ry2".parse().unwrap());
}

#[test]
fn antipode_matches_golden_files() {
    let cases = [
        ("{1}{2}{3}{4}", "efficient", "antipode_0_4_efficient.json"),
        ("{1}{2}{3}", "efficient", "antipode_0_3_efficient.json"),
        ("{1,4}{2}{3}", "chains", "antipode_1-4_2_3_chains.json"),
        ("{1}{2,3}{4}{5}", "bogoliubov", "antipode_1_2-3_4_5_bogoliubov.json"),
    ];
    for (p, method, file) in cases {
        let out = run(&["hopf", "antipode", p, "--method", method]);
        assert!(out.status.success());
        assert_eq!(out.stdout, fs::read(golden(file)).unwrap(), "{p} {method}");
    }
}

#[test]
fn antipode_methods_agree_on_terms() {
    let terms = |method: &str, side: &str| {
        let v = stdout_json(&run(&["hopf", "antipode", "{1}{2}{3}{4}", "--method", method, "--side", side]));
        v["terms"].clone()
    };
    let reference = terms("efficient", "left");
    assert_eq!(reference.as_array().unwrap().len(), 25);
    assert_eq!(terms("chains", "left"), reference);
    assert_eq!(terms("bogoliubov", "left"), reference);
    assert_eq!(terms("bogoliubov", "right"), reference);
}

#[test]
fn tn_sequence() {
    let out = run(&["hopf", "tn", "--limit", "9"]);
    assert!(out.status.success());
    let v: Vec<u64> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, vec![1, 1, 4, 25, 206, 2060, 23920, 314065, 4582300]);
}

#[test]
fn u_q_and_u_minus_q_convolve_to_unit() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(&["fn", "named", "u", "--param", "q=q", "--nmax", "5"]);
    let b = run(&["fn", "named", "u", "--param", "q=-q", "--nmax", "5"]);
    let pa = write(dir.path(), "a.json", &String::from_utf8(a.stdout).unwrap());
    let pb = write(dir.path(), "b.json", &String::from_utf8(b.stdout).unwrap());
    let v = stdout_json(&run(&["fn", "convolve", &pa, &pb]));
    assert_eq!(v["n_max"], 5);
    assert_eq!(v["z"], serde_json::json!({}));

    let e = stdout_json(&run(&["fn", "named", "e", "--nmax", "5"]));
    assert_eq!(v, e);
}

#[test]
fn inverse_of_free_kernel_is_mobius() {
    let dir = tempfile::tempdir().unwrap();
    let f = run(&["fn", "named", "fc-m", "--nmax", "4"]);
    let pf = write(dir.path(), "f.json", &String::from_utf8(f.stdout).unwrap());
    let v = stdout_json(&run(&["fn", "inverse", &pf]));
    assert_eq!(v["ring"], "rational");
    assert_eq!(v["z"]["{1}{2}"], "-1");
    assert_eq!(v["z"]["{1}{2}{3}"], "2");
    assert_eq!(v["z"]["{1}{2}{3}{4}"], "-5");
}

#[test]
fn sequence_commands() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"ring":"mpoly","a":["1","m2","m3","m4"]}"#);
    let b = stdout_json(&run(&["seq", "transform", "--from", "moments", "--to", "boolean", &m]));
    assert_eq!(b["a"][1], "m2 - 1");
    let pb = write(dir.path(), "b.json", &b.to_string());
    let back = stdout_json(&run(&["seq", "transform", "--from", "boolean", "--to", "moments", &pb]));
    assert_eq!(back["a"], serde_json::json!(["1", "m2", "m3", "m4"]));

    let f = run(&["fn", "named", "bc-m", "--nmax", "4"]);
    let pf = write(dir.path(), "f.json", &String::from_utf8(f.stdout).unwrap());
    let acted = stdout_json(&run(&["seq", "act", &pb, &pf]));
    assert_eq!(acted["a"], back["a"]);

    let x = write(dir.path(), "x.json", r#"{"a":["1","x2"]}"#);
    let y = write(dir.path(), "y.json", r#"{"a":["1","y2"]}"#);
    let xy = stdout_json(&run(&["seq", "freemul", &x, &y]));
    let k2: MPoly = xy["a"][1].as_str().unwrap().parse().unwrap();
    assert_eq!(k2, "x2 + y2".parse().unwrap());

    let t = stdout_json(&run(&["seq", "transform", "--from", "t-boolean:s", "--to", "t-boolean:s", &m]));
    assert_eq!(t["a"][3], "m4");
}

#[test]
fn nc_commands() {
    let v = stdout_json(&run(&["nc", "enumerate", "-n", "4"]));
    assert_eq!(v["count"], 14);
    let v = stdout_json(&run(&["nc", "enumerate", "-n", "3", "--order", "leq"]));
    assert_eq!(v["pairs"].as_array().unwrap().len(), 7);
    // interval partitions below 1_3, and 0_3 below every two-block element
    let v = stdout_json(&run(&["nc", "enumerate", "-n", "3", "--order", "sq"]));
    assert_eq!(v["pairs"].as_array().unwrap().len(), 6);
    let v = stdout_json(&run(&["nc", "kreweras", "{1,2,3,4}"]));
    assert_eq!(v["kreweras"], "{1}{2}{3}{4}");
    let v = stdout_json(&run(&["nc", "kreweras", "{1}{2}{3}", "--within", "{1,2}{3}"]));
    assert_eq!(v["kreweras"], "{1,2}{3}");
}

#[test]
fn output_is_deterministic() {
    let a = run(&["fn", "named", "mc-m", "--nmax", "5"]);
    let b = run(&["fn", "named", "mc-m", "--nmax", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = run(&["nc", "kreweras", "{1,3}{2,4}"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 5"));

    let out = run(&["hopf", "antipode", "{1,2}{3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position"));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"a\": [\"1\", \"x2 +\"]}");
    let out = run(&["seq", "freemul", &bad, &bad]);
    assert_eq!(out.status.code(), Some(2));

    let broken = write(dir.path(), "broken.json", "{\"a\": [");
    let out = run(&["fn", "inverse", &broken]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let out = run(&["appendix", "--n", "11"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain error"));

    let out = run(&["hopf", "antipode", "{1,2,3}"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["fn", "named", "u", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["check", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cap_follows_environment() {
    let out = bin().env("NCKERNEL_NMAX", "3").args(["nc", "enumerate", "-n", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin().env("NCKERNEL_NMAX", "3").args(["nc", "enumerate", "-n", "3"]).output().unwrap();
    assert!(out.status.success());
}

#[test]
fn check_passes_and_reports_failures() {
    let v = stdout_json(&run(&["check", "--suite", "tn", "--nmax", "6"]));
    assert!(v[0]["results"].as_array().unwrap().iter().all(|r| r["passed"] == true));

    let out = run(&["check", "--suite", "normalizer", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("first failed property: normalizer/theta_3_theta_4"), "{err}");
}
