use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetrablock"))
        .args(args)
        .arg("--no-timestamp")
        .output()
        .expect("run tetrablock")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn c(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn member_at_the_origin() {
    let out = run(&["member", "E", "0,0", "0,0", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["defining"], -1.0);
    assert_eq!(v["result"]["member"], true);
    assert_eq!(v["command"], "member");
    assert!(v.get("timestamp").is_none());
}

#[test]
fn member_outside_still_exits_zero() {
    let out = run(&["member", "g2", "3,0", "0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["member"], false);
}

#[test]
fn negative_coordinates_and_trailing_flags() {
    let out = run(&["member", "E", "-0.5,0", "-0.1,-0.2", "0,0", "--omega", "-0.5,0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(c(&v["result"]["point"][1]), (-0.1, -0.2));
    assert_eq!(c(&v["result"]["images"]["omega"]), (-0.5, 0.5));
}

#[test]
fn separate_examples() {
    let v = json(&run(&["separate", "2,0", "0,0", "0,0"]));
    let h = &v["result"]["hyperplane"];
    let coeffs: Vec<_> = (0..3).map(|i| c(&h["coeffs"][i])).collect();
    assert_eq!(coeffs, vec![(-2.0, 0.0), (-2.0, 0.0), (1.0, 0.0)]);
    assert_eq!(c(&h["constant"]).0, -4.0);

    let v = json(&run(&["separate", "0,0", "0,0", "1,0"]));
    let h = &v["result"]["hyperplane"];
    let (a, b) = (c(&h["coeffs"][0]), c(&h["coeffs"][2]));
    assert!((a.0 - 0.0).abs() < 1e-12 && (a.1 + 1.0).abs() < 1e-12 && b == (1.0, 0.0));
    assert_eq!(c(&h["constant"]).0, 1.0);
}

#[test]
fn separate_inside_point_exits_one() {
    let out = run(&["separate", "0,0", "0,0", "0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["inside"], true);
}

#[test]
fn classify_a_corner() {
    let v = json(&run(&["classify", "1,0", "1,0", "1,0"]));
    let k = &v["result"]["classification"];
    assert_eq!(k["variant"], "NonSmoothBoundary");
    assert_eq!(k["case"], "RR1");
}

#[test]
fn gamma_corner_of_g2rho() {
    let out = run(&[
        "gamma",
        "--domain",
        "G2RHO",
        "--rho",
        "0.5",
        "1.5,0",
        "0.5,0",
        "--samples",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["set"]["variant"], "RatioPredicate");
    let level = &v["result"]["members"][0];
    assert_eq!(c(&level["class"][0]), (0.0, 0.0));
    assert_eq!(level["misses"], true);
}

#[test]
fn gamma_one_r_r() {
    let v = json(&run(&["gamma", "1,0", "0.5,0", "0.5,0", "--samples", "3"]));
    assert_eq!(v["result"]["set"]["set"]["variant"], "OmegaFamily");
    for m in v["result"]["members"].as_array().unwrap() {
        assert_eq!(m["misses"], true);
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--suite", "lemma9"][..],
        &["member", "E", "0,0", "0,0"],
        &["member", "E", "x", "0,0", "0,0"],
        &["member", "G2RHO", "0,0", "0,0"],
        &["member", "G2RHO", "0,0", "0,0", "--rho", "1.5"],
        &["classify", "0,0", "0,0", "0,0", "--tol", "0"],
        &["scan", "E", "--res", "8"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn csv_output_is_key_value() {
    let out = run(&["member", "E", "0,0", "0,0", "0,0", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("key,value"));
    assert!(text.lines().any(|l| l == "result.member,true"));
}

#[test]
fn slice_writes_three_files() {
    let dir = std::env::temp_dir().join(format!("tetrablock-slice-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let prefix = dir.join("s");
    let prefix = prefix.to_str().unwrap();
    let out = run(&[
        "slice",
        "CONTROL",
        "--base",
        "0,0",
        "0.05,0.02",
        "--dir",
        "0,0",
        "1,0",
        "--out",
        prefix,
        "--res",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["passes"], false);
    assert_eq!(v["result"]["topology"]["significant_holes"], 1);
    for ext in ["pgm", "csv", "json"] {
        assert!(dir.join(format!("s.{ext}")).exists(), "{ext}");
    }
    let pgm = std::fs::read(dir.join("s.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn scan_exit_codes() {
    let clean = run(&["scan", "POLYDISC", "--lines", "50", "--res", "64"]);
    assert_eq!(clean.status.code(), Some(0));
    let control = run(&["scan", "CONTROL", "--lines", "100", "--res", "64"]);
    assert_eq!(control.status.code(), Some(1));
    assert!(!json(&control)["result"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn verify_single_suite_is_deterministic() {
    let a = run(&["verify", "--suite", "thm2", "--seed", "7"]);
    let b = run(&["verify", "--suite", "thm2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["result"]["passed"], true);
}
