use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebcurve")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn input_file(name: &str, text: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn gen_examples() {
    let out = run(&["gen", "-d", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["results"]["node_count"], 4);

    let out = run(&["gen", "-d", "3", "--sign", "minus"]);
    let v = json(&out);
    let f = &v["results"]["factorization"];
    assert_eq!(f["constant"], "4");
    let texts: Vec<&str> = f["factors"].as_array().unwrap().iter().map(|x| x["text"].as_str().unwrap()).collect();
    assert_eq!(texts, ["x - y", "x^2 + x*y + y^2 - 3/4"]);

    let out = run(&["gen", "-d", "2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("d >= 3 required"));
}

#[test]
fn hilbert_examples() {
    let t4 = input_file("t4.txt", "8*x^4+8*y^4-8*x^2*z^2-8*y^2*z^2+2*z^4\n");
    let out = run(&["hilbert", t4.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["results"]["numerator"], serde_json::json!([1, 0, 0, -3, 0, 1, 3, -2]));
    assert_eq!(v["results"]["tau"], 4);

    let xyz = input_file("xyz.txt", "x*y*z");
    let v = json(&run(&["hilbert", xyz.to_str().unwrap(), "--kmax", "6"]));
    assert_eq!(v["results"]["dims"], serde_json::json!([1, 3, 3, 3, 3, 3, 3]));

    let nh = input_file("nonhomogeneous.txt", "x^2 + y");
    assert_eq!(code(&run(&["hilbert", nh.to_str().unwrap()])), 3);
    let bad = input_file("bad.txt", "x^2 +* y");
    assert_eq!(code(&run(&["hilbert", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["hilbert", "/nonexistent/curve.txt"])), 2);
}

#[test]
fn rational_test_examples() {
    let v = json(&run(&["rational-test", "-d", "6"]));
    assert_eq!(v["results"]["verdict"], "all_rational");

    // (x + y + z)(x^3 + y^3 + z^3), expanded
    let lf = input_file(
        "line_fermat.txt",
        "x^4 + x*y^3 + x*z^3 + x^3*y + y^4 + y*z^3 + x^3*z + y^3*z + z^4",
    );
    let out = run(&["rational-test", lf.to_str().unwrap(), "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["results"];
    assert_eq!(r["verdict"], "has_irrational_component");
    assert_eq!(r["genus_sum"], 1);
    assert_eq!(r["tau"], 3);

    let nr = input_file("nonreduced.txt", "x^2*y");
    let out = run(&["rational-test", nr.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["results"]["verdict"], "not_reduced");

    let conic = input_file("conic.txt", "x^2 + y*z");
    assert_eq!(code(&run(&["rational-test", conic.to_str().unwrap()])), 3);
}

#[test]
fn verify_examples() {
    let out = run(&["verify", "-d", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["results"]["passed"], true);

    let v = json(&run(&["verify", "-d", "5"]));
    let items = v["results"]["items"].as_array().unwrap();
    assert!(items.iter().all(|i| i["status"] == "pass"));
    let syz = items.iter().find(|i| i["name"] == "syzygy_resolution").unwrap();
    assert_eq!(syz["detail"]["first_syzygy_degree"], 3);
    assert_eq!(syz["detail"]["first_syzygy_count"], 2);

    let out = run(&["verify", "-d", "11"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn syzygy_and_interp() {
    let v = json(&run(&["syzygy", "-d", "4", "--rmax", "5"]));
    let r = &v["results"];
    assert_eq!(r["first_syzygy_degree"], 2);
    for rec in r["degrees"].as_array().unwrap() {
        assert_eq!(rec["syzygy_dim"], rec["expected_from_hilbert"]);
    }
    assert_eq!(r["resolution"]["passed"], true);

    let v = json(&run(&["interp", "-d", "5"]));
    assert_eq!(v["results"]["max_injective"], 2);
    assert_eq!(v["results"]["min_surjective"], 3);
    assert_eq!(v["results"]["surjective_at_nodes"], true);
}

#[test]
fn deterministic_output() {
    let lf = input_file("arrangement.txt", "x*y*z*x + x*y*z*y + x*y*z*z");
    let a = run(&["rational-test", lf.to_str().unwrap(), "--seed", "3"]);
    let b = run(&["rational-test", lf.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["rational-test", lf.to_str().unwrap(), "--seed", "3", "--strategy", "fifo"]);
    assert_eq!(a.stdout, c.stdout);
    assert!(json(&a).get("timings").is_none());
    let t = json(&run(&["rational-test", lf.to_str().unwrap(), "--timings"]));
    assert!(t["timings"].is_object());
}

#[test]
fn text_format_and_out_file() {
    let out = run(&["hilbert", "-d", "4", "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("results.numerator: [1, 0, 0, -3, 0, 1, 3, -2]\n"));
    assert!(s.contains("command: hilbert\n"));

    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("gen5.json");
    let out = run(&["gen", "-d", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["results"]["node_count"], 8);
}

#[test]
fn canonical_json_keys_are_sorted() {
    let out = run(&["gen", "-d", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(top, ["command", "inputs", "results", "seed"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    for l in v["results"]["lambdas"].as_array().unwrap() {
        assert!(l["value"]["coeffs"].as_array().unwrap().iter().all(|c| c.is_string()));
    }
}
