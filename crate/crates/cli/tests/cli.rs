use std::process::{Command, Output};

use addix::{Field, LinearizedPoly, Poly, Subspace};
use serde_json::Value;

fn addix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_addix"))
        .args(args)
        .env_remove("ADDIX_MAX_Q")
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = addix(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_kind(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is a JSON error");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn index_of_x_cubed_over_f8() {
    let v = json_ok(&["index", "--field", "2^3", "--poly", "x^3"]);
    assert_eq!(v["index"], 3);
    assert_eq!(v["L"], "x");
    assert_eq!(v["M"], "0");
    assert_eq!(v["kernel"], serde_json::json!([]));
    let b = json_ok(&["index", "--field", "2^3", "--poly", "x^3", "--method", "brute"]);
    assert_eq!(b["index"], 3);
}

#[test]
fn decomposition_over_f9() {
    let v = json_ok(&["decompose", "--field", "3^2", "--poly", "(x^3-x)^2+x"]);
    assert_eq!(v["index"], 1);
    assert_eq!(v["L"], "x^3-x");
    assert_eq!(v["f"], "x^2");
    assert_eq!(v["M"], "x");
}

#[test]
fn emitted_objects_round_trip() {
    let v = json_ok(&["decompose", "--field", "3^2", "--poly", "(x^3-x)^2+[4]*x^3+x"]);
    let f = Field::parse(v["field"].as_str().unwrap()).unwrap();
    let p = Poly::parse(&f, v["poly"].as_str().unwrap()).unwrap();
    let outer = Poly::parse(&f, v["f"].as_str().unwrap()).unwrap();
    let l = LinearizedPoly::from_poly(&Poly::parse(&f, v["L"].as_str().unwrap()).unwrap()).unwrap();
    let m = LinearizedPoly::from_poly(&Poly::parse(&f, v["M"].as_str().unwrap()).unwrap()).unwrap();
    assert_eq!(p, &outer.compose(&l.to_poly()) + &m.to_poly());
    let kernel: Vec<_> = v["kernel"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| f.elt(c.as_u64().unwrap() as u32))
        .collect();
    let u = Subspace::span(&f, &kernel);
    assert_eq!(u.basis(), kernel.as_slice());
    assert!(u.elements().iter().all(|&z| l.eval(z).is_zero()));
    assert_eq!(p.to_string(), v["poly"].as_str().unwrap());
}

#[test]
fn permutation_verbs_agree() {
    let v = json_ok(&["pp-test", "--field", "3^2", "--poly", "(x^3-x)^2+x"]);
    assert_eq!(v["is_pp"], true);
    assert_eq!(v["brute"]["is_pp"], true);
    let v = json_ok(&["pp-test", "--field", "2^3", "--poly", "x^2+x"]);
    assert_eq!(v["is_pp"], false);
    assert!(v["certificate"]["witness"].is_array());

    let inv = json_ok(&["invert", "--field", "3^2", "--poly", "(x^3-x)^2+x"]);
    let f = Field::parse(inv["field"].as_str().unwrap()).unwrap();
    let p = Poly::parse(&f, inv["poly"].as_str().unwrap()).unwrap();
    let q = Poly::parse(&f, inv["inverse"].as_str().unwrap()).unwrap();
    assert!(f.elements().all(|x| q.eval(p.eval(x)) == x));

    let out = addix(&["invert", "--field", "2^3", "--poly", "x^2+x"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "precondition");
}

#[test]
fn value_sets_and_cycles() {
    let v = json_ok(&["valueset", "--field", "2^4", "--poly", "x^2+x"]);
    assert_eq!(v["theorem"]["size"], 8);
    assert_eq!(v["brute"]["size"], 8);

    let v = json_ok(&["cycles", "--field", "2^3", "--poly", "x^3"]);
    assert_eq!(v["cycles"]["1"], 2);
    assert_eq!(v["cycles"]["6"], 1);

    let v = json_ok(&["construct-cycles", "--field", "3^2", "--fixed", "3"]);
    assert_eq!(v["cycles"]["1"], 3);
    assert_eq!(v["cycles"]["3"], 2);
    let out = addix(&["construct-cycles", "--field", "3^2", "--fixed", "4"]);
    assert_eq!(out.status.code(), Some(2));

    let v = json_ok(&["cycles", "--field", "2^2", "--l", "x^2+x", "--f", "x"]);
    assert_eq!(v["predicted"], v["measured"]);
}

#[test]
fn involutions_and_translators() {
    let v = json_ok(&["involution", "--field", "3^2", "--poly", "-x"]);
    assert_eq!(v["is_involution"], true);
    let v = json_ok(&["involution", "--field", "3^2", "--poly", "x^3"]);
    assert_eq!(v["is_involution"], true);
    let v = json_ok(&["involution", "--field", "2^3", "--poly", "x^2"]);
    assert_eq!(v["is_involution"], false);

    let v = json_ok(&[
        "translator",
        "--field",
        "2^2",
        "--g",
        "x^2+x",
        "--u",
        "1",
        "--m",
        "0",
        "--h",
        "x",
    ]);
    assert_eq!(v["translator"], true);
    assert_eq!(v["is_pp"], v["brute"]);
    let v = json_ok(&[
        "translator",
        "--field",
        "3^2",
        "--g",
        "x^3+x",
        "--u",
        "1",
        "--m",
        "[2]*x",
        "--kind",
        "b-linear",
        "--gamma",
        "1",
        "--b",
        "2",
        "--k",
        "1",
    ]);
    assert_eq!(v["translator"], true);
    assert_eq!(v["m_form_ok"], true);
}

#[test]
fn charsum_single_and_sweep() {
    let v = json_ok(&["charsum", "--field", "3^2", "--poly", "(x^3-x)^2+x", "--char", "1"]);
    assert!(v["abs"].as_f64().unwrap() <= v["additive_bound"].as_f64().unwrap() + 1e-9);
    assert_eq!(v["e"], 1);

    let out = addix(&[
        "charsum", "--field", "2^3", "--sweep", "--count", "2", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# addix charsum sweep v1"));
    assert_eq!(
        lines.next(),
        Some("poly_id,poly,j,abs,additive_bound,weil_bound,weil_applicable,trivial_bound")
    );
    assert_eq!(lines.count(), 2 * 6);

    let out = addix(&["charsum", "--field", "2^3", "--poly", "x", "--char", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn same_seed_same_sweep() {
    let run = |seed: &str| addix(&["charsum", "--field", "2^4", "--sweep", "--count", "3", "--seed", seed]).stdout;
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}

#[test]
fn exit_codes() {
    let out = addix(&["index", "--field", "2^3", "--poly", "x^^2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "parse");
    assert_eq!(
        addix(&["index", "--field", "4^2", "--poly", "x"]).status.code(),
        Some(1)
    );
    assert_eq!(
        addix(&["index", "--field", "2^3", "--poly", "x", "--frobnicate"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        addix(&["decompose", "--field", "2^3", "--poly", "x", "--l", "x^3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        addix(&["index", "--field", "2^3", "--poly", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(addix(&["--help"]).status.code(), Some(0));
}

#[test]
fn env_cap_only_lowers() {
    let run = |cap: &str, field: &str| {
        Command::new(env!("CARGO_BIN_EXE_addix"))
            .args(["index", "--field", field, "--poly", "x^3"])
            .env("ADDIX_MAX_Q", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("8", "2^3").status.code(), Some(0));
    let out = run("8", "2^4");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "precondition");
    // a larger value does not lift the built-in cap
    assert_eq!(run("100000000000", "2^21").status.code(), Some(2));
}

#[test]
fn output_formats() {
    let out = addix(&["index", "--field", "2^3", "--poly", "x^3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("\nindex,3\n"));
    let out = addix(&["index", "--field", "2^3", "--poly", "x^3", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("index: 3\n"));
}

#[test]
fn verify_examples_suite() {
    let out = addix(&["verify", "--suite", "10", "--max-q", "64"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["id"], "10");
    assert_eq!(v[0]["passed"], true);
    assert_eq!(addix(&["verify", "--suite", "nope"]).status.code(), Some(1));
}
