mod common;

use std::process::Command;

use common::*;
use monoweyl::{parse_operator, parse_polynomial, Mode};
use proptest::prelude::*;

fn monoweyl(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_monoweyl"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = monoweyl(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn golden_text() {
    assert_eq!(ok(&["member", "--set", "0,1,3", "--op", "D^2"]), "true\n");
    assert_eq!(ok(&["member", "--set", "0,1,3", "--op", "D"]), "false\n");
    assert_eq!(ok(&["factor", "--op", "x^2*D^2 + x*D"]), "(x*D)^2\n");
    assert_eq!(ok(&["normal", "--op", "(x*D - 1)*(x*D - 3)"]), "x^2*D^2 - 3*x*D + 3\n");
    assert_eq!(ok(&["apply", "--op", "x^4*D^2 - 2*x^3*D", "--poly", "x^3"]), "0\n");
    assert_eq!(ok(&["imset", "--set", "0,1,3", "--degree", "1"]), "1,3\n");
    assert_eq!(
        ok(&["minimal", "--set", "0,1,3", "--degree", "2"]),
        "x^4*D^2 - 2*x^3*D\nx^2*(x*D)*(x*D - 3)\n"
    );
    assert_eq!(ok(&["gauge", "--op", "x*D", "--shift", "2"]), "x*D + 2\n");
    assert_eq!(
        ok(&["--rational", "chvar", "--op", "x*D", "--scale", "2", "--set", "0,2"]),
        "2*x*D\n0,1\n"
    );
    assert_eq!(ok(&["realize", "--poly", "1; x + x^2"]), "x^2*D + 1\n");
    assert_eq!(ok(&["assoc-graded", "--op", "x^2*D + D + 5"]), "x^2*D\n");
    assert_eq!(ok(&["check-filtered", "--op", "D", "--poly", "1; x"]), "true\n");
    assert_eq!(
        ok(&["chains", "--set", "0,2,5,7"]),
        "step 2: {7,5} | {2,0}\nstep 5: {7,2} | {5,0}\n"
    );
}

#[test]
fn golden_json() {
    let out = ok(&["classify", "--set", "0,1,3", "--json"]);
    assert!(out.starts_with(r#"{"mode":"natural","set":[0,1,3],"case":"A.b","parameters":8,"splittings":[{"step":1,"#));
    assert!(out.contains(r#""case":"A.b","parameters":8"#));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 8);
    assert_eq!(v["basis"][0]["degree"], 3);

    let out = ok(&["--json", "--rational", "imset", "--set", "0,1/2", "--degree", "1/2"]);
    assert_eq!(out, "{\"mode\":\"rational\",\"set\":[0,\"1/2\"],\"degree\":\"1/2\",\"imset\":[\"1/2\"]}\n");
    let out = ok(&["member", "--json", "--set", "0,1,3", "--op", "D^2"]);
    assert_eq!(out, "{\"mode\":\"natural\",\"set\":[0,1,3],\"op\":\"D^2\",\"member\":true}\n");
}

#[test]
fn exit_statuses() {
    assert_eq!(monoweyl(&["factor", "--op", "x*"]).0, 2);
    assert_eq!(monoweyl(&["factor"]).0, 2);
    assert_eq!(monoweyl(&["nonsense"]).0, 2);
    assert_eq!(monoweyl(&["member", "--set", "0,1,3", "--op", "x^(1/2)*D"]).0, 1);
    assert_eq!(monoweyl(&["classify", "--set", "1,2,4"]).0, 1);
    let (code, out, _) = monoweyl(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("D = d/dx"));
}

proptest! {
    #[test]
    fn print_parse_round_trip(t in seeded(any_op)) {
        let back = parse_operator(&t.to_string(), t.mode()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.to_string(), t.to_string());
    }

    #[test]
    fn polynomial_round_trip(t in seeded(rational_op)) {
        let p = t.apply(&monoweyl::GenPolynomial::x_pow(monoweyl::exactnum::rat(7, 3)));
        prop_assert_eq!(parse_polynomial(&p.to_string(), Mode::Rational).unwrap(), p);
    }

    #[test]
    fn parser_never_panics(s in "[xD0-9+*^()/ -]{0,24}") {
        let _ = parse_operator(&s, Mode::Rational);
        let _ = parse_polynomial(&s, Mode::Natural);
    }
}
