//! Exit codes and JSON shapes of the `gshuffle` binary.

use std::process::Command;

use gshuffle::ring::json::RingElementJson;
use gshuffle::shuffle::ShuffleElement;
use serde_json::Value;

fn gshuffle(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gshuffle")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = gshuffle(args);
    (code, serde_json::from_str(&out).expect("one JSON value"))
}

#[test]
fn easy_quadratic_instance_exits_zero() {
    let (code, out, _) =
        gshuffle(&["verify-quadratic", "--l1", "t1^-1", "--l2", "t2^-1", "--kernel", "gc", "--genus", "1", "--theory", "additive"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("holds: true"));
}

#[test]
fn derive_kernel_reports_both_sides() {
    let (code, v) = json(&["derive-kernel", "--parts", "1,1", "--genus", "0", "--theory", "additive", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
    assert_eq!(v["normalized_equal"], true);
    assert_eq!(v["derived"], v["expected"]);
    assert_eq!(v["derived"]["factors"], 2);
}

#[test]
fn chern_rank_one() {
    let (code, out, _) = gshuffle(&["chern", "1", "3", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("c2: 3\n"));
    assert!(out.contains("ch: (1, -D-2f, -2)"));
    let (_, v) = json(&["--json", "chern", "1", "3", "2"]);
    assert_eq!(v["c2"], 3);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["c1_f"], -2);
    assert_eq!(v["c1_d"], -1);
    assert_eq!(v["ch"]["ch2"], "-2");
    assert_eq!(v["holds"], true);
}

#[test]
fn nonzero_residual_exits_one_and_prints_it() {
    let (code, out, _) = gshuffle(&["--genus", "1", "verify-genus-relation", "0", "1", "--convention", "u-power"]);
    assert_eq!(code, 1);
    assert!(out.contains("residual: ") && !out.contains("residual: 0\n"));
    let (code, v) = json(&["--json", "--genus", "1", "verify-genus-relation", "0", "1", "--convention", "u-power"]);
    assert_eq!(code, 1);
    assert_eq!(v["holds"], false);
    assert!(!v["residual"]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn usage_and_domain_errors_exit_two() {
    for args in [
        &["--bogus"][..],
        &["eval"],
        &["eval", "1 +"],
        &["eval", "pt(0)"],
        &["--theory", "quantum", "eval", "1"],
        &["chern", "0", "1", "1"],
        &["derive-kernel"],
        &["--parts", "1,0", "derive-kernel"],
        &["verify-quadratic", "--l1", "t2", "--l2", "t2^-1"],
        &["verify-genus-relation", "0", "1", "--convention", "other"],
        &["--kernel", "e(", "shuffle", "1", "1"],
    ] {
        let (code, _, err) = gshuffle(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    let (code, v) = json(&["--json", "eval", "1 +"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("byte 3"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = gshuffle(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("selftest"));
}

#[test]
fn eval_emits_ring_element_json() {
    let (code, v) = json(&["--json", "eval", "a(1,1)*b(1,1) - pt(1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["terms"].as_array().unwrap().len(), 0);
    let (_, v) = json(&["--json", "--genus", "2", "eval", "u1*pt(1) + 1/3*a(1,2)"]);
    let parsed: RingElementJson = serde_json::from_value(v.clone()).unwrap();
    let x = parsed.to_element().unwrap();
    assert_eq!(serde_json::to_value(RingElementJson::from_element(&x)).unwrap(), v);
}

#[test]
fn shuffle_emits_shuffle_element_json() {
    let (code, v) = json(&["--json", "--genus", "0", "--kernel", "gcnorm", "shuffle", "1", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["symmetric"], true);
    let x = ShuffleElement::from_json(&v.to_string()).unwrap();
    assert_eq!(x.degree(), 2);
    let again: Value = serde_json::from_str(&x.to_json()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn sh_in_eval_matches_shuffle() {
    let (_, a) = json(&["--json", "--genus", "1", "--parts", "1,1", "eval", "sh(u1, 1)"]);
    let (_, b) = json(&["--json", "--genus", "1", "shuffle", "u1", "1"]);
    assert_eq!(a["terms"], b["terms"]);
}

#[test]
fn rn_round_trip() {
    let (code, v) = json(&["--json", "--genus", "1", "--factors", "2", "rn", "apply", "u1+u2"]);
    assert_eq!(code, 0);
    let x = ShuffleElement::from_json(&v.to_string()).unwrap();
    let back = gshuffle::shuffle::rn_inverse(&x).unwrap();
    let (_, plain) = json(&["--json", "--genus", "1", "--factors", "2", "eval", "u1+u2"]);
    assert_eq!(serde_json::to_value(RingElementJson::from_element(back.value())).unwrap(), plain);
}

#[test]
fn selftest_is_deterministic_and_passes() {
    let (code, a) = json(&["--json", "--seed", "7", "selftest"]);
    assert_eq!(code, 0);
    assert_eq!(a["passed"], true);
    assert_eq!(a["seed"], 7);
    let (_, b) = json(&["--json", "--seed", "7", "selftest"]);
    assert_eq!(a, b);
}
