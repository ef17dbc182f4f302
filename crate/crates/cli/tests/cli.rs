use std::process::{Command, Output};

use serde_json::Value;

fn cig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cig"))
        .args(args)
        .env_remove("CIG_SEARCH_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn sym7_pair_invariably_generates() {
    let out = cig(&["invgen", "sym(7)", "--tuple", "(1,2,3,4,5,6,7) | (1,2,3)(4,5,6,7)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"], true);
    assert_eq!(v["spec"], "sym(7)");
    assert!(v["budget_used"].as_u64().unwrap() > 0);
}

#[test]
fn failing_tuple_is_reported() {
    let v = json(&cig(&["invgen", "sym(4)", "--tuple", "(1,2,3)"]));
    assert_eq!(v["result"], false);
    assert!(v["witnesses"]["failing_tuple"].is_array());
}

#[test]
fn minexp_cor12_3() {
    let v = json(&cig(&["--no-timings", "minexp", "cor12(3)"]));
    assert_eq!(v["result"]["order"], 162);
    assert_eq!(v["result"]["exponent"], 18);
    assert_eq!(v["result"]["minimal_exponent"], true);
    assert!(v["timings"].is_null());
}

#[test]
fn di_of_alt5() {
    let v = json(&cig(&["di", "power(alt(5),1)"]));
    assert_eq!(v["result"]["d_I"], 2);
    assert_eq!(v["witnesses"]["generating_tuple"]["elements"].as_array().unwrap().len(), 2);
}

#[test]
fn pcig_orders_of_alt5() {
    let v = json(&cig(&["pcig", "alt(5)"]));
    assert_eq!(v["result"], true);
    let mut orders: Vec<u64> = v["witnesses"]["generating_tuple"]["orders"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    orders.sort();
    assert_eq!(orders, [2, 3, 5]);
}

#[test]
fn eta_matches_d_i() {
    let v = json(&cig(&["eta", "--crowns", "2/2, 1/1, 1/1", "--spec", "gl22(2)"]));
    assert_eq!(v["result"]["eta"], 3);
    assert_eq!(v["result"]["d_I"], 3);
}

#[test]
fn lift_check_agrees_with_affine_group() {
    let v = json(&cig(&[
        "lift-check",
        "deleted(3,2)",
        "--tuple",
        "(1,2,3) | (1,2)",
        "--lift",
        "1,0 | 0,0",
        "--verify",
    ]));
    let r = &v["result"];
    assert_eq!(r["crit_generates"], r["affine_generates"]);
    assert_eq!(r["matrici"], r["affine_invariably_generates"]);
}

#[test]
fn power_cig_alt5() {
    let v = json(&cig(&["power-cig", "alt(5)"]));
    assert_eq!(v["result"]["max_power"], 2);
}

#[test]
fn exhausted_budget_exits_2() {
    let out = cig(&["--budget", "1", "--no-timings", "corpus", "--only", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["result"]["criteria"][0]["error_code"], "budget_exhausted");
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cig"))
        .args(["di", "sym(5)"])
        .env("CIG_SEARCH_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "budget_exhausted");
}

#[test]
fn parse_error_exits_1() {
    let out = cig(&["analyze", "bogus(3)"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "parse_error");
}

#[test]
fn output_is_deterministic_without_timings() {
    let args = ["--no-timings", "analyze", "semidirect(deleted(3,2),2)"];
    let a = cig(&args);
    let b = cig(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format() {
    let out = cig(&["--format", "text", "--no-timings", "minexp", "sym(3)"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("result.order: 6"));
}
