use std::cmp::Ordering;
use std::process::Command;

use realalg::numerics::rational::int;
use realalg::numerics::{algebraic_compare, parse_rational};
use realalg::vroots::algebraic_from_json;
use realalg::RealAlgebraic;
use realalg_cli::{run, CommandResult, Status};
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn golden() -> Vec<Vec<String>> {
    let cmds: Vec<Vec<&str>> = vec![
        vec!["vroots", "x^3 - 6*x^2 + 11*x - 6"],
        vec!["vroots", "x^4 - 2"],
        vec!["budan", "x^2 - 4", "--at", "1"],
        vec!["budan", "x^3 - x", "--at", "-1/2"],
        vec!["ivt", "x^3 - 2", "--from", "0", "--to", "2"],
        vec!["extrema", "x^3 - 3*x", "--from", "-2", "--to", "3/2"],
        vec!["signtable", "x^2 - 2"],
        vec!["signtable", "x^3 + x"],
        vec!["csqrt", "--re", "-3", "--im", "4"],
        vec!["csqrt", "--re", "1", "--im", "1"],
        vec!["nf", "abs(x) + pos(y) * 2"],
        vec!["semieq", "abs(x)", "x \\/ -x"],
        vec!["semieq", "x \\/ (1 - x)", "1 \\/ x \\/ (1 - x)"],
        vec!["prove", "|- abs(x+y) <= abs(x)+abs(y)"],
        vec!["prove", "x \\/ y >= 0 |- x >= 0"],
        vec!["checkcert", "PRES", "CERT"],
        vec!["checkcert", "PRES", "BAD"],
        vec!["series", "1 - e", "--op", "inv", "--depth", "8"],
        vec!["series", "-e + e^2", "--op", "abs", "--depth", "5"],
        vec!["series", "e", "--op", "sup", "--with", "e^2", "--depth", "5"],
        vec!["series", "e^2", "--op", "frac", "--with", "e + e^2", "--depth", "6"],
        vec!["series", "X^2 + X - e", "--op", "newton", "--depth", "6"],
    ];
    cmds.into_iter()
        .map(|c| {
            c.into_iter()
                .map(|a| match a {
                    "PRES" => data("sos_presentation.json"),
                    "CERT" => data("sos_certificate.json"),
                    "BAD" => data("sos_corrupted.json"),
                    _ => a.to_string(),
                })
                .collect()
        })
        .collect()
}

fn run_args(args: &[&str]) -> CommandResult {
    run(std::iter::once("realalg").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> Value {
    let r = run_args(args);
    assert_eq!(r.status, Status::Ok, "{args:?}: {:?}", r.error);
    r.payload.unwrap()
}

fn rational_of(v: &Value) -> RealAlgebraic {
    algebraic_from_json(v).unwrap()
}

fn is_int(v: &Value, n: i64) -> bool {
    algebraic_compare(&rational_of(v), &RealAlgebraic::from_rational(int(n))) == Ordering::Equal
}

#[test]
fn worked_examples() {
    let p = ok(&["vroots", "x^3 - 6*x^2 + 11*x - 6"]);
    let top = p["rho"][2].as_array().unwrap();
    assert!(top.iter().zip([1, 2, 3]).all(|(v, n)| is_int(v, n)));
    assert_eq!(p["top"], p["rho"][2]);

    let p = ok(&["budan", "x^2 - 4", "--at", "1"]);
    assert_eq!(p["r"], 1);
    assert!(is_int(&p["lower"], -2) && is_int(&p["upper"], 2));

    let p = ok(&["prove", "|- abs(x+y) <= abs(x)+abs(y)"]);
    assert_eq!(p["verdict"], "valid");
    assert_eq!(p["certificates_verified"], true);

    let p = ok(&["prove", "x \\/ y >= 0 |- x >= 0"]);
    assert_eq!(p["verdict"], "counterexample");
    assert!(p["point"]["x"].as_str().is_some());
}

#[test]
fn command_payloads() {
    let p = ok(&["ivt", "x^3 - 2", "--from", "0", "--to", "2"]);
    assert_eq!(p["mu"].as_array().unwrap().len(), 3);
    let p = ok(&["extrema", "x^2 - 1", "--from", "-2", "--to", "1/2"]);
    assert!(is_int(&p["inf"], -1) && is_int(&p["sup"], 3) && is_int(&p["inf_abs"], 0));
    assert_eq!(p["constant_sign"], 0);
    let p = ok(&["signtable", "x^2 + 1"]);
    assert!(p["regions"].as_array().unwrap().iter().all(|r| r["sign"] == 1));
    let p = ok(&["csqrt", "--re", "-3", "--im", "4"]);
    assert!(is_int(&p["u"], 1) && is_int(&p["v"], 2));
    assert_eq!(p["identity_ok"], true);
    let p = ok(&["semieq", "x \\/ (1 - x)", "1 \\/ x \\/ (1 - x)"]);
    assert_eq!((p["verdict"].as_str(), p["witness"].as_str()), (Some("differs"), Some("1/4")));
    let p = ok(&["checkcert", &data("sos_presentation.json"), &data("sos_certificate.json")]);
    assert_eq!(p["verdict"], "accepted");
    let p = ok(&["checkcert", &data("sos_presentation.json"), &data("sos_corrupted.json")]);
    assert_eq!((p["verdict"].as_str(), p["residual"].as_str()), (Some("rejected"), Some("-x^2 - 1")));
    let p = ok(&["series", "1 - e", "--op", "inv", "--depth", "4"]);
    assert_eq!(p["coefficients"], serde_json::json!(["1", "1", "1", "1"]));
    let p = ok(&["series", "e", "--op", "frac", "--with", "e + e^2", "--depth", "4"]);
    assert_eq!(p["coefficients"], serde_json::json!(["0", "1", "-1", "1"]));
    let p = ok(&["series", "0", "--op", "frac", "--with", "0", "--depth", "4"]);
    assert_eq!(p["status"], "unknown");
}

#[test]
fn errors_carry_position_and_expectation() {
    let r = run_args(&["nf", "x + * y"]);
    assert_eq!(r.status, Status::Error);
    assert!(r.payload.is_none());
    let e = r.error.unwrap();
    assert_eq!((e.kind.as_str(), e.argument.as_deref(), e.pos), ("parse", Some("term"), Some(4)));
    assert!(e.expected.is_some());
    assert!(!r.diagnostics.is_empty());

    let r = run_args(&["vroots", "2*x^2 + 1"]);
    let e = r.error.unwrap();
    assert_eq!(e.kind, "domain");
    assert!(e.message.contains("monic"));

    let r = run_args(&["budan", "x^2 - 4", "--at", "1/0"]);
    assert_eq!(r.error.unwrap().argument.as_deref(), Some("at"));
    let r = run_args(&["ivt", "x^2 + 1", "--from", "0", "--to", "1"]);
    assert_eq!(r.error.unwrap().kind, "no-sign-change");
    let r = run_args(&["series", "e", "--op", "inv"]);
    assert_eq!(r.error.unwrap().kind, "not-a-unit");
    let r = run_args(&["series", "e", "--op", "sup"]);
    assert_eq!(r.error.unwrap().argument.as_deref(), Some("with"));
    let r = run_args(&["checkcert", "/nonexistent.json", "/nonexistent.json"]);
    assert_eq!(r.error.unwrap().kind, "invalid-document");
    let r = run_args(&["frobnicate"]);
    assert_eq!(r.error.unwrap().kind, "usage");
}

/// No JSON floats anywhere; every string that looks numeric is an exact rational.
fn check_exact(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "non-integer number {n}"),
        Value::String(s) if s.starts_with(|c: char| c.is_ascii_digit()) && !s.contains(['x', 'e', '*']) => {
            parse_rational(s).unwrap_or_else(|e| panic!("`{s}`: {e}"));
        }
        Value::Array(xs) => xs.iter().for_each(check_exact),
        Value::Object(m) => m.values().for_each(check_exact),
        _ => {}
    }
}

/// Re-decodes every real algebraic number found in the payload.
fn check_algebraics(v: &Value) {
    match v {
        Value::Object(m) if m.contains_key("rational") || m.contains_key("defpoly") => {
            let x = algebraic_from_json(v).unwrap();
            assert_eq!(realalg::vroots::algebraic_to_json(&x), *v);
        }
        Value::Array(xs) => xs.iter().for_each(check_algebraics),
        Value::Object(m) => m.values().for_each(check_algebraics),
        _ => {}
    }
}

#[test]
fn payloads_round_trip() {
    for args in golden() {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let r = run_args(&argv);
        assert!(r.is_ok(), "{argv:?}: {:?}", r.error);
        let text = r.to_json_string();
        let back: CommandResult = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json_string(), text);
        let payload = r.payload.unwrap();
        check_exact(&payload);
        check_algebraics(&payload);
    }
    let r = run_args(&["nf", "x +"]);
    let back: CommandResult = serde_json::from_str(&r.to_json_string()).unwrap();
    assert_eq!(back, r);
}

fn binary(args: &[String]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_realalg")).args(args).output().unwrap();
    (out.status.code().unwrap(), out.stdout)
}

#[test]
fn golden_corpus_is_deterministic() {
    for args in golden() {
        let (code, first) = binary(&args);
        assert_eq!(code, 0, "{args:?}");
        let (_, second) = binary(&args);
        assert_eq!(first, second, "{args:?}");
        let parsed: CommandResult = serde_json::from_slice(&first).unwrap();
        assert!(parsed.is_ok());
    }
}

#[test]
fn exit_code_follows_status() {
    let (code, out) = binary(&["nf".to_string(), "abs(".to_string()]);
    assert_eq!(code, 1);
    let parsed: CommandResult = serde_json::from_slice(&out).unwrap();
    assert_eq!(parsed.status, Status::Error);
    let (code, _) = binary(&["nf".to_string(), "abs(x)".to_string()]);
    assert_eq!(code, 0);
    let (code, _) = binary(&[]);
    assert_eq!(code, 1);
}
