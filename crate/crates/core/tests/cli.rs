use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revseries"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn error_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap_or_else(|e| panic!("{e}: {}", stderr(out)))
}

#[test]
fn invert_exp_minus_one_gives_log() {
    let out = run(&[
        "invert", "--expr", "exp(z)-1", "--center", "0", "--order", "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# f(z) = exp(z) - 1"), "{text}");
    assert!(
        text.contains("new: [0, 1, -1/2, 1/3, -1/4, 1/5, -1/6]"),
        "{text}"
    );
}

#[test]
fn vanishing_derivative_exits_four_with_hint() {
    let out = run(&["invert", "--expr", "z^2", "--order", "4"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("a translation to a nearby point should be made"));

    let out = run(&[
        "invert", "--expr", "z^2", "--order", "4", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let err = error_json(&out);
    assert_eq!(err["error"]["code"], "DerivativeVanishesAtCenter");
    assert_eq!(err["error"]["exit_code"], 4);
    assert!(out.stdout.is_empty());
}

#[test]
fn all_methods_on_identity() {
    let out = run(&["invert", "--expr", "z", "--order", "3", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["new", "lb", "newton"] {
        assert!(text.contains(&format!("{name}: [0, 1, 0, 0]")), "{text}");
    }
}

#[test]
fn invert_json_schema() {
    let out = run(&[
        "invert", "--expr", "z*exp(z)", "--order", "4", "--method", "lb", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let r = &v[0];
    assert_eq!(r["method"], "lb");
    assert_eq!(r["z0"], "0/1");
    assert_eq!(r["u0"], "0/1");
    assert_eq!(r["order"], 4);
    assert_eq!(
        r["coeffs"],
        serde_json::json!(["0/1", "1/1", "-1/1", "3/2", "-8/3"])
    );
    assert_eq!(r["f_prime_at_z0"], "1/1");
    assert!(r.get("radius_estimate").is_some());
}

#[test]
fn float_mode_at_an_irrational_center() {
    let out = run(&[
        "invert", "--expr", "exp(z)", "--center", "1", "--order", "3", "--float", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("method,index,value"));
    let b1: f64 = lines
        .nth(1)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!((b1 - (-1f64).exp()).abs() < 1e-12);
}

#[test]
fn exact_csv_output() {
    let out = run(&[
        "invert", "--expr", "z+z^2", "--order", "3", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "method,index,numerator,denominator\nnew,0,0,1\nnew,1,1,1\nnew,2,-1,1\nnew,3,2,1\n"
    );
}

#[test]
fn compare_agreeing_backends() {
    let out = run(&["compare", "--expr", "z*exp(z)", "--order", "8"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&[
        "compare",
        "--expr",
        "z+z^2",
        "--order",
        "6",
        "--method",
        "new,newton",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["first_divergence"], Value::Null);
    assert_eq!(v["coefficients"]["new"], v["coefficients"]["newton"]);
    assert!(v["coefficients"].get("lb").is_none());
}

#[test]
fn compare_with_one_method_is_a_usage_error() {
    let out = run(&["compare", "--expr", "z", "--order", "3", "--method", "new"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn radius_estimates() {
    let out = run(&[
        "radius", "--expr", "exp(z)-1", "--order", "64", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["radius_estimate"].as_f64().unwrap();
    assert!((0.9..=1.1).contains(&r), "{r}");

    let out = run(&[
        "radius", "--expr", "z+z^2", "--order", "64", "--format", "json",
    ]);
    let r = json(&out)["radius_estimate"].as_f64().unwrap();
    assert!((0.2..=0.3).contains(&r), "{r}");

    let out = run(&["radius", "--expr", "z", "--order", "16"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn roundtrip_subcommand() {
    for (expr, order) in [("sin(z)", "9"), ("z+z^2", "12")] {
        let out = run(&["roundtrip", "--expr", expr, "--order", order]);
        assert_eq!(out.status.code(), Some(0), "{expr}: {}", stderr(&out));
    }
    let out = run(&[
        "roundtrip",
        "--expr",
        "z+z^2",
        "--order",
        "12",
        "--format",
        "json",
    ]);
    let v = json(&out);
    assert_eq!(v["results"].as_array().unwrap().len(), 3);
    assert!(v["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["passed"] == true));

    let out = run(&["roundtrip", "--expr", "z^2", "--order", "4"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn error_exit_codes() {
    let cases: [(&[&str], i32); 6] = [
        (&["invert", "--expr", "z+", "--order", "3"], 2),
        (&["invert", "--order", "3"], 2),
        (&["invert", "--expr", "z", "--order", "0"], 2),
        (&["invert", "--expr", "log(z)", "--order", "3"], 3),
        (
            &[
                "invert", "--expr", "exp(z)", "--center", "1", "--order", "3",
            ],
            3,
        ),
        (
            &[
                "invert",
                "--expr",
                "sqrt(z-4)",
                "--center",
                "2",
                "--order",
                "3",
            ],
            3,
        ),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn parse_error_json_carries_code() {
    let out = run(&[
        "invert", "--expr", "2**", "--order", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_json(&out)["error"]["code"], "SyntaxError");
}

#[test]
fn bench_lists_every_method_per_order() {
    let out = run(&["bench", "--expr", "z+z^2", "--order", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<_> = stdout(&out)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect();
    assert_eq!(rows.len(), 4 * 3);
    assert!(rows[0].starts_with("1 new "));
    assert!(rows.last().unwrap().starts_with("8 newton "));
}
