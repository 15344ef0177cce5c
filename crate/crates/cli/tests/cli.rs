use std::process::Command;

use burnside_cli::eval::eval;
use burnside_cli::samples::tau_samples;
use burnside_cli::series::named_series;
use burnside_cli::suites::verify;
use burnside_cli::{RunConfig, Status};
use burnside_uniform::numeric::mp::{abs_f64, cx, parse_complex, rel_residual};
use burnside_uniform::series::{burnside_chart_series, eval_chart, CuspChart};
use rug::Complex;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_burnside"))
}

fn coeffs(name: &str, order: usize) -> Vec<String> {
    named_series(name, order).unwrap().0.coeffs.iter().map(|c| c.to_string()).collect()
}

#[test]
fn config_bounds() {
    assert!(RunConfig::new(32, 200, None, 0).is_err());
    assert!(RunConfig::new(256, 4, None, 0).is_err());
    assert!(RunConfig::new(256, 200, Some(-1.0), 0).is_err());
    let c = RunConfig::new(128, 8, None, 0).unwrap();
    assert_eq!(c.residual_tol, 2f64.powi(-64));
}

#[test]
fn series_examples() {
    assert_eq!(coeffs("X@pole", 64)[..8], ["1", "2", "-1", "-2", "3", "2", "-4", "-4"]);
    assert_eq!(coeffs("mu_of_q", 41), ["1", "-5/21", "-78/833", "4001/39445", "168948/1711913", "42752022/491319031"]);
    assert_eq!(coeffs("g2", 48), ["1/240", "1", "9", "28", "73", "126", "252"]);
    assert_eq!(coeffs("q_of_mu", 33), ["1", "5/21", "503/833", "4138924/2011695", "6383638315/785768067"]);
    assert!(named_series("X@nowhere", 10).is_err());
    assert!(named_series("g2", RunConfig::MAX_ORDER + 1).is_err());
}

#[test]
fn truncation_is_inclusive() {
    let (s, _) = named_series("Y@branch", 11).unwrap();
    assert_eq!(s.order(), 13);
    assert_eq!(s.coeff(11).to_string(), "606");
}

#[test]
fn eval_examples() {
    let cfg = RunConfig::default();
    let j = eval("J", Some("sqrt2*i"), None, &cfg).unwrap();
    assert!(j.value.starts_with("4.62962962962962962962962962962"));
    assert!(j.error < 1e-70);
    let w = eval("omega", None, None, &cfg).unwrap();
    assert!(w.value.starts_with("2.11815672394786318850503834700"));
    assert!(eval("x", Some("-1+0.5i"), None, &cfg).is_ok());
    assert!(eval("x", Some("0.3"), None, &cfg).is_err());
    assert!(eval("wp", None, None, &cfg).is_err());
    assert!(eval("nothing", None, None, &cfg).is_err());
}

#[test]
fn eval_x_matches_series() {
    let cfg = RunConfig::default();
    let r = eval("x", Some("2i"), None, &cfg).unwrap();
    let got = parse_complex(256, &r.value).unwrap();
    let cs = burnside_chart_series(&CuspChart::infinity(), 60).unwrap();
    let ((x, tail), _) = eval_chart(&cs, &cx(256, 0.0, 2.0)).unwrap();
    assert!(tail < 1e-60);
    assert!(rel_residual(&got, &x) < 1e-60);
}

#[test]
fn samples_are_seeded_and_in_region() {
    let a = tau_samples(20, 7, 128);
    assert_eq!(a, tau_samples(20, 7, 128));
    assert_ne!(a, tau_samples(20, 8, 128));
    for t in &a {
        let (re, im) = (t.real().to_f64(), t.imag().to_f64());
        assert!(re.abs() <= 2.0 && (0.5..=4.0).contains(&im));
    }
}

#[test]
fn reports_are_deterministic() {
    let cfg = RunConfig::default();
    let strip = |s: &str| verify(s, &cfg).unwrap().checks.into_iter().map(|c| (c.id, c.status, c.computed, c.residual)).collect::<Vec<_>>();
    assert_eq!(strip("whittaker"), strip("whittaker"));
    assert!(verify("nope", &cfg).is_err());
}

#[test]
fn report_entries_carry_anchors_and_values() {
    let r = verify("cover", &RunConfig::default()).unwrap();
    for c in &r.checks {
        assert!(!c.anchor.is_empty(), "{}", c.id);
        if c.status == Status::Fail {
            assert!(!c.expected.is_empty() && !c.computed.is_empty(), "{}", c.id);
        }
    }
    let rh: Vec<_> = r.checks.iter().filter(|c| c.id.contains("riemann-hurwitz")).collect();
    assert_eq!(rh.len(), 2);
    assert!(rh.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn binary_exit_codes() {
    let out = bin().args(["verify", "--suite", "whittaker"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "whittaker");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    // the stated wp'(aleph) disagrees in sign with the computed one
    let out = bin().args(["verify", "--suite", "cover"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin().args(["eval", "omega", "--precision", "32"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_series_and_eval() {
    let out = bin().args(["series", "X@pole", "--order", "64"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lead_exp"], -2);
    assert_eq!(v["step"], 8);
    assert_eq!(v["coeffs"][4], "3");
    let out = bin().args(["eval", "aleph", "--format", "text"]).output().unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("aleph = 3.90699665709"), "{s}");
    assert!(s.contains("-7/2 - 13/6*sqrt2"));
}

#[test]
fn wp_at_small_argument() {
    let cfg = RunConfig::new(128, 8, None, 0).unwrap();
    let r = eval("wp", None, Some("1e-3"), &cfg).unwrap();
    let v = parse_complex(128, &r.value).unwrap();
    assert!(abs_f64(&Complex::with_val(128, &v - cx(128, 1e6, 0.0))) < 1.0);
}
