use burnside_uniform::curve::{theta_forms, x_of_tau, y_of_tau};
use burnside_uniform::elliptic::{dedekind_eta, klein_j};
use burnside_uniform::numeric::mp::{abs_f64, fmt_complex, parse_complex};
use burnside_uniform::torus::{alpha_of_tau, BurnsideTorus};
use rug::Complex;
use serde::Serialize;

use crate::RunConfig;

pub const TARGETS: [&str; 15] = [
    "x", "y", "J", "theta1", "theta2", "eta", "alpha_plus", "omega", "omega_prime", "aleph", "wp", "wp_prime", "zeta", "g2", "g3",
];

#[derive(Clone, Debug, Serialize)]
pub struct EvalResult {
    pub target: String,
    pub at: Option<String>,
    pub value: String,
    /// Difference against a run with 32 more bits.
    pub error: f64,
    pub exact: Option<String>,
}

impl EvalResult {
    pub fn to_text(&self) -> String {
        let at = self.at.as_deref().map(|a| format!("({a})")).unwrap_or_default();
        let mut s = format!("{}{at} = {} ±{:.0e}", self.target, self.value, self.error);
        if let Some(e) = &self.exact {
            s.push_str(&format!("\n  exact: {e}"));
        }
        s
    }
}

enum Arg {
    None,
    Tau,
    Z,
}

fn arg_kind(target: &str) -> Option<Arg> {
    Some(match target {
        "x" | "y" | "J" | "theta1" | "theta2" | "eta" | "alpha_plus" => Arg::Tau,
        "wp" | "wp_prime" | "zeta" => Arg::Z,
        "omega" | "omega_prime" | "aleph" | "g2" | "g3" => Arg::None,
        _ => return None,
    })
}

fn value(target: &str, at: Option<&Complex>, prec: u32) -> Result<Complex, String> {
    let err = |e: burnside_uniform::Error| e.to_string();
    let point = || Complex::with_val(prec, at.expect("point checked"));
    let torus = || BurnsideTorus::new(prec).map_err(err);
    match target {
        "x" => x_of_tau(&point()).map_err(err),
        "y" => y_of_tau(&point()).map_err(err),
        "J" => klein_j(&point()).map_err(err),
        "theta1" => theta_forms(&point()).map(|t| t.0).map_err(err),
        "theta2" => theta_forms(&point()).map(|t| t.1).map_err(err),
        "eta" => dedekind_eta(&point()).map_err(err),
        "alpha_plus" => alpha_of_tau(&torus()?, &point(), 1, None).map_err(err),
        "omega" => Ok(torus()?.omega),
        "omega_prime" => Ok(torus()?.omega_prime),
        "aleph" => Ok(torus()?.aleph.point),
        "wp" => torus()?.lp.wp(&point()).map_err(err),
        "wp_prime" => torus()?.lp.wp_prime(&point()).map_err(err),
        "zeta" => torus()?.lp.zeta(&point()).map_err(err),
        "g2" => Ok(torus()?.g2.embed(prec)),
        "g3" => Ok(torus()?.g3.embed(prec)),
        _ => Err(format!("unknown target {target:?}; known: {}", TARGETS.join(", "))),
    }
}

fn exact(target: &str) -> Option<String> {
    match target {
        "g2" => Some(BurnsideTorus::new(64).ok()?.g2.to_string()),
        "g3" => Some(BurnsideTorus::new(64).ok()?.g3.to_string()),
        "aleph" => Some(format!("wp(aleph) = {}", BurnsideTorus::wp_aleph_exact())),
        _ => None,
    }
}

/// Evaluates `target` at `tau` or `z` (whichever the target takes) at the
/// configured precision.
pub fn eval(target: &str, tau: Option<&str>, z: Option<&str>, cfg: &RunConfig) -> Result<EvalResult, String> {
    let kind = arg_kind(target).ok_or_else(|| format!("unknown target {target:?}; known: {}", TARGETS.join(", ")))?;
    let p = cfg.precision_bits;
    let raw = match kind {
        Arg::None => None,
        Arg::Tau => Some(tau.ok_or_else(|| format!("{target} needs --tau"))?),
        Arg::Z => Some(z.ok_or_else(|| format!("{target} needs --z"))?),
    };
    let hi = p + 32;
    let point = match raw {
        Some(s) => Some(parse_complex(hi, s).ok_or_else(|| format!("cannot parse {s:?}"))?),
        None => None,
    };
    if matches!(kind, Arg::Tau) && point.as_ref().is_some_and(|t| t.imag().is_sign_negative() || t.imag().is_zero()) {
        return Err("tau must lie in the upper half-plane".into());
    }
    let lo_pt = point.as_ref().map(|t| Complex::with_val(p, t));
    let mut v = value(target, lo_pt.as_ref(), p)?;
    let w = value(target, point.as_ref(), hi)?;
    let diff = abs_f64(&Complex::with_val(hi, &w - &v));
    let floor = abs_f64(&w).max(1e-300) * 2f64.powi(-(p as i32));
    let err = diff.max(floor);
    let (re, im) = v.as_mut_real_imag();
    for part in [re, im] {
        if part.to_f64().abs() < err {
            *part = rug::Float::new(p);
        }
    }
    let digits = (p as f64 * std::f64::consts::LOG10_2) as usize;
    Ok(EvalResult { target: target.to_string(), at: raw.map(str::to_string), value: fmt_complex(&v, digits), error: err, exact: exact(target) })
}
