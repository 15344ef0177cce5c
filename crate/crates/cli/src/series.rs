use burnside_uniform::series::{
    burnside_chart_series, theta_and_divisor_series, ChartSeries, CuspChart, LaurentSeries, SeriesKind, SeriesRecord,
};
use burnside_uniform::torus::{abelian_differential_series, alpha_branch_chart};
use burnside_uniform::whittaker::conversion_ode_series;
use rug::Rational;

use crate::RunConfig;

pub const SERIES_NAMES: [&str; 16] = [
    "X@pole", "Y@pole", "X@zero", "Y@zero", "X@branch", "Y@branch", "theta1@inf", "theta1@cusp", "dXoverY", "XdXoverY", "dalpha",
    "alpha", "mu_of_q", "q_of_mu", "g2", "theta3^4",
];

pub fn chart_label(c: &CuspChart) -> String {
    let lin = |u: i64, v: i64| {
        let t = match u {
            1 => "tau".to_string(),
            -1 => "-tau".to_string(),
            u => format!("{u} tau"),
        };
        match (u, v) {
            (0, v) => v.to_string(),
            (_, 0) => t,
            (_, v) if v < 0 => format!("{t} - {}", -v),
            _ => format!("{t} + {v}"),
        }
    };
    if c.c == 0 && c.d == 1 {
        format!("q = exp((pi i/4)({}))", lin(c.a, c.b))
    } else {
        format!("q = exp((pi i/4)({})/({}))", lin(c.a, c.b), lin(c.c, c.d))
    }
}

fn chart(c: &CuspChart, order: i64) -> Result<ChartSeries, String> {
    let probe = burnside_chart_series(c, 4).map_err(|e| e.to_string())?;
    let n = ((order - probe.y.lead_exp.min(probe.x.lead_exp)) / probe.x.step + 2) as usize;
    burnside_chart_series(c, n).map_err(|e| e.to_string())
}

/// `-q X_q/(X^2 - 1)` in the chart, as a formal series.
pub fn theta1_formal(cs: &ChartSeries) -> Result<LaurentSeries, String> {
    let x = cs.x.absorb_scale();
    let den = x.mul(&x).sub(&LaurentSeries::constant(burnside_uniform::numeric::CycloQ::one(), x.order() + 8)).map_err(|e| e.to_string())?;
    x.q_deriv().div(&den).map(|s| s.neg()).map_err(|e| e.to_string())
}

/// The series `name` through `q^order` inclusive, with its chart label.
pub fn named_series(name: &str, order: usize) -> Result<(LaurentSeries, String), String> {
    if order > RunConfig::MAX_ORDER {
        return Err(format!("order {order} exceeds {}", RunConfig::MAX_ORDER));
    }
    let o = order as i64;
    let err = |e: burnside_uniform::Error| e.to_string();
    let (s, label) = match name {
        "X@pole" | "Y@pole" | "X@zero" | "Y@zero" | "X@branch" | "Y@branch" => {
            let (var, cusp) = name.split_once('@').expect("checked name");
            let c = match cusp {
                "pole" => CuspChart::pole(),
                "zero" => CuspChart::zero(),
                _ => CuspChart::half(),
            };
            let cs = chart(&c, o)?;
            (if var == "X" { cs.x } else { cs.y }, chart_label(&c))
        }
        "theta1@inf" | "theta1@cusp" => {
            let c = if name.ends_with("inf") { CuspChart::infinity() } else { CuspChart::zero() };
            let cs = chart(&c, o + 8)?;
            (theta1_formal(&cs)?, chart_label(&c))
        }
        "dXoverY" | "XdXoverY" => {
            let c = CuspChart::half();
            let cs = chart(&c, o + 4)?;
            let w = cs.x.deriv().div(&cs.y).map_err(err)?;
            (if name == "dXoverY" { w } else { cs.x.mul(&w) }.absorb_scale(), format!("{}, coefficients of dq", chart_label(&c)))
        }
        "dalpha" | "alpha" => {
            let ab = abelian_differential_series(order / 2 + 4).map_err(err)?;
            let label = chart_label(&alpha_branch_chart());
            if name == "dalpha" {
                (ab.d_alpha, format!("{label}, d alpha+/(M dq)"))
            } else {
                (ab.alpha, format!("{label}, (alpha+ - omega)/M"))
            }
        }
        "mu_of_q" | "q_of_mu" => {
            let cs = conversion_ode_series(&Rational::from((-3, 8)), order / 8 + 2).map_err(err)?;
            if name == "mu_of_q" {
                (cs.mu_of_q, "q = exp(pi i tau/4)".to_string())
            } else {
                (cs.q_of_mu.expect("rho = 1 has a reversion"), "mu~".to_string())
            }
        }
        "g2" => (theta_and_divisor_series(SeriesKind::G2Eisenstein, order / 8 + 2).map_err(err)?, "g2/(20 pi^4), q = exp(pi i tau/4)".into()),
        "theta3^4" => (theta_and_divisor_series(SeriesKind::Theta3Pow4, order / 8 + 2).map_err(err)?, "q = exp(pi i tau/4)".into()),
        _ => return Err(format!("unknown series {name:?}; known: {}", SERIES_NAMES.join(", "))),
    };
    if s.order() <= o {
        return Err(format!("{name} is known only below q^{}", s.order()));
    }
    Ok((s.truncate(o + 1), label))
}

pub fn export(name: &str, cfg: &RunConfig) -> Result<SeriesRecord, String> {
    let (s, label) = named_series(name, cfg.truncation_order)?;
    Ok(s.export(&label))
}

/// `exponent coefficient` lines for nonzero terms.
pub fn to_text(name: &str, r: &SeriesRecord) -> String {
    let mut out = format!(
        "{name} in {} over {}, prefactor zeta16^{} * {} * q^({})\n",
        r.chart, r.ring, r.prefactor.zeta16_power, r.prefactor.scale, r.prefactor.q_shift
    );
    for (k, c) in r.coeffs.iter().enumerate() {
        if c != "0" {
            out.push_str(&format!("q^{:<6} {c}\n", r.lead_exp + r.step * k as i64));
        }
    }
    out
}
