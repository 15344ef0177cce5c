use std::sync::Arc;

use burnside_uniform::numeric::mp::cx;
use burnside_uniform::numeric::poly::Poly;
use burnside_uniform::numeric::CycloQ;
use burnside_uniform::series::{eta_product_series, theta_and_divisor_series, EtaFactor, EtaProductSpec, LaurentSeries, SeriesKind};
use burnside_uniform::whittaker::{
    accessory_polynomial, burnside_q, conversion_ode_series, eta4_integral_series, eta_power_ode_check, hypergeometric_reduce,
    hypergeometric_solutions_check, partial_fractions, quadrature_check, whittaker_q, HyperellipticCurve, WhittakerQ,
};
use rug::Rational;

use super::{below, e2s, Ctx};
use crate::report::{Job, Outcome};
use crate::series::theta1_formal;

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn lead_ints(s: &LaurentSeries, k: usize) -> String {
    match s.integer_coeffs() {
        Some(v) => join(&v[..k.min(v.len())]),
        None => "non-integer coefficients".into(),
    }
}

/// First exponent in `[from, upto)` where the series differ, after absorbing scales.
fn first_difference(a: &LaurentSeries, b: &LaurentSeries, upto: i64) -> Result<Option<i64>, String> {
    let (a, b) = (a.absorb_scale(), b.absorb_scale());
    if a.order() < upto || b.order() < upto {
        return Err(format!("series known only below q^{}", a.order().min(b.order())));
    }
    Ok((a.lead_exp.min(b.lead_exp)..upto).find(|&e| a.coeff(e) != b.coeff(e)))
}

fn same_through(a: &LaurentSeries, b: &LaurentSeries, upto: i64) -> Result<Outcome, String> {
    let d = first_difference(a, b, upto)?;
    Ok(Outcome::exact(format!("equal below q^{upto}"), match d {
        None => format!("equal below q^{upto}"),
        Some(e) => format!("differ at q^{e}: {} vs {}", a.absorb_scale().coeff(e), b.absorb_scale().coeff(e)),
    }))
}

fn product(factors: Vec<EtaFactor>, lead: Option<(i64, i64)>, n: usize) -> Result<LaurentSeries, String> {
    let mut spec = EtaProductSpec::new(factors);
    if let Some((c, e)) = lead {
        spec = spec.with_lead(CycloQ::from_int(c), e);
    }
    eta_product_series(&spec, n).map_err(e2s)
}

const CHART_TABLE: [(&str, usize, bool, &str); 6] = [
    ("X@pole", 0, true, "1, 2, -1, -2, 3, 2, -4, -4"),
    ("Y@pole", 0, false, "1, -3, -3, 14, 6, -33, -20"),
    ("X@zero", 1, true, "1, 2, 5, 10, 18, 32"),
    ("Y@zero", 1, false, "1, 9, 42, 147, 444, 1206"),
    ("X@branch", 2, true, "1, 4, 8, 16, 32, 56, 96"),
    ("Y@branch", 2, false, "1, 6, 24, 80, 231, 606"),
];

pub fn forms(ctx: &Arc<Ctx>) -> Vec<Job> {
    let mut jobs = Vec::new();
    for (name, idx, is_x, want) in CHART_TABLE {
        let c = ctx.clone();
        jobs.push(Job::new(format!("forms/{name}"), "cusp series", move || {
            let cs = &c.charts()?[idx];
            let s = if is_x { &cs.x } else { &cs.y };
            Ok(Outcome::exact(want, lead_ints(s, want.split(',').count())))
        }));
    }
    let c = ctx.clone();
    jobs.push(Job::new("forms/integrality", "cusp series", move || {
        let bad: Vec<&str> = c.charts()?.iter().filter(|cs| cs.x.integer_coeffs().is_none() || cs.y.integer_coeffs().is_none()).map(|cs| cs.chart.cusp).collect();
        Ok(Outcome::exact("integer X and Y coefficients in all six charts", if bad.is_empty() {
            "integer X and Y coefficients in all six charts".to_string()
        } else {
            format!("non-integer at cusps {}", bad.join(", "))
        }))
    }));
    for k in 0..6 {
        let c = ctx.clone();
        jobs.push(Job::new(format!("forms/curve-identity-{k}"), "curve identity", move || {
            let cs = &c.charts()?[k];
            let d = cs.y.mul(&cs.y).sub(&cs.x.pow(5).map_err(e2s)?.sub(&cs.x).map_err(e2s)?).map_err(e2s)?;
            let upto = 2 * cs.y.lead_exp + cs.y.step * (c.cfg.truncation_order as i64 - 1);
            let want = format!("Y^2 - X^5 + X = O(q^{upto}) at cusp {}", cs.chart.cusp);
            let got = if d.is_zero() && d.order() >= upto {
                want.clone()
            } else {
                format!("nonzero below q^{} at cusp {}", d.lead_exp, cs.chart.cusp)
            };
            Ok(Outcome::exact(want, got))
        }));
    }
    let products: [(&str, fn(usize) -> Result<LaurentSeries, String>, bool); 4] = [
        ("forms/branch-X-product", |n| product(vec![EtaFactor::new(4, 1, 2, 0), EtaFactor::new(4, 1, 4, 2)], None, n), true),
        ("forms/branch-Y-product", |n| product(vec![EtaFactor::new(4, 1, 3, 0), EtaFactor::new(2, 1, 6, 0)], Some((4, 1)), n), false),
        (
            "forms/dXoverY-product",
            |n| product(vec![EtaFactor::new(4, -1, 1, 0), EtaFactor::new(4, -1, 2, 2), EtaFactor::new(8, -1, 3, 0)], Some((2, 0)), n),
            true,
        ),
        (
            "forms/XdXoverY-product",
            |n| product(vec![EtaFactor::new(4, -1, 1, 0), EtaFactor::new(4, 1, 2, 2), EtaFactor::new(8, -1, 3, 0)], Some((2, 0)), n),
            false,
        ),
    ];
    for (k, (id, make, first)) in products.into_iter().enumerate() {
        let c = ctx.clone();
        jobs.push(Job::new(id, "eta-product identities", move || {
            let cs = &c.charts()?[2];
            let n = c.cfg.truncation_order;
            let p = make(2 * n)?;
            let upto = 2 * n as i64 - if k < 2 { 0 } else { 2 };
            let sum = match k {
                0 | 1 => if first { cs.x.clone() } else { cs.y.clone() },
                _ => {
                    let w = cs.x.deriv().div(&cs.y).map_err(e2s)?;
                    if first { w } else { cs.x.mul(&w) }
                }
            };
            same_through(&sum, &p, upto)
        }));
    }
    let c = ctx.clone();
    jobs.push(Job::new("forms/theta1@inf", "divisor-sum series", move || {
        // all exponents are multiples of 8, so q -> zeta16 q flips the sign of q^(8k) for odd k
        let s = theta1_formal(&c.charts()?[3])?;
        let th = theta_and_divisor_series(SeriesKind::Theta3Pow4, c.cfg.truncation_order / 4).map_err(e2s)?;
        let upto = th.order().min(s.order());
        let bad = (0..upto).find(|&e| {
            let sign = if e % 16 == 8 { -1 } else { 1 };
            s.coeff(e).mul_int(sign) != th.coeff(e)
        });
        Ok(Outcome::exact(format!("theta3^4 coefficients below q^{upto} in q' = zeta16 q"), match bad {
            None => format!("theta3^4 coefficients below q^{upto} in q' = zeta16 q"),
            Some(e) => format!("differ at q^{e}"),
        }))
    }));
    let c = ctx.clone();
    jobs.push(Job::new("forms/theta1@cusp", "divisor-sum series", move || {
        // q -> zeta16^5 q turns 4 zeta8^7 (-i)^k into -4 on q^(2+4k)
        let s = theta1_formal(&c.charts()?[1])?.neg();
        let n = ((s.order() - 2) / 4).max(0) as usize;
        let sig = theta_and_divisor_series(SeriesKind::Sigma1Odd, n).map_err(e2s)?;
        let z = CycloQ::zeta8();
        let bad = (0..n as i64).find(|&k| {
            let e = 2 + 4 * k;
            let twist = z.pow(5 * (1 + 2 * k)).expect("unit");
            let v = (&s.coeff(e) * &twist).mul_int(-1);
            v != sig.coeff(4 * k).mul_int(4) || !s.coeff(e + 2).is_zero()
        });
        let want = format!("-4 sigma1(2k+1) on q^(2+4k) for k < {n}, in q' = zeta16^5 q");
        Ok(Outcome::exact(want.clone(), match bad {
            None if n > 30 => want,
            None => format!("only {n} terms"),
            Some(k) => format!("differ at k = {k}"),
        }))
    }));
    jobs.push(Job::new("forms/g2-series", "Eisenstein g2 series", || {
        let g = theta_and_divisor_series(SeriesKind::G2Eisenstein, 8).map_err(e2s)?;
        Ok(Outcome::exact("1/240, 1, 9, 28, 73, 126, 252", join(&g.coeffs[..7])))
    }));
    jobs.push(Job::new("forms/theta3^4-series", "divisor-sum series", || {
        let t = theta_and_divisor_series(SeriesKind::Theta3Pow4, 8).map_err(e2s)?;
        Ok(Outcome::exact("1, 8, 24, 32, 24, 48, 96, 64", join(&t.coeffs[..8])))
    }));
    jobs
}

fn poly(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

pub fn whittaker(ctx: &Arc<Ctx>) -> Vec<Job> {
    let mut jobs = Vec::new();
    let quintic_one = || HyperellipticCurve::from_normal_form(2, poly(&[1])).map_err(e2s);
    jobs.push(Job::new("whittaker/reduction-coefficient", "hypergeometric reduction", move || {
        let r = hypergeometric_reduce(&quintic_one()?).map_err(e2s)?;
        Ok(Outcome::exact("-6/25", r.coefficient.to_string()))
    }));
    jobs.push(Job::new("whittaker/reduction-exponents", "hypergeometric reduction", move || {
        let r = hypergeometric_reduce(&quintic_one()?).map_err(e2s)?;
        let got: Vec<String> = r.exponents.iter().map(|p| format!("{{{}, {}}}", p[0], p[1])).collect();
        Ok(Outcome::exact("{2/5, 3/5}, {2/5, 3/5}, {2/5, 3/5}", got.join(", ")))
    }));
    jobs.push(Job::new("whittaker/rotation-angle", "hypergeometric reduction", move || {
        let r = hypergeometric_reduce(&quintic_one()?).map_err(e2s)?;
        Ok(Outcome::exact("2/5", r.rotation_angle_over_pi.to_string()))
    }));
    for (k, (re, im)) in [(1.0 / 3.0, 0.0), (0.1, 0.4)].into_iter().enumerate() {
        let c = ctx.clone();
        jobs.push(Job::new(format!("whittaker/psi-solutions-{k}"), "hypergeometric reduction", move || {
            let s = hypergeometric_solutions_check(&cx(c.cfg.precision_bits, re, im), &c.tc).map_err(e2s)?;
            Ok(Outcome::residual(s.psi1.max(s.psi2), 1e-15, below(1e-15), format!("psi1 {:.3e}, psi2 {:.3e}", s.psi1, s.psi2)))
        }));
    }
    let curves: [(&str, fn() -> Result<HyperellipticCurve, String>); 4] = [
        ("x^5-x", || Ok(HyperellipticCurve::burnside())),
        ("x^5+x^4+1", || HyperellipticCurve::from_poly(poly(&[1, 0, 0, 0, 1, 1])).map_err(e2s)),
        ("x^7+2x^3-x+5", || HyperellipticCurve::from_poly(poly(&[5, -1, 0, 2, 0, 0, 0, 1])).map_err(e2s)),
        ("x^9+x^6-3x^2+1", || HyperellipticCurve::from_poly(poly(&[1, 0, -3, 0, 0, 0, 1, 0, 0, 1])).map_err(e2s)),
    ];
    for (name, make) in curves {
        jobs.push(Job::new(format!("whittaker/conjecture-{name}"), "accessory conjecture", move || {
            let curve = make()?;
            let same = WhittakerQ::conjectured(&curve).rational().same_as(&whittaker_q(&curve));
            Ok(Outcome::exact("Q(A = E''/(2g+1)) equals Whittaker's Q", if same { "Q(A = E''/(2g+1)) equals Whittaker's Q" } else { "differs" }))
        }));
    }
    jobs.push(Job::new("whittaker/fuchs-form-x^5-x", "accessory conjecture", || {
        let curve = HyperellipticCurve::burnside();
        let w = WhittakerQ { curve: curve.clone(), accessory: Poly::default() };
        let same = w.fuchs_form().same_as(&whittaker_q(&curve));
        Ok(Outcome::exact("A = 0 reproduces Q", if same { "A = 0 reproduces Q" } else { "differs" }))
    }));
    jobs.push(Job::new("whittaker/accessory-x^5+x^4", "accessory conjecture", || {
        let a = accessory_polynomial(2, &poly(&[0, 0, 0, 0, 1]));
        Ok(Outcome::exact("12/5 x^2", if a == poly(&[0, 0, 12]).scale(&CycloQ::frac(1, 5)) { "12/5 x^2".to_string() } else { format!("{a:?}") }))
    }));
    jobs.push(Job::new("whittaker/three-quarters", "Whittaker Q-function", || {
        let same = whittaker_q(&HyperellipticCurve::burnside()).same_as(&burnside_q().scale(&CycloQ::frac(3, 4)));
        Ok(Outcome::exact("Q_W = (3/4) Q_B", if same { "Q_W = (3/4) Q_B" } else { "differs" }))
    }));
    jobs.push(Job::new("whittaker/double-poles", "Whittaker Q-function", || {
        let curve = HyperellipticCurve::burnside();
        let pts = curve.branch_points.clone().expect("exact points");
        let w = partial_fractions(&whittaker_q(&curve), &pts).map_err(e2s)?;
        let b = partial_fractions(&burnside_q(), &pts).map_err(e2s)?;
        let got = format!(
            "Whittaker {}; Burnside {}",
            join(&w.iter().map(|t| t.double_pole.clone()).collect::<Vec<_>>()),
            join(&b.iter().map(|t| t.double_pole.clone()).collect::<Vec<_>>())
        );
        Ok(Outcome::exact("Whittaker -3/16, -3/16, -3/16, -3/16, -3/16; Burnside -1/4, -1/4, -1/4, -1/4, -1/4", got))
    }));
    jobs
}

pub fn conversion(ctx: &Arc<Ctx>) -> Vec<Job> {
    let mut jobs = Vec::new();
    jobs.push(Job::new("conversion/mu-coefficients", "conversion series", || {
        let s = conversion_ode_series(&Rational::from((-3, 8)), 6).map_err(e2s)?;
        Ok(Outcome::exact("1, -5/21, -78/833, 4001/39445, 168948/1711913, 42752022/491319031", join(&s.mu_coeffs()[..6])))
    }));
    jobs.push(Job::new("conversion/reversion-coefficients", "conversion series", || {
        let s = conversion_ode_series(&Rational::from((-3, 8)), 6).map_err(e2s)?;
        let q = s.q_coeffs().ok_or("no reversion")?;
        Ok(Outcome::exact("1, 5/21, 503/833, 4138924/2011695, 6383638315/785768067", join(&q[..5])))
    }));
    jobs.push(Job::new("conversion/eta4-integral-series", "conversion series", || {
        let s = conversion_ode_series(&Rational::from((-2, 3)), 24).map_err(e2s)?;
        let e = eta4_integral_series(24).map_err(e2s)?;
        Ok(Outcome::exact("c = -2/3 series equals (pi i/3) int eta^4", if s.mu_of_q == e { "c = -2/3 series equals (pi i/3) int eta^4" } else { "differs" }))
    }));
    for (k, (re, im)) in [(0.0, 2.0), (0.5, 1.2)].into_iter().enumerate() {
        let c = ctx.clone();
        jobs.push(Job::new(format!("conversion/quadrature-{k}"), "eta-integral quadrature", move || {
            let q = quadrature_check(&cx(c.cfg.precision_bits, re, im), &c.tc).map_err(e2s)?;
            Ok(Outcome::residual(
                q.series_vs_integral.max(q.schwarz_residual),
                c.tol(),
                below(c.tol()),
                format!("series vs integral {:.3e}, Schwarzian {:.3e}", q.series_vs_integral, q.schwarz_residual),
            ))
        }));
    }
    for (n, (re, im)) in [(-2, (0.0, 2.0)), (0, (0.3, 1.1)), (1, (1.0, 2.0))] {
        let c = ctx.clone();
        jobs.push(Job::new(format!("conversion/eta-ode-n{n}"), "eta-power ODE", move || {
            let r = eta_power_ode_check(n, &cx(c.cfg.precision_bits, re, im), &c.tc).map_err(e2s)?;
            Ok(Outcome::residual(r.residual, c.tol(), below(c.tol()), format!("{:.3e}", r.residual)))
        }));
    }
    jobs
}
