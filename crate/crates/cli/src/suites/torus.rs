use std::sync::Arc;

use burnside_uniform::curve::q_of_x;
use burnside_uniform::numeric::mp::{abs_f64, cx, rel_residual, sqrt2};
use burnside_uniform::numeric::CycloQ;
use burnside_uniform::torus::{
    abelian_differential_series, alpha_branch_chart, alpha_of_tau, cover_wp_of_x, lambda_fuchsian_q, lambda_q_by_transform,
    local_coefficients, q_whittaker_x, ramification_profile, renormalized, torus_fuchsian_q, torus_q_by_construction,
    xi_solution_check, BurnsideTorus, Direction, FuchsVariant,
};
use rug::{Complex, Float, Rational};

use super::{below, e2s, fmt, Ctx};
use crate::report::{Job, Outcome};

pub const OMEGA_DIGITS: &str = "2.118156723947863188505038347005";

/// `d alpha+/(M dq)` through `q^58`: `(exponent, coefficient, times sqrt 2 - 1)`.
pub const D_ALPHA_TABLE: [(i64, i64, bool); 15] = [
    (0, 1, false),
    (2, -2, true),
    (8, -1, false),
    (10, 6, true),
    (16, -6, false),
    (18, -2, true),
    (24, 5, false),
    (26, -4, true),
    (32, 12, false),
    (40, -6, false),
    (42, -10, true),
    (48, -7, false),
    (50, 12, true),
    (56, -4, false),
    (58, 6, true),
];

fn variant_name(v: FuchsVariant) -> &'static str {
    match v {
        FuchsVariant::Burnside => "burnside",
        FuchsVariant::Whittaker => "whittaker",
    }
}

pub fn cover(ctx: &Arc<Ctx>) -> Vec<Job> {
    let mut jobs = Vec::new();
    for (name, d) in [("alpha-to-x", Direction::AlphaToX), ("x-to-alpha", Direction::XToAlpha)] {
        jobs.push(Job::new(format!("cover/riemann-hurwitz-{name}"), "Riemann-Hurwitz", move || {
            let r = ramification_profile(d).map_err(e2s)?;
            Ok(Outcome::exact("2 sheets, genus 2", format!("{} sheets, genus {}", r.sheets, r.genus_cover)))
        }));
    }
    let c = ctx.clone();
    jobs.push(Job::new("cover/omega", "torus period", move || {
        let t = c.torus()?;
        let want = Float::with_val(c.cfg.precision_bits, Float::parse(OMEGA_DIGITS).expect("literal"));
        let d = Float::with_val(c.cfg.precision_bits, t.omega.real() - &want).abs().to_f64();
        // the literal carries 31 digits; 30 must agree
        Ok(Outcome::residual(d, 5e-30, OMEGA_DIGITS, fmt(&t.omega)))
    }));
    let c = ctx.clone();
    jobs.push(Job::new("cover/aleph", "branch locus aleph", move || {
        let t = c.torus()?;
        let re = t.aleph.point.real().to_f64().abs();
        let got = if re < 1e-60 { format!("{}i", t.aleph.point.imag().to_string_radix(10, Some(12))) } else { fmt(&t.aleph.point) };
        Ok(Outcome::exact("3.90699665709e-1i", got))
    }));
    let c = ctx.clone();
    jobs.push(Job::new("cover/two-omega-prime-minus-aleph", "branch locus aleph", move || {
        let t = c.torus()?;
        let v = Complex::with_val(t.prec(), Complex::with_val(t.prec(), &t.omega_prime * 2u32) - &t.aleph.point);
        Ok(Outcome::exact("2.604826300529i", format!("{}i", v.imag().to_string_radix(10, Some(13)))))
    }));
    let c = ctx.clone();
    jobs.push(Job::new("cover/wp-aleph", "branch locus aleph", move || {
        let t = c.torus()?;
        let want = BurnsideTorus::wp_aleph_exact();
        Ok(Outcome::residual(rel_residual(&t.aleph.wp, &want.embed(t.prec())), c.tol(), want.to_string(), fmt(&t.aleph.wp)))
    }));
    let c = ctx.clone();
    jobs.push(Job::new("cover/wp-prime-aleph", "branch locus aleph", move || {
        let t = c.torus()?;
        let want = BurnsideTorus::wp_prime_aleph_stated(t.prec());
        Ok(Outcome::residual(rel_residual(&t.aleph.wp_prime, &want), c.tol(), format!("32^(1/4)(7 + 5 sqrt 2) i = {}", fmt(&want)), fmt(&t.aleph.wp_prime)))
    }));
    let c = ctx.clone();
    jobs.push(Job::new("cover/wp-of-x", "cover map", move || {
        let t = c.torus()?;
        let p = t.prec();
        let isi = CycloQ::zeta8().pow(3).map_err(e2s)?.embed(p);
        let r1 = rel_residual(&cover_wp_of_x(&cx(p, 1.0, 0.0), t).map_err(e2s)?, &t.e.embed(p));
        let r2 = rel_residual(&cover_wp_of_x(&-isi.clone(), t).map_err(e2s)?, &t.e_dprime.embed(p));
        let r3 = rel_residual(&cover_wp_of_x(&isi, t).map_err(e2s)?, &BurnsideTorus::wp_aleph_exact().embed(p));
        Ok(Outcome::residual(r1.max(r2).max(r3), c.tol(), "wp = e, e'', wp(aleph) at x = 1, -i sqrt i, i sqrt i", format!("{r1:.3e}, {r2:.3e}, {r3:.3e}")))
    }));
    for (k, (re, im)) in [(0.3, 0.8), (0.0, 1.1)].into_iter().enumerate() {
        for basis in [(1, 0), (0, 1)] {
            let c = ctx.clone();
            jobs.push(Job::new(format!("cover/xi-{k}-{}{}", basis.0, basis.1), "Xi solutions", move || {
                let t = c.torus_w()?;
                let r = xi_solution_check(t, &cx(c.cfg.precision_bits, re, im), basis, &c.tc).map_err(e2s)?;
                Ok(Outcome::residual(r.residual, 1e-10, below(1e-10), format!("{:.3e}", r.residual)))
            }));
        }
    }
    jobs.push(Job::new("cover/dalpha-table", "abelian differential series", || {
        let ab = abelian_differential_series(40).map_err(e2s)?;
        let g = &CycloQ::sqrt2() - &CycloQ::one();
        let bad = (0..60).find(|&e| {
            let want = match D_ALPHA_TABLE.iter().find(|r| r.0 == e) {
                Some(&(_, c, true)) => g.mul_int(c),
                Some(&(_, c, false)) => CycloQ::from_int(c),
                None => CycloQ::zero(),
            };
            ab.d_alpha.coeff(e) != want
        });
        Ok(Outcome::exact("table through q^58", match bad {
            None => "table through q^58".to_string(),
            Some(e) => format!("q^{e}: {}", ab.d_alpha.coeff(e)),
        }))
    }));
    jobs.push(Job::new("cover/alpha-antiderivative", "abelian differential series", || {
        let ab = abelian_differential_series(40).map_err(e2s)?;
        let ok = ab.alpha.deriv().truncate(60) == ab.d_alpha.truncate(60) && ab.alpha.coeff(0).is_zero();
        Ok(Outcome::exact("d/dq of alpha series is the d alpha series", if ok { "d/dq of alpha series is the d alpha series" } else { "differs" }))
    }));
    for (k, (re, im)) in [(0.501, 0.02), (0.499, 0.025)].into_iter().enumerate() {
        let c = ctx.clone();
        jobs.push(Job::new(format!("cover/alpha-series-{k}"), "abelian differential series", move || {
            let t = c.torus()?;
            let p = t.prec();
            let ab = abelian_differential_series(40).map_err(e2s)?;
            let m = Complex::with_val(p, sqrt2(p) + 1u32).sqrt() * 2u32;
            let tau = cx(p, re, im);
            let (s, _) = ab.alpha.numeric_eval(&alpha_branch_chart(), &tau, 0.5).map_err(e2s)?;
            let ser = Complex::with_val(p, &s * &m) + &t.omega;
            let a = alpha_of_tau(t, &tau, 1, Some(&ser)).map_err(e2s)?;
            Ok(Outcome::residual(abs_f64(&Complex::with_val(p, &a - &ser)), 1e-15, fmt(&a), fmt(&ser)))
        }));
    }
    jobs
}

pub fn fuchsian(ctx: &Arc<Ctx>) -> Vec<Job> {
    let mut jobs = Vec::new();
    for v in [FuchsVariant::Burnside, FuchsVariant::Whittaker] {
        let c = ctx.clone();
        jobs.push(Job::new(format!("torus-fuchsian/{}-zeta-vs-wp", variant_name(v)), "torus Fuchsian equation", move || {
            let t = c.torus()?;
            let mut worst = (0.0, String::new());
            for a in c.alphas()? {
                let f = torus_fuchsian_q(t, a, v).map_err(e2s)?;
                if f.residual() >= worst.0 {
                    worst = (f.residual(), format!("zeta form {} vs wp form {} at alpha = {}", fmt(&f.zeta_form), fmt(&f.wp_form), fmt(a)));
                }
            }
            Ok(Outcome::residual(worst.0, c.tol(), "zeta form = wp form at 20 samples", worst.1))
        }));
        let c = ctx.clone();
        jobs.push(Job::new(format!("torus-fuchsian/{}-construction", variant_name(v)), "torus Fuchsian equation", move || {
            let t = c.torus()?;
            let mut worst: f64 = 0.0;
            for a in c.alphas()? {
                let f = torus_fuchsian_q(t, a, v).map_err(e2s)?;
                worst = worst.max(rel_residual(&f.wp_form, &torus_q_by_construction(t, a, v).map_err(e2s)?));
            }
            Ok(Outcome::residual(worst, c.tol(), below(c.tol()), format!("{worst:.3e}")))
        }));
        let c = ctx.clone();
        jobs.push(Job::new(format!("torus-fuchsian/{}-local-coefficients", variant_name(v)), "local exponents", move || {
            let cs = local_coefficients(c.torus()?, v).map_err(e2s)?;
            let exact: Vec<String> = cs.iter().map(|l| format!("{}: {}", l.point, l.double_pole)).collect();
            let numeric = cs
                .iter()
                .map(|l| {
                    let (re2, im2, re1, im1) = l.numeric;
                    (re2 - l.double_pole.to_f64()).abs().max(im2.abs()).max((re1 - l.residue_over_r8i.to_f64()).abs()).max(im1.abs())
                })
                .fold(0.0, f64::max);
            let want = match v {
                FuchsVariant::Burnside => "0: -1/4, omega: -1/4, omega': -1/4, aleph: -3/16, -aleph: -3/16",
                FuchsVariant::Whittaker => "aleph: -3/16, -aleph: -3/16",
            };
            let got = exact.join(", ");
            let mut out = Outcome::exact(want, format!("{got} (contour integrals agree to {numeric:.1e})"));
            out.expected = format!("{want} (contour integrals agree to < 1e-30)");
            if got != want || numeric >= 1e-30 {
                out.status = crate::Status::Fail;
            } else {
                out.status = crate::Status::Pass;
            }
            out.residual = Some(numeric);
            Ok(out)
        }));
    }
    let c = ctx.clone();
    jobs.push(Job::new("torus-fuchsian/zeta-tilde", "renormalized accessory constant", move || {
        let r = renormalized(c.torus()?).map_err(e2s)?;
        let d = (r.zeta_tilde.real().to_f64() - 3.83102282421).abs() + r.zeta_tilde.imag().to_f64().abs();
        Ok(Outcome::residual(d, 1e-11, "3.83102282421", fmt(&r.zeta_tilde)))
    }));
    let c = ctx.clone();
    jobs.push(Job::new("torus-fuchsian/accessory-constant", "renormalized accessory constant", move || {
        let r = renormalized(c.torus()?).map_err(e2s)?;
        Ok(Outcome::residual(rel_residual(&r.accessory, &r.scaled_free_term), c.tol(), fmt(&r.scaled_free_term), fmt(&r.accessory)))
    }));
    for (k, (re, im)) in [(2.0, 0.0), (0.4, 0.9), (-3.0, 0.5)].into_iter().enumerate() {
        let c = ctx.clone();
        jobs.push(Job::new(format!("torus-fuchsian/lambda-equation-{k}"), "lambda equation", move || {
            let l = cx(c.cfg.precision_bits, re, im);
            let a = lambda_fuchsian_q(&l).map_err(e2s)?;
            let b = lambda_q_by_transform(&l, FuchsVariant::Burnside).map_err(e2s)?;
            Ok(Outcome::residual(rel_residual(&a, &b), c.tol(), fmt(&b), fmt(&a)))
        }));
    }
    let c = ctx.clone();
    jobs.push(Job::new("torus-fuchsian/whittaker-ratio", "Whittaker Q-function", move || {
        let p = c.cfg.precision_bits;
        let mut worst: f64 = 0.0;
        for (re, im) in [(0.3, 0.2), (2.0, -1.0), (-0.7, 0.4)] {
            let x = cx(p, re, im);
            worst = worst.max(rel_residual(&q_whittaker_x(&x), &(q_of_x(&x) * Rational::from((3, 4)))));
        }
        Ok(Outcome::residual(worst, c.tol(), "Q_W(x) = (3/4) Q_B(x)", format!("{worst:.3e}")))
    }));
    jobs
}
