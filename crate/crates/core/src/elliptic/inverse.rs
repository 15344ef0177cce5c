//! Inversion of `wp` and recovery of half-periods from invariants.

use rug::{Complex, Float};

use super::{HalfPeriods, LatticeParams};
use crate::numeric::mp::{abs, abs_diff, abs_f64};
use crate::{Error, Result};

/// Carlson's symmetric integral `R_F(x, y, z)` by duplication.
pub fn carlson_rf(x: &Complex, y: &Complex, z: &Complex) -> Result<Complex> {
    let p = x.prec().0;
    let (mut x, mut y, mut z) = (x.clone(), y.clone(), z.clone());
    let tol = 2f64.powi(-(p as i32) / 6).max(1e-300);
    for _ in 0..(8 * p) {
        let sx = Complex::with_val(p, x.sqrt_ref());
        let sy = Complex::with_val(p, y.sqrt_ref());
        let sz = Complex::with_val(p, z.sqrt_ref());
        let lam = Complex::with_val(p, &sx * &sy) + Complex::with_val(p, &sy * &sz) + Complex::with_val(p, &sz * &sx);
        x = (x + &lam) / 4u32;
        y = (y + &lam) / 4u32;
        z = (z + &lam) / 4u32;
        let a = Complex::with_val(p, &x + &y) + &z;
        let a = a / 3u32;
        let aa = abs_f64(&a);
        let dx = abs_diff(&x, &a) / aa;
        let dy = abs_diff(&y, &a) / aa;
        let dz = abs_diff(&z, &a) / aa;
        if dx.max(dy).max(dz) < tol {
            let xx = Complex::with_val(p, &a - &x) / &a;
            let yy = Complex::with_val(p, &a - &y) / &a;
            let zz = -Complex::with_val(p, &xx + &yy);
            let e2 = Complex::with_val(p, &xx * &yy) - Complex::with_val(p, zz.square_ref());
            let e3 = Complex::with_val(p, &xx * &yy) * &zz;
            let e2sq = Complex::with_val(p, e2.square_ref());
            let series = Complex::with_val(p, 1) - Complex::with_val(p, &e2 / 10u32)
                + Complex::with_val(p, &e3 / 14u32)
                + Complex::with_val(p, &e2sq / 24u32)
                - Complex::with_val(p, &e2 * &e3) * 3u32 / 44u32;
            return Ok(series / a.sqrt());
        }
    }
    Err(Error::NoConvergence("carlson R_F".into()))
}

/// Representative of `s*w0 + lattice`, `s = +-1`, nearest to `hint`.
fn nearest_image(hp: &HalfPeriods, w0: &Complex, hint: &Complex, allow_sign: bool) -> Complex {
    let p = hint.prec().0;
    let mut best: Option<(f64, Complex)> = None;
    let signs: &[i32] = if allow_sign { &[1, -1] } else { &[1] };
    for &s in signs {
        let base = if s == 1 { w0.clone() } else { -w0.clone() };
        let (m0, n0) = hp.cell_of(&Complex::with_val(p, hint - &base));
        for dm in -1..=1 {
            for dn in -1..=1 {
                let c = Complex::with_val(p, &base + hp.lattice_point(m0 + dm, n0 + dn));
                let d = abs_diff(&c, hint);
                if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                    best = Some((d, c));
                }
            }
        }
    }
    best.expect("candidates").1
}

/// Solve `wp(z) = v` for the representative nearest `branch_hint`.
///
/// A seed from `R_F(v - e, v - e', v - e'')` is refined by Newton's method on
/// `wp`; when the seed does not reproduce `v` the hint itself seeds Newton.
pub fn wp_inverse(v: &Complex, lp: &LatticeParams, branch_hint: &Complex) -> Result<Complex> {
    let p = lp.prec();
    let hp = &lp.half_periods;
    let v = Complex::with_val(p, v);
    let lo = 96;
    let seed_raw = carlson_rf(
        &Complex::with_val(lo, &v - &lp.e),
        &Complex::with_val(lo, &v - &lp.e_prime),
        &Complex::with_val(lo, &v - &lp.e_dprime),
    )
    .ok()
    .map(|s| Complex::with_val(p, s));
    let scale = abs_f64(&v).max(1.0);
    let mut z = match seed_raw {
        Some(s) if lp.wp(&s).map(|w| abs_diff(&w, &v) < 1e-8 * scale).unwrap_or(false) => {
            nearest_image(hp, &s, &Complex::with_val(p, branch_hint), true)
        }
        _ => Complex::with_val(p, branch_hint),
    };
    let tol = Float::with_val(p, Float::i_exp(1, -(p as i32) + 6));
    let mut converged = false;
    for _ in 0..200 {
        let (w, wpr) = lp.wp_pair(&z)?;
        let r = Complex::with_val(p, &w - &v);
        if abs(&r) <= Float::with_val(p, &tol * scale) {
            converged = true;
            break;
        }
        if wpr.is_zero() {
            break;
        }
        let step = Complex::with_val(p, &r / &wpr);
        z -= &step;
        if abs(&step) <= Float::with_val(p, &tol * abs(&z).max(&Float::with_val(p, 1))) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("wp inverse Newton refinement".into()));
    }
    Ok(nearest_image(hp, &z, &Complex::with_val(p, branch_hint), false))
}

/// Half-periods of the lattice with invariants `(g2, g3)`.
///
/// Roots `e_j` of `4t^3 - g2 t - g3` give half-periods `R_F(0, e_j - e_k, e_j - e_l)`;
/// the resulting basis is oriented and checked against the invariants.
pub fn half_periods_from_invariants(g2: &Complex, g3: &Complex) -> Result<HalfPeriods> {
    let p = g2.prec().0;
    let roots = cubic_roots(g2, g3);
    let w1 = carlson_rf(
        &Complex::new(p),
        &Complex::with_val(p, &roots[0] - &roots[1]),
        &Complex::with_val(p, &roots[0] - &roots[2]),
    )?;
    let w2 = carlson_rf(
        &Complex::new(p),
        &Complex::with_val(p, &roots[1] - &roots[0]),
        &Complex::with_val(p, &roots[1] - &roots[2]),
    )?;
    let tol = 2f64.powi(-(p as i32) / 2) * (abs_f64(g2) + abs_f64(g3)).max(1.0);
    for (a, b) in [(w1.clone(), w2.clone()), (w2.clone(), w1.clone())] {
        for s in [1i32, -1] {
            let b2 = if s == 1 { b.clone() } else { -b.clone() };
            if let Ok(hp) = HalfPeriods::new(a.clone(), b2) {
                let lp = LatticeParams::new(&hp)?;
                if abs_diff(&lp.g2, g2) < tol && abs_diff(&lp.g3, g3) < tol {
                    return Ok(hp);
                }
            }
        }
    }
    Err(Error::NoConvergence("half-periods from invariants".into()))
}

/// Roots of `4t^3 - g2 t - g3` by Newton polishing of Cardano's formula.
fn cubic_roots(g2: &Complex, g3: &Complex) -> [Complex; 3] {
    let p = g2.prec().0;
    // t^3 + P t + Q with P = -g2/4, Q = -g3/4
    let pp = -Complex::with_val(p, g2 / 4u32);
    let qq = -Complex::with_val(p, g3 / 4u32);
    let half_q = Complex::with_val(p, &qq / 2u32);
    let disc = Complex::with_val(p, half_q.square_ref()) + Complex::with_val(p, pp.square_ref()) * &pp / 27u32;
    let mut u3 = -half_q.clone() + disc.sqrt();
    if abs_f64(&u3) < 1e-30 {
        u3 = -half_q.clone() * 2u32;
    }
    let third = Complex::with_val(p, rug::Rational::from((1, 3)));
    let u = if u3.is_zero() { Complex::new(p) } else { rug::ops::Pow::pow(u3, &third) };
    let omega3 = Complex::with_val(p, (Float::with_val(p, -0.5), Float::with_val(p, 3).sqrt() / 2u32));
    let mut out: [Complex; 3] = std::array::from_fn(|_| Complex::new(p));
    let mut uk = u;
    for slot in out.iter_mut() {
        let t = if uk.is_zero() {
            Complex::new(p)
        } else {
            Complex::with_val(p, &uk - Complex::with_val(p, &pp / &uk) / 3u32)
        };
        *slot = polish(t, &pp, &qq);
        uk *= &omega3;
    }
    out
}

fn polish(mut t: Complex, pp: &Complex, qq: &Complex) -> Complex {
    let p = t.prec().0;
    for _ in 0..60 {
        let t2 = Complex::with_val(p, t.square_ref());
        let f = Complex::with_val(p, &t2 * &t) + Complex::with_val(p, pp * &t) + qq;
        let df = t2 * 3u32 + pp;
        if df.is_zero() {
            break;
        }
        let step = f / df;
        let small = abs_f64(&step) <= 2f64.powi(-(p as i32)) * abs_f64(&t).max(1.0);
        t -= step;
        if small {
            break;
        }
    }
    t
}
