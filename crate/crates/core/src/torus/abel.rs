use rug::Complex;
use serde::Serialize;

use super::ramify::x_of_wp;
use super::{torus_fuchsian_q, BurnsideTorus, FuchsVariant};
use crate::curve::{meromorphic_derivative, x_derivatives_closed, BurnsideState};
use crate::elliptic::{complete_elliptic_k, wp_inverse, LatticeParams};
use crate::numeric::diff::{default_step, derivative2, derivatives3};
use crate::numeric::mp::{abs_f64, i_c, nearest, rel_residual, ser_complex, sqrt2, sqrt_near};
use crate::numeric::quad::tanh_sinh;
use crate::numeric::{CycloQ, ToleranceConfig};
use crate::series::{burnside_chart_series, ChartKind, CuspChart, LaurentSeries};
use crate::{Error, Result};

/// Sheet of the cover: `+` is the torus with `g3 = -(7/27) sqrt 2`.
fn sheet_lattice(t: &BurnsideTorus, sheet: i32) -> Result<LatticeParams> {
    if sheet > 0 {
        return Ok(t.lp.clone());
    }
    let p = t.prec();
    LatticeParams::new(&t.lp.half_periods.scaled(&i_c(p))?)
}

/// `(1 +- sqrt 2)(1 - i) x/((x - i)(x + 1)) - (3 +- sqrt 2)/6`.
pub fn cover_argument(x: &Complex, sheet: i32) -> Result<Complex> {
    let p = x.prec().0;
    let i = i_c(p);
    let s = Complex::with_val(p, sqrt2(p) * sheet.signum());
    let den = Complex::with_val(p, x - &i) * Complex::with_val(p, x + 1u32);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let num = Complex::with_val(p, &s + 1u32) * Complex::with_val(p, 1u32 - &i) * x;
    Ok(num / den - Complex::with_val(p, &s + 3u32) / 6u32)
}

/// `alpha(tau)` on the given sheet, the representative nearest `hint` when one is given.
pub fn alpha_of_tau(t: &BurnsideTorus, tau: &Complex, sheet: i32, hint: Option<&Complex>) -> Result<Complex> {
    let p = t.prec();
    let tau = Complex::with_val(p, tau);
    let x = BurnsideState::new(&tau)?.x;
    let v = cover_argument(&x, sheet)?;
    let lp = sheet_lattice(t, sheet)?;
    let h = hint.cloned().unwrap_or_else(|| Complex::with_val(p, (0.3, 0.3)));
    let a = wp_inverse(&v, &lp, &h)?;
    Ok(match hint {
        Some(h) => nearest_rep(&lp, &a, h),
        None => a,
    })
}

/// The point among `+-z + 2m omega + 2n omega'` closest to `target`.
pub(crate) fn nearest_rep(lp: &LatticeParams, z: &Complex, target: &Complex) -> Complex {
    let p = z.prec().0;
    let hp = &lp.half_periods;
    let mut best: Option<(f64, Complex)> = None;
    for s in [1i32, -1] {
        let zz = Complex::with_val(p, z * s);
        let (m, n) = hp.cell_of(&Complex::with_val(p, target - &zz));
        for dm in -1..=1 {
            for dn in -1..=1 {
                let c = Complex::with_val(p, &zz + hp.lattice_point(m + dm, n + dn));
                let d = abs_f64(&Complex::with_val(p, &c - target));
                if best.as_ref().map_or(true, |b| d < b.0) {
                    best = Some((d, c));
                }
            }
        }
    }
    best.unwrap().1
}

/// `[alpha, tau]` by finite differences against the two forms of `Q(alpha)`.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaSchwarz {
    #[serde(serialize_with = "ser_complex")]
    pub alpha: Complex,
    #[serde(serialize_with = "ser_complex")]
    pub lhs: Complex,
    /// Residual against the stated zeta form.
    pub zeta_form_residual: f64,
    /// Residual against the `1/(wp(alpha) - wp(aleph))` form.
    pub wp_form_residual: f64,
}

/// `t` should carry the working precision of `tc`.
pub fn alpha_schwarz_residual(t: &BurnsideTorus, tau: &Complex, tc: &ToleranceConfig) -> Result<AlphaSchwarz> {
    let p = t.prec();
    let tau = Complex::with_val(p, tau);
    let a0 = alpha_of_tau(t, &tau, 1, None)?;
    let f = |s: &Complex| alpha_of_tau(t, s, 1, Some(&a0));
    let h = Complex::with_val(p, default_step(tc.precision_bits));
    let lhs = meromorphic_derivative(f, &tau, &h)?;
    let forms = torus_fuchsian_q(t, &a0, FuchsVariant::Burnside)?;
    let z = Complex::with_val(p, &forms.zeta_form * 2u32);
    let w = Complex::with_val(p, &forms.wp_form * 2u32);
    Ok(AlphaSchwarz {
        zeta_form_residual: rel_residual(&lhs, &z),
        wp_form_residual: rel_residual(&lhs, &w),
        alpha: a0,
        lhs,
    })
}

/// `i sqrt i = zeta8^3`.
fn i_sqrt_i(p: u32) -> Complex {
    CycloQ::zeta8().pow(3).expect("unit").embed(p)
}

/// `d alpha+/d tau` against `((X - i sqrt i)/sqrt(1+i)) X_tau / Y`; returns the residual and the sign relating them.
pub fn d_alpha_check(t: &BurnsideTorus, tau: &Complex, tc: &ToleranceConfig) -> Result<(f64, i32)> {
    let p = t.prec();
    let tau = Complex::with_val(p, tau);
    let a0 = alpha_of_tau(t, &tau, 1, None)?;
    let f = |s: &Complex| alpha_of_tau(t, s, 1, Some(&a0));
    let h = Complex::with_val(p, default_step(tc.precision_bits));
    let d = derivatives3(f, &tau, &h, 6)?;
    let st = BurnsideState::new(&tau)?;
    let xt = x_derivatives_closed(&st)?[0].clone();
    let s1i = Complex::with_val(p, i_c(p) + 1u32).sqrt();
    let rhs = Complex::with_val(p, &st.x - i_sqrt_i(p)) / s1i * xt / &st.y;
    let rp = rel_residual(&d[0], &rhs);
    let rm = rel_residual(&d[0], &Complex::with_val(p, -&rhs));
    Ok(if rp <= rm { (rp, 1) } else { (rm, -1) })
}

/// Residuals of the two equations linking `(x, y)` and `(wp(alpha), wp'(alpha))`,
/// with the sign of `x +- i sqrt i` that makes the second hold.
pub fn palpha_residual(t: &BurnsideTorus, x: &Complex, y: &Complex, alpha: &Complex) -> Result<(f64, f64, i32)> {
    let p = t.prec();
    let i = i_c(p);
    let (w, w1) = t.lp.wp_pair(alpha)?;
    let e = t.e.embed(p);
    let ep = t.e_prime.embed(p);
    let ratio = (Complex::with_val(p, &w + &ep) - Complex::with_val(p, &e * 2u32)) / Complex::with_val(p, &w - &ep);
    let rhs1 = Complex::with_val(p, &i - 1u32) * ratio * x + &i;
    let r1 = rel_residual(&Complex::with_val(p, x.square_ref()), &rhs1);
    let c = Complex::with_val(p, &e * 6u32) + 2u32;
    let s1i = Complex::with_val(p, &i + 1u32).sqrt();
    let den = Complex::with_val(p, x - &i).square() * Complex::with_val(p, x + 1u32).square();
    let base = -(c / s1i) * y / den;
    let mut best = (f64::INFINITY, 0);
    for s in [1i32, -1] {
        let v = Complex::with_val(p, &base * Complex::with_val(p, x + Complex::with_val(p, i_sqrt_i(p) * s)));
        let r = rel_residual(&w1, &v);
        if r < best.0 {
            best = (r, s);
        }
    }
    Ok((r1, best.0, best.1))
}

/// Ξ(alpha) checked against `Xi'' = (1/2) Q(alpha) Xi` by finite differences.
#[derive(Clone, Debug, Serialize)]
pub struct XiCheck {
    pub residual: f64,
    #[serde(serialize_with = "ser_complex")]
    pub x: Complex,
    /// Sign in `x +- i sqrt i` of the `wp'` relation used to recover `y`.
    pub palpha_sign: i32,
}

/// `K(m)`, continued across the cut `m > 1` from the upper half plane within a thin wedge around it.
fn k_upper(m: &Complex) -> Result<Complex> {
    let p = m.prec().0;
    if *m.real() <= 1 || abs_f64(&Complex::with_val(p, m.imag())) > 1e-3 * abs_f64(m) {
        return complete_elliptic_k(m);
    }
    let cont = |z: &Complex, s: i32| -> Result<Complex> {
        let inv = Complex::with_val(p, z.recip_ref());
        let a = complete_elliptic_k(&inv)?;
        let b = complete_elliptic_k(&Complex::with_val(p, 1u32 - &inv))?;
        Ok((a + b * i_c(p) * s) / Complex::with_val(p, z).sqrt())
    };
    let probe = Complex::with_val(p, (m.real(), 1e-2 * abs_f64(m)));
    let k = complete_elliptic_k(&probe)?;
    let s = if rel_residual(&cont(&probe, 1)?, &k) < rel_residual(&cont(&probe, -1)?, &k) { 1 } else { -1 };
    cont(m, s)
}

/// `sqrt((x - i sqrt i) y) (A K(x^2) + B K'(x^2))`, `K` of modulus `x^2`.
pub fn xi_solution_check(t: &BurnsideTorus, alpha: &Complex, coeffs: (i64, i64), tc: &ToleranceConfig) -> Result<XiCheck> {
    let p = t.prec();
    let alpha = Complex::with_val(p, alpha);
    let isi = i_sqrt_i(p);
    let c = Complex::with_val(p, t.e.embed(p) * 6u32) + 2u32;
    let s1i = Complex::with_val(p, i_c(p) + 1u32).sqrt();
    let i = i_c(p);
    let point = |a: &Complex, xprev: &Complex| -> Result<(Complex, Complex)> {
        let (w, w1) = t.lp.wp_pair(a)?;
        let xs = x_of_wp(t, &w);
        let x = nearest(&xs, xprev).clone();
        let den = Complex::with_val(p, &x - &i).square() * Complex::with_val(p, &x + 1u32).square();
        let y = -(w1 * &s1i * den) / (Complex::with_val(p, &c * Complex::with_val(p, &x + &isi)));
        Ok((x, y))
    };
    let (w0, _) = t.lp.wp_pair(&alpha)?;
    let x0 = x_of_wp(t, &w0)[0].clone();
    let (x0, y0) = point(&alpha, &x0)?;
    let r0 = Complex::with_val(p, Complex::with_val(p, &x0 - &isi) * &y0).sqrt();
    let (ca, cb) = coeffs;
    let xi = |a: &Complex| -> Result<Complex> {
        let (x, y) = point(a, &x0)?;
        let r = sqrt_near(&Complex::with_val(p, Complex::with_val(p, &x - &isi) * &y), &r0);
        let m = Complex::with_val(p, x.square_ref()).square();
        let k = k_upper(&m)?;
        let kp = k_upper(&Complex::with_val(p, 1u32 - &m))?;
        Ok(r * (k * ca + kp * cb))
    };
    let h = Complex::with_val(p, default_step(tc.precision_bits));
    let (centre, d2) = derivative2(xi, &alpha, &h, 6)?;
    let q = torus_fuchsian_q(t, &alpha, FuchsVariant::Burnside)?.wp_form;
    let rhs = q * &centre;
    let scale = abs_f64(&rhs).max(abs_f64(&d2)).max(1e-300);
    let residual = abs_f64(&Complex::with_val(p, &d2 - &rhs)) / scale;
    let (_, _, palpha_sign) = palpha_residual(t, &x0, &y0, &alpha)?;
    Ok(XiCheck { residual, x: x0, palpha_sign })
}

/// Quadrature of `(x - i sqrt i)/sqrt(x^5 - x)` along a path against `sqrt(1+i)` times the `wp^-1` difference.
#[derive(Clone, Debug, Serialize)]
pub struct HoloCheck {
    #[serde(serialize_with = "ser_complex")]
    pub integral: Complex,
    #[serde(serialize_with = "ser_complex")]
    pub alpha_difference: Complex,
    /// Distance of `integral/sqrt(1+i) -+ difference` from the period lattice.
    pub residual: f64,
    /// Lattice coordinates of the remainder.
    pub lattice: (i64, i64),
}

pub fn holo_integral_check(t: &BurnsideTorus, path: &[Complex], tol: f64) -> Result<HoloCheck> {
    if path.len() < 2 {
        return Err(Error::InvalidInput("path needs two points".into()));
    }
    let p = t.prec();
    let isi = i_sqrt_i(p);
    let mut prev = crate::curve::quintic(&path[0]).sqrt();
    let mut integral = Complex::new(p);
    for seg in path.windows(2) {
        let n = 64;
        let mut anchors = Vec::with_capacity(n + 1);
        anchors.push((seg[0].clone(), prev.clone()));
        for k in 1..=n {
            let z = Complex::with_val(p, &seg[0] + Complex::with_val(p, &seg[1] - &seg[0]) * k as u32 / n as u32);
            let y = sqrt_near(&crate::curve::quintic(&z), &anchors[k - 1].1);
            anchors.push((z, y));
        }
        let f = |z: &Complex| -> Result<Complex> {
            let near = anchors
                .iter()
                .min_by(|a, b| abs_f64(&Complex::with_val(p, &a.0 - z)).total_cmp(&abs_f64(&Complex::with_val(p, &b.0 - z))))
                .expect("anchors");
            let y = sqrt_near(&crate::curve::quintic(z), &near.1);
            Ok(Complex::with_val(p, z - &isi) / y)
        };
        integral += tanh_sinh(&f, &seg[0], &seg[1], tol)?;
        prev = anchors[n].1.clone();
    }
    let s1i = Complex::with_val(p, i_c(p) + 1u32).sqrt();
    let a0 = wp_inverse(&cover_argument(&path[0], 1)?, &t.lp, &Complex::with_val(p, (0.3, 0.3)))?;
    let a1 = wp_inverse(&cover_argument(path.last().expect("path"), 1)?, &t.lp, &Complex::with_val(p, (0.3, 0.3)))?;
    let target = Complex::with_val(p, &integral / &s1i);
    let mut best: Option<(f64, Complex, (i64, i64))> = None;
    for s0 in [1i32, -1] {
        for s1 in [1i32, -1] {
            let d = Complex::with_val(p, &a1 * s1) - Complex::with_val(p, &a0 * s0);
            let rem = Complex::with_val(p, &target - &d);
            let (m, n) = t.lp.half_periods.cell_of(&rem);
            let off = Complex::with_val(p, &rem - t.lp.half_periods.lattice_point(m, n));
            let r = abs_f64(&off);
            if best.as_ref().map_or(true, |b| r < b.0) {
                best = Some((r, d, (m, n)));
            }
        }
    }
    let (residual, alpha_difference, lattice) = best.expect("candidates");
    Ok(HoloCheck { integral, alpha_difference, residual, lattice })
}

/// The chart `q = exp((pi i/4)(tau - 1)/(2 tau - 1))` at `(alpha, x) = (omega, 1)`.
pub fn alpha_branch_chart() -> CuspChart {
    CuspChart { a: 1, b: -1, c: 2, d: -1, cusp: "1/2", approach: "tau -> 1/2 + i0", kind: ChartKind::Branch(CycloQ::one()) }
}

/// The differentials of the chart `alpha_branch_chart`, as coefficients of `dq`.
#[derive(Clone, Debug)]
pub struct AbelianSeries {
    pub x: LaurentSeries,
    pub y: LaurentSeries,
    /// `dX/Y`.
    pub dx_over_y: LaurentSeries,
    /// `X dX/Y`.
    pub x_dx_over_y: LaurentSeries,
    /// `(X - i sqrt i) dX/Y`.
    pub mixed: LaurentSeries,
    /// `d alpha+ / (M dq)` with `M = 2 sqrt(sqrt 2 + 1)`.
    pub d_alpha: LaurentSeries,
    /// `(alpha+ - omega)/M`.
    pub alpha: LaurentSeries,
}

/// Chart series with `n` coefficients of `X`; the `q` grid has step 2.
pub fn abelian_differential_series(n: usize) -> Result<AbelianSeries> {
    let cs = burnside_chart_series(&CuspChart::half(), n)?;
    // q at 1/2 equals zeta8 times q of the alpha chart
    let x = cs.x.rotate(1)?;
    let y = cs.y.rotate(1)?;
    let dx_over_y = x.deriv().div(&y)?;
    let x_dx_over_y = x.mul(&dx_over_y);
    let z3 = CycloQ::zeta8().pow(3)?;
    let shifted = x.sub(&LaurentSeries::constant(z3.clone(), x.order()))?;
    let mixed = shifted.mul(&dx_over_y);
    // 1/(sqrt(1+i) M) = zeta8^-1 / (2 (1 - zeta8^3))
    let k = (&CycloQ::zeta8().pow(7)? * &(&CycloQ::one() - &z3).inv()?).scale(&rug::Rational::from((1, 2)));
    let d_alpha = mixed.scale(&k).absorb_scale();
    let alpha = d_alpha.integrate()?;
    Ok(AbelianSeries { x, y, dx_over_y, x_dx_over_y, mixed, d_alpha, alpha })
}
