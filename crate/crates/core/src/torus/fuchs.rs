use rug::ops::Pow;
use rug::{Complex, Rational};
use serde::Serialize;

use super::{fourth_root2, jacobi_k, jacobi_lambda, BurnsideTorus};
use crate::curve::q_of_x;
use crate::numeric::jet::schwarzian;
use crate::numeric::mp::{abs_f64, i_c, nearest, ser_complex, ser_rational, sqrt2, unit_root};
use crate::numeric::CycloQ;
use crate::{Error, Result};

/// Which plane equation is pulled back to the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FuchsVariant {
    /// Burnside's parametrization: three punctures and two elliptic points.
    Burnside,
    /// Whittaker's equation with vanishing accessory parameters: two elliptic points.
    Whittaker,
}

/// `Q(lambda)` as stated: `-(1/2)(l^6+4l^5+16l^4-56l^3+68l^2-48l+16)/(l^2 (l-1)^2 (l^2+4l-4)^2)`.
pub fn lambda_fuchsian_q(l: &Complex) -> Result<Complex> {
    let p = l.prec().0;
    let num = horner(&[16, -48, 68, -56, 16, 4, 1], l);
    let q = Complex::with_val(p, l * l) + Complex::with_val(p, l * 4u32) - 4u32;
    let den = Complex::with_val(p, l * l) * Complex::with_val(p, l - 1u32).square() * q.square();
    if den.is_zero() {
        return Err(Error::NearSingularity("lambda at a singular point".into()));
    }
    Ok(-num / den / 2u32)
}

fn horner(c: &[i64], x: &Complex) -> Complex {
    let p = x.prec().0;
    let mut acc = Complex::new(p);
    for &k in c.iter().rev() {
        acc = acc * x + k;
    }
    acc
}

/// Whittaker's `Q(x) = -(3/8)(sum 1/(x - e_k)^2 - 4x^3/(x^5 - x))` for `y^2 = x^5 - x`.
pub fn q_whittaker_x(x: &Complex) -> Complex {
    let p = x.prec().0;
    let i = i_c(p);
    let mut s = Complex::new(p);
    for r in [Complex::new(p), Complex::with_val(p, 1), Complex::with_val(p, -1), i.clone(), -i] {
        s += Complex::with_val(p, x - &r).square().recip();
    }
    let f = horner(&[0, -1, 0, 0, 0, 1], x);
    let x3 = Complex::with_val(p, x * x) * x * 4u32;
    -(s - x3 / f) * 3u32 / 8u32
}

fn plane_q(v: FuchsVariant, x: &Complex) -> Complex {
    match v {
        FuchsVariant::Burnside => q_of_x(x),
        FuchsVariant::Whittaker => q_whittaker_x(x),
    }
}

/// A preimage `x` of `lambda` under Jacobi's map, nearest to `hint` when given.
fn x_of_lambda(l: &Complex, hint: Option<&Complex>) -> Result<Complex> {
    let p = l.prec().0;
    // l (x + 1)(x - i) = 2 (1 - i) x
    let i = i_c(p);
    let one_m_i = Complex::with_val(p, 1u32 - &i);
    let b = Complex::with_val(p, l * Complex::with_val(p, 1u32 - &i)) - Complex::with_val(p, &one_m_i * 2u32);
    let c = -Complex::with_val(p, l * &i);
    let disc = Complex::with_val(p, b.square_ref()) - Complex::with_val(p, l * &c) * 4u32;
    let s = disc.sqrt();
    let two_l = Complex::with_val(p, l * 2u32);
    if two_l.is_zero() {
        return Err(Error::NearSingularity("lambda = 0".into()));
    }
    let r1 = Complex::with_val(p, &s - &b) / &two_l;
    let r2 = -Complex::with_val(p, &b + &s) / &two_l;
    Ok(match hint {
        Some(h) => nearest(&[r1, r2], h).clone(),
        None => r1,
    })
}

/// `Q(lambda)` from the plane equation: `Q(lambda) = (Q(x) + {lambda, x}) / lambda_x^2`.
pub fn lambda_q_by_transform(l: &Complex, v: FuchsVariant) -> Result<Complex> {
    let p0 = l.prec().0;
    let p = p0 + p0 / 2 + 32;
    let x = x_of_lambda(&Complex::with_val(p, l), None)?;
    let cover = jacobi_k(&CycloQ::from_int(-1), &CycloQ::i(), p)?;
    // lambda = 2(1-i) x / ((x+1)(x-i)) and its x-derivatives
    let lam = |x: &Complex| jacobi_lambda(&cover, x);
    let h = Complex::with_val(p, crate::numeric::diff::default_step(p0));
    let d = crate::numeric::diff::derivatives3(lam, &x, &h, 6)?;
    let s = schwarzian(&d[0], &d[1], &d[2]);
    let q = plane_q(v, &x);
    Ok(Complex::with_val(p0, (q + s) / Complex::with_val(p, d[0].square_ref())))
}

/// The two stated forms of `Q(alpha)/2` for one variant.
#[derive(Clone, Debug, Serialize)]
pub struct TorusForms {
    #[serde(serialize_with = "ser_complex")]
    pub zeta_form: Complex,
    #[serde(serialize_with = "ser_complex")]
    pub wp_form: Complex,
}

impl TorusForms {
    pub fn residual(&self) -> f64 {
        let p = self.zeta_form.prec().0;
        abs_f64(&Complex::with_val(p, &self.zeta_form - &self.wp_form)) / abs_f64(&self.wp_form).max(1.0)
    }
}

/// `Q(alpha)/2` in the zeta form and in the `1/(wp(alpha) - wp(aleph))` form.
pub fn torus_fuchsian_q(t: &BurnsideTorus, alpha: &Complex, v: FuchsVariant) -> Result<TorusForms> {
    let p = t.prec();
    let a = Complex::with_val(p, alpha);
    let al = &t.aleph.point;
    let lp = &t.lp;
    let guard = |z: &Complex| -> Result<()> {
        let (m, n) = lp.half_periods.cell_of(z);
        let r = Complex::with_val(p, z - &lp.half_periods.lattice_point(m, n));
        if abs_f64(&r) < 1e-12 {
            return Err(Error::NearSingularity("alpha at a singular point".into()));
        }
        Ok(())
    };
    let am = Complex::with_val(p, &a - al);
    let ap = Complex::with_val(p, &a + al);
    guard(&am)?;
    guard(&ap)?;
    let i = i_c(p);
    let s2 = sqrt2(p);
    let r8 = fourth_root2(p).pow(3u32);
    let wa = lp.wp(&a)?;
    let wal = &t.aleph.wp;
    let pair = Complex::with_val(p, lp.wp(&am)? + lp.wp(&ap)?);
    let zdiff = Complex::with_val(p, lp.zeta(&am)? - lp.zeta(&ap)?);
    let z_al = lp.zeta(al)?;
    let c7 = Complex::with_val(p, Complex::with_val(p, &s2 * 5u32) + 7u32);
    let dw = Complex::with_val(p, &wa - wal);
    match v {
        FuchsVariant::Burnside => {
            guard(&a)?;
            guard(&Complex::with_val(p, &a - &t.omega))?;
            guard(&Complex::with_val(p, &a - &t.omega_prime))?;
            let punct = Complex::with_val(p, &wa + lp.wp(&Complex::with_val(p, &a - &t.omega))?)
                + lp.wp(&Complex::with_val(p, &a - &t.omega_prime))?;
            let punct = -punct / 4u32;
            let r8i = Complex::with_val(p, &i * &r8);
            let zeta_form = punct.clone() - Complex::with_val(p, &pair * 3u32) / 16u32
                + Complex::with_val(p, &r8i * &zdiff) * 9u32 / 64u32
                + (Complex::with_val(p, &r8i * &z_al) + Complex::with_val(p, &s2 * 2u32) + 2u32) * 9u32 / 32u32;
            let inner = pair + Complex::with_val(p, &c7 * 3u32) / &dw - Complex::with_val(p, &s2 * 3u32) - 3u32;
            let wp_form = punct - inner * 3u32 / 16u32;
            Ok(TorusForms { zeta_form, wp_form })
        }
        FuchsVariant::Whittaker => {
            let r32 = Complex::with_val(p, fourth_root2(p).pow(5u32));
            let r2 = Complex::with_val(p, fourth_root2(p));
            let inner = pair.clone() - Complex::with_val(p, &i * &zdiff) / &r32
                - (Complex::with_val(p, &i * &z_al) / &r2 + &s2 + 1u32);
            let zeta_form = -inner * 3u32 / 16u32;
            let inner2 = pair + Complex::with_val(p, &c7 / &dw) - &s2 - 1u32;
            let wp_form = -inner2 * 3u32 / 16u32;
            Ok(TorusForms { zeta_form, wp_form })
        }
    }
}

/// `Q(alpha)/2 = (-{lambda, alpha} + lambda_alpha^2 Q(lambda))/2` with `Q(lambda)` pulled back from the plane.
pub fn torus_q_by_construction(t: &BurnsideTorus, alpha: &Complex, v: FuchsVariant) -> Result<Complex> {
    let p = t.prec();
    let lp = &t.lp;
    let (w, w1) = lp.wp_pair(alpha)?;
    let g2 = t.g2.embed(p);
    let w2 = Complex::with_val(p, w.square_ref()) * 6u32 - Complex::with_val(p, &g2 / 2u32);
    let w3 = Complex::with_val(p, &w * &w1) * 12u32;
    let s = schwarzian(&w1, &w2, &w3);
    let l = t.lambda_of_wp(&w);
    let ql = lambda_q_by_transform(&l, v)?;
    let k = t.k.embed(p);
    let la = Complex::with_val(p, &w1 / &k);
    Ok((Complex::with_val(p, la.square_ref()) * ql - s) / 2u32)
}

/// Laurent coefficients of `Q(alpha)/2` at one singular point.
#[derive(Clone, Debug, Serialize)]
pub struct LocalCoefficients {
    pub point: String,
    /// Exact coefficient of `(alpha - a)^-2`.
    #[serde(serialize_with = "ser_rational")]
    pub double_pole: Rational,
    /// Coefficient of `(alpha - a)^-1` as `r * 8^(1/4) i` with exact `r`.
    #[serde(serialize_with = "ser_rational")]
    pub residue_over_r8i: Rational,
    /// Numerically extracted coefficients `(c_-2, c_-1)`.
    pub numeric: (f64, f64, f64, f64),
}

/// Coefficients at the singular points of a variant, checked by discrete Cauchy integrals of the `wp` form.
pub fn local_coefficients(t: &BurnsideTorus, v: FuchsVariant) -> Result<Vec<LocalCoefficients>> {
    let p = t.prec();
    let al = t.aleph.point.clone();
    let mut pts: Vec<(String, Complex, Rational, Rational)> = Vec::new();
    if v == FuchsVariant::Burnside {
        pts.push(("0".into(), Complex::new(p), Rational::from((-1, 4)), Rational::new()));
        pts.push(("omega".into(), t.omega.clone(), Rational::from((-1, 4)), Rational::new()));
        pts.push(("omega'".into(), t.omega_prime.clone(), Rational::from((-1, 4)), Rational::new()));
    }
    // residue at +aleph is c (7 + 5 sqrt 2)/wp'(aleph) with c = -9/16 or -3/16
    let sigma = t.aleph_sign();
    let res = match v {
        FuchsVariant::Burnside => Rational::from((9 * sigma, 64)),
        FuchsVariant::Whittaker => Rational::from((3 * sigma, 64)),
    };
    pts.push(("aleph".into(), al.clone(), Rational::from((-3, 16)), res.clone()));
    pts.push(("-aleph".into(), -al, Rational::from((-3, 16)), -res));
    let n = 32i64;
    let eps = 1e-3;
    let mut out = Vec::new();
    for (name, a, c2, c1) in pts {
        let mut s2 = Complex::new(p);
        let mut s1 = Complex::new(p);
        for j in 0..n {
            let u = Complex::with_val(p, unit_root(p, 2 * j, n) * eps);
            let f = torus_fuchsian_q(t, &Complex::with_val(p, &a + &u), v)?.wp_form;
            s2 += Complex::with_val(p, &f * Complex::with_val(p, u.square_ref()));
            s1 += Complex::with_val(p, &f * &u);
        }
        let s2 = s2 / n;
        let s1 = s1 / n;
        let r8i = Complex::with_val(p, i_c(p) * fourth_root2(p).pow(3u32));
        let s1r = Complex::with_val(p, &s1 / &r8i);
        out.push(LocalCoefficients {
            point: name,
            double_pole: c2,
            residue_over_r8i: c1,
            numeric: (s2.real().to_f64(), s2.imag().to_f64(), s1r.real().to_f64(), s1r.imag().to_f64()),
        });
    }
    Ok(out)
}

/// Constants of the equation in `alpha~ = alpha / omega'`, where the lattice becomes `(1, sqrt 2 i)`.
#[derive(Clone, Debug, Serialize)]
pub struct Renormalized {
    #[serde(serialize_with = "ser_complex")]
    pub aleph_tilde: Complex,
    #[serde(serialize_with = "ser_complex")]
    pub zeta_tilde: Complex,
    #[serde(serialize_with = "ser_complex")]
    pub m: Complex,
    /// `-(9/32) M (zeta~(aleph~) + (1/sqrt 2 + 1) M)`.
    #[serde(serialize_with = "ser_complex")]
    pub accessory: Complex,
    /// `omega'^2` times the stated free term `(9/32)(8^(1/4) i zeta(aleph) + 2 sqrt 2 + 2)`.
    #[serde(serialize_with = "ser_complex")]
    pub scaled_free_term: Complex,
}

pub fn renormalized(t: &BurnsideTorus) -> Result<Renormalized> {
    let p = t.prec();
    let al = &t.aleph.point;
    let wpr = &t.omega_prime;
    let z = t.lp.zeta(al)?;
    let zeta_tilde = Complex::with_val(p, &z * wpr);
    let m = Complex::with_val(p, &t.omega * fourth_root2(p));
    let s2 = sqrt2(p);
    let c = Complex::with_val(p, s2.clone().recip() + 1u32);
    let accessory = -Complex::with_val(p, &m * (Complex::with_val(p, &zeta_tilde + Complex::with_val(p, &c * &m)))) * 9u32 / 32u32;
    let r8i = Complex::with_val(p, i_c(p) * fourth_root2(p).pow(3u32));
    let free = (Complex::with_val(p, &r8i * &z) + Complex::with_val(p, &s2 * 2u32) + 2u32) * 9u32 / 32u32;
    let scaled_free_term = free * Complex::with_val(p, wpr.square_ref());
    Ok(Renormalized { aleph_tilde: Complex::with_val(p, al / wpr), zeta_tilde, m, accessory, scaled_free_term })
}
