//! The degree-two Jacobi cover of the torus `wp'^2 = 4 wp^3 - (5/3) wp + (7/27) sqrt 2`
//! by the Burnside curve, and the Fuchsian equations it carries.

mod abel;
mod fuchs;
mod ramify;

pub use abel::{
    abelian_differential_series, alpha_branch_chart, alpha_of_tau, alpha_schwarz_residual, cover_argument, d_alpha_check,
    holo_integral_check, palpha_residual, xi_solution_check, AbelianSeries, AlphaSchwarz, HoloCheck, XiCheck,
};
pub use fuchs::{
    q_whittaker_x, renormalized, Renormalized, lambda_fuchsian_q, lambda_q_by_transform, local_coefficients, torus_fuchsian_q, torus_q_by_construction, FuchsVariant,
    LocalCoefficients, TorusForms,
};
pub use ramify::{
    omega_dprime_series_check, puiseux_at_branch, ramification_profile, riemann_hurwitz, x_of_wp, Direction, PuiseuxCheck,
    RamificationProfile, SheetBranch,
};

use rug::{Complex, Float, Rational};

use crate::elliptic::{dedekind_eta, wp_inverse, HalfPeriods, LatticeParams};
use crate::numeric::mp::{abs_f64, i_c, pi_c, root_real, sqrt2};
use crate::numeric::CycloQ;
use crate::{Error, Result};

/// A value that is exact when the radicals involved lie in `Q(i, sqrt 2)`.
#[derive(Clone, Debug, PartialEq)]
pub enum KValue {
    Exact(CycloQ),
    Numeric(Complex),
}

impl KValue {
    pub fn embed(&self, prec: u32) -> Complex {
        match self {
            KValue::Exact(c) => c.embed(prec),
            KValue::Numeric(z) => Complex::with_val(prec, z),
        }
    }
}

/// Curve `y^2 = x(x-1)(x-a)(x-b)(x-ab)` with its two elliptic quotients.
#[derive(Clone, Debug)]
pub struct JacobiCover {
    pub a: CycloQ,
    pub b: CycloQ,
    pub k_plus: KValue,
    pub k_minus: KValue,
}

/// `k = -(sqrt a +- sqrt b)^2 / ((a-1)(b-1))` with principal square roots.
pub fn jacobi_k(a: &CycloQ, b: &CycloQ, prec: u32) -> Result<JacobiCover> {
    let one = CycloQ::one();
    let den = &(a - &one) * &(b - &one);
    if den.is_zero() || a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("a, b must avoid 0 and 1".into()));
    }
    let (kp, km) = match (a.sqrt_exact(), b.sqrt_exact()) {
        (Some(ra), Some(rb)) => {
            let di = den.inv()?;
            let kp = -(&(&(&ra + &rb) * &(&ra + &rb)) * &di);
            let km = -(&(&(&ra - &rb) * &(&ra - &rb)) * &di);
            (KValue::Exact(kp), KValue::Exact(km))
        }
        _ => {
            let ra = a.embed(prec).sqrt();
            let rb = b.embed(prec).sqrt();
            let d = den.embed(prec);
            let kp = -Complex::with_val(prec, &ra + &rb).square() / &d;
            let km = -Complex::with_val(prec, &ra - &rb).square() / &d;
            (KValue::Numeric(kp), KValue::Numeric(km))
        }
    };
    Ok(JacobiCover { a: a.clone(), b: b.clone(), k_plus: kp, k_minus: km })
}

/// Jacobi's map `lambda = (1-a)(1-b) x / ((x-a)(x-b))`.
pub fn jacobi_lambda(cover: &JacobiCover, x: &Complex) -> Result<Complex> {
    let p = x.prec().0;
    let a = cover.a.embed(p);
    let b = cover.b.embed(p);
    let den = Complex::with_val(p, x - &a) * Complex::with_val(p, x - &b);
    if abs_f64(&den) == 0.0 {
        return Err(Error::DivisionByZero);
    }
    let one = Complex::with_val(p, 1);
    let num = Complex::with_val(p, &one - &a) * Complex::with_val(p, &one - &b) * x;
    Ok(num / den)
}

/// The point `aleph` with `wp(aleph) = -7/2 - (13/6) sqrt 2`.
#[derive(Clone, Debug)]
pub struct Aleph {
    pub point: Complex,
    pub wp: Complex,
    pub wp_prime: Complex,
}

/// Burnside's torus, upper sign: `g2 = 5/3`, `g3 = -(7/27) sqrt 2`, `k = (1 + sqrt 2)/2`.
#[derive(Clone, Debug)]
pub struct BurnsideTorus {
    pub g2: CycloQ,
    pub g3: CycloQ,
    pub e: CycloQ,
    pub e_prime: CycloQ,
    pub e_dprime: CycloQ,
    pub k: CycloQ,
    pub omega: Complex,
    pub omega_prime: Complex,
    pub lp: LatticeParams,
    pub aleph: Aleph,
}

/// `2^(1/4)`, the real fourth root.
pub fn fourth_root2(prec: u32) -> Float {
    root_real(prec, 2, 4)
}

impl BurnsideTorus {
    pub fn new(prec: u32) -> Result<Self> {
        let w = prec + 32;
        let pi = pi_c(w);
        let s2 = sqrt2(w);
        let tau = Complex::with_val(w, (0, &s2));
        let eta = dedekind_eta(&tau)?;
        let omega = Complex::with_val(w, &pi * &s2) * eta.square();
        let omega_prime = Complex::with_val(w, &omega * &i_c(w)) / &s2;
        let hp = HalfPeriods::new(Complex::with_val(prec, &omega), Complex::with_val(prec, &omega_prime))?;
        let lp = LatticeParams::new(&hp)?;
        let s2q = CycloQ::sqrt2();
        let third = Rational::from((1, 3));
        let sixth = Rational::from((1, 6));
        let mut t = BurnsideTorus {
            g2: CycloQ::frac(5, 3),
            g3: -s2q.scale(&Rational::from((7, 27))),
            e: s2q.scale(&third),
            e_prime: -(&CycloQ::from_int(3) + &s2q).scale(&sixth),
            e_dprime: (&CycloQ::from_int(3) - &s2q).scale(&sixth),
            k: (&CycloQ::one() + &s2q).scale(&Rational::from((1, 2))),
            omega: Complex::with_val(prec, &omega),
            omega_prime: Complex::with_val(prec, &omega_prime),
            lp,
            aleph: Aleph { point: Complex::new(prec), wp: Complex::new(prec), wp_prime: Complex::new(prec) },
        };
        t.aleph = find_aleph(&t)?;
        Ok(t)
    }

    pub fn prec(&self) -> u32 {
        self.lp.prec()
    }

    pub fn omega_dprime(&self) -> Complex {
        -Complex::with_val(self.prec(), &self.omega + &self.omega_prime)
    }

    /// `wp(aleph)` exactly.
    pub fn wp_aleph_exact() -> CycloQ {
        -(&CycloQ::frac(7, 2) + &CycloQ::sqrt2().scale(&Rational::from((13, 6))))
    }

    /// `2^(5/4) (7 + 5 sqrt 2) i`, the stated `wp'(aleph)`.
    pub fn wp_prime_aleph_stated(prec: u32) -> Complex {
        let r = fourth_root2(prec) * 2u32;
        let v = (CycloQ::from_int(7) + CycloQ::sqrt2().mul_int(5)).embed(prec) * r;
        v * i_c(prec)
    }

    /// `+1` when `wp'(aleph)` equals the stated value, `-1` when it equals its negative.
    pub fn aleph_sign(&self) -> i64 {
        let p = self.prec();
        let pr = Self::wp_prime_aleph_stated(p);
        if abs_f64(&Complex::with_val(p, &self.aleph.wp_prime - &pr)) < abs_f64(&Complex::with_val(p, &self.aleph.wp_prime + &pr)) {
            1
        } else {
            -1
        }
    }

    /// `lambda = (wp(alpha) + (k+1)/3)/k`.
    pub fn lambda_of_wp(&self, wp: &Complex) -> Complex {
        let p = wp.prec().0;
        let k = self.k.embed(p);
        let c = Complex::with_val(p, &k + 1u32) / 3u32;
        (Complex::with_val(p, wp + &c)) / k
    }

    /// Residual of `wp'(aleph)^2 = 4 wp^3 - g2 wp - g3` at the stored point.
    pub fn aleph_curve_residual(&self) -> f64 {
        let p = self.prec();
        let w = &self.aleph.wp;
        let rhs = Complex::with_val(p, w * w) * w * 4u32 - Complex::with_val(p, w * &self.g2.embed(p)) - self.g3.embed(p);
        let lhs = Complex::with_val(p, self.aleph.wp_prime.square_ref());
        abs_f64(&Complex::with_val(p, &lhs - &rhs)) / abs_f64(&rhs).max(1.0)
    }
}

/// `wp(alpha) = e' + (1 + 3e)/(x - i) - i (1 + 3e)/(x + 1)`.
pub fn cover_wp_of_x(x: &Complex, t: &BurnsideTorus) -> Result<Complex> {
    let p = x.prec().0;
    let i = i_c(p);
    let a = Complex::with_val(p, x - &i);
    let b = Complex::with_val(p, x + 1u32);
    if a.is_zero() || b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let c = (CycloQ::one() + t.e.mul_int(3)).embed(p);
    let ip = t.e_prime.embed(p);
    Ok(ip + Complex::with_val(p, &c / &a) - Complex::with_val(p, &c * &i) / b)
}

/// The same value through `lambda(x)` and `z = k lambda - (k+1)/3`.
pub fn cover_wp_via_lambda(x: &Complex, t: &BurnsideTorus) -> Result<Complex> {
    let p = x.prec().0;
    let cover = jacobi_k(&CycloQ::from_int(-1), &CycloQ::i(), p)?;
    let lam = jacobi_lambda(&cover, x)?;
    let k = t.k.embed(p);
    let c = Complex::with_val(p, &k + 1u32) / 3u32;
    Ok(Complex::with_val(p, &k * &lam) - c)
}

/// `aleph` on the imaginary axis, `0 < Im aleph < Im omega'`.
pub fn find_aleph(t: &BurnsideTorus) -> Result<Aleph> {
    let p = t.prec();
    let v = BurnsideTorus::wp_aleph_exact().embed(p);
    let hint = Complex::with_val(p, (0, 0.39));
    let mut z = wp_inverse(&v, &t.lp, &hint)?;
    if z.imag().is_sign_negative() {
        z = -z;
    }
    let (wp, wpp) = t.lp.wp_pair(&z)?;
    Ok(Aleph { point: z, wp, wp_prime: wpp })
}

/// For `k_plus` and `k_minus`: the sign `s` with `d lambda/mu` proportional to `(x + s sqrt(ab)) dx/y`,
/// and the relative spread of `lambda_x^2 y^2 / (mu^2 (x + s sqrt(ab))^2)` over the sample points.
pub fn jacobi_reduction_check(cover: &JacobiCover, xs: &[Complex]) -> Result<[(i32, f64); 2]> {
    let p = xs.first().ok_or_else(|| Error::InvalidInput("no sample points".into()))?.prec().0;
    let a = cover.a.embed(p);
    let b = cover.b.embed(p);
    let sab = Complex::with_val(p, &a * &b).sqrt();
    let one = Complex::with_val(p, 1);
    let c = Complex::with_val(p, &one - &a) * Complex::with_val(p, &one - &b);
    let mut out = [(0, 0.0); 2];
    for (slot, k) in out.iter_mut().zip([&cover.k_plus, &cover.k_minus]) {
        let k = k.embed(p);
        let mut best = (0, f64::INFINITY);
        for s in [1i32, -1] {
            let mut vals = Vec::with_capacity(xs.len());
            for x in xs {
                let xa = Complex::with_val(p, x - &a);
                let xb = Complex::with_val(p, x - &b);
                let l = jacobi_lambda(cover, x)?;
                // lambda_x = c (ab - x^2)/((x-a)(x-b))^2
                let ab = Complex::with_val(p, &a * &b);
                let lx = Complex::with_val(p, &c * (ab - Complex::with_val(p, x.square_ref())))
                    / Complex::with_val(p, &xa * &xb).square();
                let y2 = Complex::with_val(p, x * Complex::with_val(p, x - 1u32)) * &xa * &xb
                    * Complex::with_val(p, x - Complex::with_val(p, &a * &b));
                let mu2 = Complex::with_val(p, &l * Complex::with_val(p, &l - 1u32)) * (Complex::with_val(p, &k * &l) - 1u32);
                let lin = Complex::with_val(p, x + Complex::with_val(p, &sab * s)).square();
                vals.push(Complex::with_val(p, lx.square_ref()) * y2 / (mu2 * lin));
            }
            let spread = vals.iter().map(|v| rel_res(v, &vals[0])).fold(0.0, f64::max);
            if spread < best.1 {
                best = (s, spread);
            }
        }
        *slot = best;
    }
    Ok(out)
}

fn rel_res(a: &Complex, b: &Complex) -> f64 {
    crate::numeric::mp::rel_residual(a, b)
}
