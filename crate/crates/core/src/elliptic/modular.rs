//! Dedekind eta, Klein's `J`, and the differential system for `g2, g3, eta`.

use rug::{Complex, Float};
use serde::Serialize;

use super::{HalfPeriods, LatticeParams};
use crate::numeric::diff::derivative1;
use crate::numeric::mp::{abs, abs_f64, i_c, pi_c};
use crate::{Error, Result};

fn check_upper(tau: &Complex) -> Result<()> {
    if tau.imag().is_sign_negative() || tau.imag().is_zero() {
        return Err(Error::OutOfDomain("Im tau must be positive".into()));
    }
    Ok(())
}

/// `eta(tau) = e^{pi i tau/12} prod (1 - e^{2 pi i n tau})`, via the pentagonal series.
pub fn dedekind_eta(tau: &Complex) -> Result<Complex> {
    check_upper(tau)?;
    let p = tau.prec().0;
    let w = p + 16;
    let ipi = Complex::with_val(w, &i_c(w) * &pi_c(w));
    let x = Complex::with_val(w, &ipi * tau) * 2u32;
    let tiny = Float::with_val(w, Float::i_exp(1, -(w as i32)));
    let mut sum = Complex::with_val(w, 1);
    for k in 1i64.. {
        let a = Complex::with_val(w, &x * (k * (3 * k - 1) / 2)).exp();
        let b = Complex::with_val(w, &x * (k * (3 * k + 1) / 2)).exp();
        let t = a + b;
        let small = abs(&t) < tiny;
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        if small {
            break;
        }
    }
    let pre = (Complex::with_val(w, &ipi * tau) / 12u32).exp();
    Ok(Complex::with_val(p, pre * sum))
}

/// `(d/dtau) ln eta(tau) = (pi i / 12) (1 - 24 sum n x^n / (1 - x^n))`, `x = e^{2 pi i tau}`.
pub fn log_eta_derivative(tau: &Complex) -> Result<Complex> {
    check_upper(tau)?;
    let p = tau.prec().0;
    let w = p + 16;
    let ipi = Complex::with_val(w, &i_c(w) * &pi_c(w));
    let x = Complex::with_val(w, &ipi * tau).exp().square();
    let tiny = Float::with_val(w, Float::i_exp(1, -(w as i32)));
    let mut xn = x.clone();
    let mut s = Complex::new(w);
    for n in 1u32.. {
        let t = Complex::with_val(w, &xn * n) / (Complex::with_val(w, 1) - &xn);
        let small = abs(&t) < tiny;
        s += t;
        if small {
            break;
        }
        xn *= &x;
    }
    let e2 = Complex::with_val(w, 1) - s * 24u32;
    Ok(Complex::with_val(p, ipi * e2 / 12u32))
}

/// Klein's `J = g2^3 / (g2^3 - 27 g3^2)` for half-periods `(1, tau)`.
pub fn klein_j(tau: &Complex) -> Result<Complex> {
    check_upper(tau)?;
    let p = tau.prec().0;
    let hp = HalfPeriods::unit(&Complex::with_val(p + 32, tau))?;
    let lp = LatticeParams::new(&hp)?;
    let g2c = Complex::with_val(p + 32, lp.g2.square_ref()) * &lp.g2;
    Ok(Complex::with_val(p, &g2c / lp.discriminant()))
}

/// Residuals of
///
/// ```text
/// dg2/dtau = (i/pi)(8 g2 eta - 12 g3)
/// dg3/dtau = (i/pi)(12 g3 eta - (2/3) g2^2)
/// deta/dtau = (i/pi)(2 eta^2 - g2/6)
/// ```
#[derive(Clone, Debug, Serialize)]
pub struct DiffSystemResiduals {
    pub g2: f64,
    pub g3: f64,
    pub eta: f64,
}

impl DiffSystemResiduals {
    pub fn max(&self) -> f64 {
        self.g2.max(self.g3).max(self.eta)
    }
}

/// Central-difference check of the system for `g2, g3, eta` of `(1, tau)`.
///
/// `k` is the stencil half-width; `k = 1` gives the classical `O(h^2)` rule.
pub fn verify_diff_system(tau: &Complex, h: &Complex, k: usize) -> Result<DiffSystemResiduals> {
    check_upper(tau)?;
    let p = tau.prec().0 * 3 / 2 + 32;
    let tau = &Complex::with_val(p, tau);
    let h = &Complex::with_val(p, h);
    let pick = |idx: usize| {
        move |t: &Complex| -> Result<Complex> {
            let lp = LatticeParams::new(&HalfPeriods::unit(t)?)?;
            Ok(match idx {
                0 => lp.g2,
                1 => lp.g3,
                _ => lp.eta,
            })
        }
    };
    let d2 = derivative1(pick(0), tau, h, k)?;
    let d3 = derivative1(pick(1), tau, h, k)?;
    let de = derivative1(pick(2), tau, h, k)?;
    let lp = LatticeParams::new(&HalfPeriods::unit(tau)?)?;
    let ip = i_c(p) / pi_c(p);
    let (g2, g3, eta) = (&lp.g2, &lp.g3, &lp.eta);
    let r2 = Complex::with_val(p, g2 * eta) * 8u32 - Complex::with_val(p, g3 * 12u32);
    let r3 = Complex::with_val(p, g3 * eta) * 12u32 - Complex::with_val(p, g2.square_ref()) * 2u32 / 3u32;
    let re = Complex::with_val(p, eta.square_ref()) * 2u32 - Complex::with_val(p, g2 / 6u32);
    let res = |d: &Complex, r: Complex| {
        let rhs = Complex::with_val(p, &ip * &r);
        abs_f64(&Complex::with_val(p, d - &rhs)) / abs_f64(&rhs).max(1.0)
    };
    Ok(DiffSystemResiduals { g2: res(&d2, r2), g3: res(&d3, r3), eta: res(&de, re) })
}
