//! Double-exponential (tanh-sinh) quadrature on complex segments.

use rug::{Complex, Float};

use crate::numeric::mp::{abs_f64, pi};
use crate::{Error, Result};

/// Integral of `f` over the straight segment from `a` to `b`.
///
/// Refines the step until two successive levels agree to `tol` (relative to
/// `max(1, |I|)`).
pub fn tanh_sinh<F>(f: &F, a: &Complex, b: &Complex, tol: f64) -> Result<Complex>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    let p = a.prec().0;
    let mid = Complex::with_val(p, a + b) / 2u32;
    let half = Complex::with_val(p, b - a) / 2u32;
    let half_pi = pi(p) / 2u32;
    let tmax = {
        // weights fall below 2^-p beyond t ~ ln(4 p / pi)
        let v = (4.0 * p as f64 / std::f64::consts::PI).ln();
        v.max(3.0)
    };
    let node = |t: f64| -> Result<Complex> {
        let tt = Float::with_val(p, t);
        let sh = Float::with_val(p, tt.sinh_ref());
        let ch = Float::with_val(p, tt.cosh_ref());
        let u = Float::with_val(p, &half_pi * &sh);
        let s = Float::with_val(p, u.tanh_ref());
        let cu = Float::with_val(p, u.cosh_ref());
        let w = Float::with_val(p, &half_pi * &ch) / Float::with_val(p, cu.square_ref());
        let x = Complex::with_val(p, &half * &s) + &mid;
        if abs_f64(&Complex::with_val(p, &x - b)) == 0.0 || abs_f64(&Complex::with_val(p, &x - a)) == 0.0 {
            return Ok(Complex::new(p));
        }
        Ok(f(&x)? * w)
    };
    let mut h = 0.5f64;
    let mut sum = node(0.0)?;
    let mut j = 1;
    while (j as f64) * h <= tmax {
        let t = j as f64 * h;
        sum += node(t)?;
        sum += node(-t)?;
        j += 1;
    }
    let mut prev = Complex::with_val(p, &sum * h) * &half;
    for _level in 0..14 {
        h /= 2.0;
        let mut j = 1;
        while (j as f64) * h <= tmax {
            let t = j as f64 * h;
            sum += node(t)?;
            sum += node(-t)?;
            j += 2;
        }
        let cur = Complex::with_val(p, &sum * h) * &half;
        let diff = abs_f64(&Complex::with_val(p, &cur - &prev));
        if diff <= tol * abs_f64(&cur).max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NoConvergence("tanh-sinh refinement".into()))
}

/// Integral along a polyline.
pub fn polyline<F>(f: &F, path: &[Complex], tol: f64) -> Result<Complex>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    let p = path.first().map(|z| z.prec().0).unwrap_or(64);
    let mut acc = Complex::new(p);
    for seg in path.windows(2) {
        acc += tanh_sinh(f, &seg[0], &seg[1], tol)?;
    }
    Ok(acc)
}
