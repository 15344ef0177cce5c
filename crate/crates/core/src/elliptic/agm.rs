//! Arithmetic-geometric mean and complete elliptic integrals.

use rug::{Complex, Float};

use crate::numeric::mp::{abs, abs_diff, pi_c};
use crate::{Error, Result};

/// Optimal AGM of `a` and `b`: each geometric mean takes the root closer to
/// the arithmetic mean.
pub fn agm(a: &Complex, b: &Complex) -> Result<Complex> {
    let p = a.prec().0;
    let mut a = a.clone();
    let mut b = b.clone();
    let eps = Float::with_val(p, Float::i_exp(1, -(p as i32) + 2));
    for _ in 0..(4 * p) {
        let an = Complex::with_val(p, &a + &b) / 2u32;
        let mut bn = Complex::with_val(p, &a * &b).sqrt();
        if abs_diff(&an, &bn) > abs(&Complex::with_val(p, &an + &bn)).to_f64() {
            bn = -bn;
        }
        let done = abs(&Complex::with_val(p, &an - &bn)) <= Float::with_val(p, &eps * abs(&an));
        a = an;
        b = bn;
        if done {
            return Ok(a);
        }
    }
    Err(Error::NoConvergence("agm".into()))
}

/// `K(m) = pi / (2 AGM(1, sqrt(1 - m)))` with parameter `m = k^2`.
pub fn complete_elliptic_k(m: &Complex) -> Result<Complex> {
    let p = m.prec().0;
    if m.imag().is_zero() && *m.real() >= 1 {
        return Err(Error::OutOfDomain("K(m) has a branch cut on [1, inf)".into()));
    }
    let one = Complex::with_val(p, 1);
    let kp = Complex::with_val(p, &one - m).sqrt();
    let g = agm(&one, &kp)?;
    Ok(pi_c(p) / (g * 2u32))
}

/// `K'(m) = K(1 - m)`.
pub fn complete_elliptic_k_prime(m: &Complex) -> Result<Complex> {
    let p = m.prec().0;
    complete_elliptic_k(&(Complex::with_val(p, 1) - m))
}
