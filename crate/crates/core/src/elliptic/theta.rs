//! Jacobi `theta_1` and its first three derivatives in `v`.

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::numeric::mp::{abs, i_c, pi_c};

/// `[theta1, theta1', theta1'', theta1''']` at `v` for `tau` (nome `e^{i pi tau}`).
///
/// ```text
/// theta1(v) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) v)
/// ```
pub fn theta1_derivs(tau: &Complex, v: &Complex, prec: u32) -> [Complex; 4] {
    let ipi = Complex::with_val(prec, &i_c(prec) * &pi_c(prec));
    let q = Complex::with_val(prec, &ipi * tau).exp();
    let q14 = (Complex::with_val(prec, &ipi * tau) / 4u32).exp();
    let q2 = Complex::with_val(prec, q.square_ref());
    let iv = Complex::with_val(prec, v * &i_c(prec));
    let e1 = Complex::with_val(prec, iv.exp_ref());
    let e1i = Complex::with_val(prec, e1.recip_ref());
    let e2 = Complex::with_val(prec, e1.square_ref());
    let e2i = Complex::with_val(prec, e1i.square_ref());

    let mut e = e1;
    let mut ei = e1i;
    let mut qpow = q14.clone();
    let mut qmul = q2.clone();
    let mut s: [Complex; 4] = std::array::from_fn(|_| Complex::new(prec));
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 8)) * abs(&q14);
    let two_i = Complex::with_val(prec, (0, 2));
    for n in 0u64..100_000 {
        let m = (2 * n + 1) as u64;
        let sin = Complex::with_val(prec, &e - &ei) / &two_i;
        let cos = Complex::with_val(prec, &e + &ei) / 2u32;
        let mut t0 = Complex::with_val(prec, &qpow * &sin);
        let mut t1 = Complex::with_val(prec, &qpow * &cos) * m;
        let mut t2 = Complex::with_val(prec, &t0 * m) * m;
        let mut t3 = Complex::with_val(prec, &t1 * m) * m;
        if n % 2 == 1 {
            t0 = -t0;
            t1 = -t1;
        } else {
            t2 = -t2;
            t3 = -t3;
        }
        let mag = {
            let a = abs(&qpow) * Float::with_val(prec, m).pow(3u32);
            a * abs(&e).max(&abs(&ei))
        };
        s[0] += t0;
        s[1] += t1;
        s[2] += t2;
        s[3] += t3;
        if n > 0 && mag < tiny {
            break;
        }
        qpow *= &qmul;
        qmul *= &q2;
        e *= &e2;
        ei *= &e2i;
    }
    s.map(|x| x * 2u32)
}
