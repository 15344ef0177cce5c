//! Central finite differences with exact stencil weights.

use rug::{Complex, Float, Rational};

use crate::Result;

/// Fornberg weights for derivatives `0..=m` at `0` on the nodes `-k..=k`.
///
/// `w[d][j]` multiplies `f(j - k)` in the estimate of the `d`-th derivative
/// (unit spacing).
pub fn fornberg_weights(k: usize, m: usize) -> Vec<Vec<Rational>> {
    let nodes: Vec<Rational> = (0..=2 * k).map(|j| Rational::from(j as i64 - k as i64)).collect();
    let n = nodes.len();
    let mut c = vec![vec![vec![Rational::new(); m + 1]; n]; n];
    c[0][0][0] = Rational::from(1);
    let mut c1 = Rational::from(1);
    for i in 1..n {
        let mut c2 = Rational::from(1);
        let mn = i.min(m);
        for j in 0..i {
            let c3 = Rational::from(&nodes[i] - &nodes[j]);
            c2 *= &c3;
            for d in 0..=mn {
                let prev = if d > 0 { c[i - 1][j][d - 1].clone() } else { Rational::new() };
                let t = Rational::from(&nodes[i] * &c[i - 1][j][d]) - prev * d as u32;
                c[i][j][d] = t / &c3;
            }
        }
        for d in 0..=mn {
            let prev = if d > 0 { c[i - 1][i - 1][d - 1].clone() } else { Rational::new() };
            let t = prev * d as u32 - Rational::from(&nodes[i - 1] * &c[i - 1][i - 1][d]);
            c[i][i][d] = Rational::from(&c1 / &c2) * t;
        }
        c1 = c2;
    }
    (0..=m).map(|d| (0..n).map(|j| c[n - 1][j][d].clone()).collect()).collect()
}

/// Default step `2^(-P/6)`.
pub fn default_step(prec: u32) -> Float {
    Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 6))
}

/// First three derivatives of `f` at `x` from a `2k+1` point central stencil.
///
/// `h` is a complex step so that derivatives along any direction can be taken
/// for analytic `f`.
pub fn derivatives3<F>(f: F, x: &Complex, h: &Complex, k: usize) -> Result<[Complex; 3]>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    let p = x.prec().0;
    let w = fornberg_weights(k, 3);
    let mut vals = Vec::with_capacity(2 * k + 1);
    for j in 0..=2 * k {
        let off = Complex::with_val(p, h * (j as i64 - k as i64));
        vals.push(f(&Complex::with_val(p, x + &off))?);
    }
    let mut out: [Complex; 3] = std::array::from_fn(|_| Complex::new(p));
    let mut hp = Complex::with_val(p, 1);
    for d in 1..=3 {
        hp *= h;
        let mut acc = Complex::new(p);
        for (j, v) in vals.iter().enumerate() {
            if w[d][j] != 0 {
                acc += Complex::with_val(p, v * &w[d][j]);
            }
        }
        out[d - 1] = acc / &hp;
    }
    Ok(out)
}

/// Second derivative from a central stencil, with the centre value.
pub fn derivative2<F>(f: F, x: &Complex, h: &Complex, k: usize) -> Result<(Complex, Complex)>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    let p = x.prec().0;
    let w = fornberg_weights(k, 2);
    let mut acc = Complex::new(p);
    let mut centre = Complex::new(p);
    for j in 0..=2 * k {
        let off = Complex::with_val(p, h * (j as i64 - k as i64));
        let v = f(&Complex::with_val(p, x + &off))?;
        if j == k {
            centre = v.clone();
        }
        if w[2][j] != 0 {
            acc += v * &w[2][j];
        }
    }
    let h2 = Complex::with_val(p, h.square_ref());
    Ok((centre, acc / h2))
}

/// First derivative from a central stencil.
pub fn derivative1<F>(f: F, x: &Complex, h: &Complex, k: usize) -> Result<Complex>
where
    F: Fn(&Complex) -> Result<Complex>,
{
    let p = x.prec().0;
    let w = fornberg_weights(k, 1);
    let mut acc = Complex::new(p);
    for j in 0..=2 * k {
        if w[1][j] == 0 {
            continue;
        }
        let off = Complex::with_val(p, h * (j as i64 - k as i64));
        acc += f(&Complex::with_val(p, x + &off))? * &w[1][j];
    }
    Ok(acc / h)
}
