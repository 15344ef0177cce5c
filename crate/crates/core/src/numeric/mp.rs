//! Multiprecision complex helpers on top of `rug::Complex`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};
use serde::Serialize;

/// Arbitrary-precision complex number; precision is carried by the value.
pub type MpComplex = Complex;

/// Precision and tolerance settings shared by numeric checks.
#[derive(Clone, Debug, Serialize)]
pub struct ToleranceConfig {
    pub precision_bits: u32,
    pub residual_tol: f64,
    pub digit_tol: u32,
}

impl ToleranceConfig {
    /// Defaults: residual tolerance `2^(-P/2)`, digits `~0.3 P - 8`.
    pub fn new(precision_bits: u32) -> Self {
        assert!(precision_bits >= 64, "precision must be at least 64 bits");
        ToleranceConfig {
            precision_bits,
            residual_tol: 2f64.powi(-(precision_bits as i32) / 2),
            digit_tol: (precision_bits as f64 * 0.30103) as u32 - 8,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        assert!(tol > 0.0);
        self.residual_tol = tol;
        self
    }

    /// Working precision with guard bits for derivative stencils.
    pub fn working_prec(&self) -> u32 {
        self.precision_bits + self.precision_bits / 2 + 32
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self::new(256)
    }
}

pub fn cx(prec: u32, re: f64, im: f64) -> Complex {
    Complex::with_val(prec, (re, im))
}

pub fn real(prec: u32, re: f64) -> Complex {
    Complex::with_val(prec, (re, 0))
}

pub fn rat(prec: u32, n: i64, d: i64) -> Complex {
    Complex::with_val(prec, rug::Rational::from((n, d)))
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn pi_c(prec: u32) -> Complex {
    Complex::with_val(prec, Constant::Pi)
}

pub fn i_c(prec: u32) -> Complex {
    Complex::with_val(prec, (0, 1))
}

pub fn sqrt2(prec: u32) -> Float {
    Float::with_val(prec, 2).sqrt()
}

/// Positive real root `a^(1/n)`.
pub fn root_real(prec: u32, a: u32, n: u32) -> Float {
    Float::with_val(prec, a).pow(Float::with_val(prec, 1) / n)
}

pub fn abs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

pub fn abs_f64(z: &Complex) -> f64 {
    abs(z).to_f64()
}

/// `|a - b| / max(1, |b|)` as `f64`.
pub fn rel_residual(a: &Complex, b: &Complex) -> f64 {
    let d = abs_f64(&Complex::with_val(a.prec().0, a - b));
    d / abs_f64(b).max(1.0)
}

/// `|a - b|` as `f64`.
pub fn abs_diff(a: &Complex, b: &Complex) -> f64 {
    abs_f64(&Complex::with_val(a.prec().0, a - b))
}

/// Square root on the branch closest to `reference`.
pub fn sqrt_near(z: &Complex, reference: &Complex) -> Complex {
    let r = Complex::with_val(z.prec().0, z.sqrt_ref());
    let plus = abs_diff(&r, reference);
    let minus = abs_f64(&Complex::with_val(z.prec().0, &r + reference));
    if minus < plus {
        -r
    } else {
        r
    }
}

/// Value nearest to `reference` among `candidates`.
pub fn nearest<'a>(candidates: &'a [Complex], reference: &Complex) -> &'a Complex {
    candidates
        .iter()
        .min_by(|a, b| abs_diff(a, reference).total_cmp(&abs_diff(b, reference)))
        .expect("nonempty candidate list")
}

/// `exp(i*pi*k/n)`.
pub fn unit_root(prec: u32, k: i64, n: i64) -> Complex {
    let arg = pi(prec) * Float::with_val(prec, k) / Float::with_val(prec, n);
    Complex::with_val(prec, (Float::with_val(prec, arg.cos_ref()), Float::with_val(prec, arg.sin_ref())))
}

/// Parse `a`, `a+bi`, `bi`, `sqrt2*i` style literals used by the CLI and tests.
pub fn parse_complex(prec: u32, s: &str) -> Option<Complex> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    let mut acc = Complex::new(prec);
    let mut start = 0;
    let bytes = t.as_bytes();
    let mut k = 1;
    let mut terms = Vec::new();
    while k <= bytes.len() {
        let split = k == bytes.len()
            || ((bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e' && bytes[k - 1] != b'E');
        if split {
            terms.push(&t[start..k]);
            start = k;
        }
        k += 1;
    }
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        let (imag, body) = match body.strip_suffix('i') {
            Some(b) => (true, b.strip_suffix('*').unwrap_or(b)),
            None => (false, body),
        };
        let mut v = if body.is_empty() {
            Float::with_val(prec, 1)
        } else {
            let mut prod = Float::with_val(prec, 1);
            for factor in body.split('*') {
                prod *= parse_real(prec, factor)?;
            }
            prod
        };
        if neg {
            v = -v;
        }
        if imag {
            acc += Complex::with_val(prec, (0, v));
        } else {
            acc += v;
        }
    }
    Some(acc)
}

fn parse_real(prec: u32, s: &str) -> Option<Float> {
    if let Some(inner) = s.strip_prefix("sqrt") {
        let inner = inner.trim_start_matches('(').trim_end_matches(')');
        return Some(parse_real(prec, inner)?.sqrt());
    }
    if s == "pi" {
        return Some(pi(prec));
    }
    if let Some((n, d)) = s.split_once('/') {
        return Some(parse_real(prec, n)? / parse_real(prec, d)?);
    }
    Float::parse(s).ok().map(|p| Float::with_val(prec, p))
}

/// Decimal string with `digits` significant digits.
pub fn fmt_complex(z: &Complex, digits: usize) -> String {
    let re = z.real().to_string_radix(10, Some(digits));
    let im = z.imag();
    if im.is_zero() {
        return re;
    }
    let ims = Float::with_val(im.prec(), im.abs_ref()).to_string_radix(10, Some(digits));
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    if z.real().is_zero() {
        return format!("{}{}i", if sign == '-' { "-" } else { "" }, ims);
    }
    format!("{re} {sign} {ims}i")
}

/// Serialize a complex value as `{"re": "...", "im": "..."}` decimal strings.
pub fn ser_complex<S: serde::Serializer>(z: &Complex, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let digits = (z.prec().0 as f64 * 0.30103) as usize;
    let mut st = s.serialize_struct("complex", 2)?;
    st.serialize_field("re", &z.real().to_string_radix(10, Some(digits)))?;
    st.serialize_field("im", &z.imag().to_string_radix(10, Some(digits)))?;
    st.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_literals() {
        let z = parse_complex(128, "1/2+3i/2").unwrap_or_else(|| parse_complex(128, "0.5+1.5i").unwrap());
        assert!(abs_diff(&z, &cx(128, 0.5, 1.5)) < 1e-30);
        let w = parse_complex(128, "sqrt2*i").unwrap();
        assert!(abs_diff(&w, &cx(128, 0.0, std::f64::consts::SQRT_2)) < 1e-15);
        let v = parse_complex(128, "-2i").unwrap();
        assert!(abs_diff(&v, &cx(128, 0.0, -2.0)) < 1e-30);
        let u = parse_complex(128, "1e-3+2").unwrap();
        assert!(abs_diff(&u, &cx(128, 2.001, 0.0)) < 1e-15);
    }

    #[test]
    fn sqrt_branch_tracking() {
        let z = cx(64, -1.0, 0.0);
        let s = sqrt_near(&z, &cx(64, 0.0, -1.0));
        assert!(abs_diff(&s, &cx(64, 0.0, -1.0)) < 1e-15);
    }
}

pub fn ser_rational<S: serde::Serializer>(r: &rug::Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}
