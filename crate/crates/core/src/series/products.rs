use rug::{Integer, Rational};

use super::LaurentSeries;
use crate::numeric::CycloQ;
use crate::{Error, Result};

/// `prod_{k >= 1} (1 + sign q^(period k - offset))^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaFactor {
    pub period: i64,
    pub sign: i8,
    pub exponent: i64,
    pub offset: i64,
}

impl EtaFactor {
    pub fn new(period: i64, sign: i8, exponent: i64, offset: i64) -> Self {
        EtaFactor { period, sign, exponent, offset }
    }
}

/// `lead_coeff q^lead_exp` times a product of [`EtaFactor`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaProductSpec {
    pub factors: Vec<EtaFactor>,
    pub lead_coeff: CycloQ,
    pub lead_exp: i64,
}

impl EtaProductSpec {
    pub fn new(factors: Vec<EtaFactor>) -> Self {
        EtaProductSpec { factors, lead_coeff: CycloQ::one(), lead_exp: 0 }
    }

    pub fn with_lead(mut self, c: CycloQ, e: i64) -> Self {
        self.lead_coeff = c;
        self.lead_exp = e;
        self
    }
}

/// Expansion through `q^(lead_exp + n - 1)`.
pub fn eta_product_series(spec: &EtaProductSpec, n: usize) -> Result<LaurentSeries> {
    if n == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    let mut c = vec![Integer::new(); n];
    c[0] = Integer::from(1);
    for f in &spec.factors {
        if f.period <= 0 || f.sign.abs() != 1 {
            return Err(Error::InvalidInput("factor needs a positive period and sign +-1".into()));
        }
        let mut k = 1;
        loop {
            let j = f.period * k - f.offset;
            k += 1;
            if j <= 0 {
                return Err(Error::InvalidInput("factor exponents must be positive".into()));
            }
            let j = j as usize;
            if j >= n {
                break;
            }
            for _ in 0..f.exponent.unsigned_abs() {
                if f.exponent > 0 {
                    for i in (j..n).rev() {
                        let t = c[i - j].clone();
                        if f.sign > 0 { c[i] += t } else { c[i] -= t }
                    }
                } else {
                    for i in j..n {
                        let t = c[i - j].clone();
                        if f.sign > 0 { c[i] -= t } else { c[i] += t }
                    }
                }
            }
        }
    }
    let coeffs = c.into_iter().map(|v| &CycloQ::from_rational(Rational::from(v)) * &spec.lead_coeff).collect();
    Ok(LaurentSeries::new(spec.lead_exp, 1, coeffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `(1 + 2 sum q^(8 k^2))^4`
    Theta3Pow4,
    /// `sum_{k >= 0} sigma_1(2k+1) q^(4k)`
    Sigma1Odd,
    /// `1/240 + sum sigma_3(n) q^(8n)`
    G2Eisenstein,
}

/// Sum of `k`-th powers of the positive divisors of `n`.
pub fn divisor_sigma(k: u32, n: u64) -> Integer {
    let mut s = Integer::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += Integer::from(Integer::u_pow_u(d as u32, k));
            let e = n / d;
            if e != d {
                s += Integer::from(Integer::u_pow_u(e as u32, k));
            }
        }
        d += 1;
    }
    s
}

/// `n` coefficients of the requested series on its natural exponent grid.
pub fn theta_and_divisor_series(kind: SeriesKind, n: usize) -> Result<LaurentSeries> {
    if n == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    let q = |v: Integer| CycloQ::from_rational(Rational::from(v));
    Ok(match kind {
        SeriesKind::Theta3Pow4 => {
            let mut t = vec![CycloQ::zero(); n];
            t[0] = CycloQ::one();
            let mut k = 1usize;
            while k * k < n {
                t[k * k] = CycloQ::from_int(2);
                k += 1;
            }
            LaurentSeries::new(0, 8, t).pow(4)?
        }
        SeriesKind::Sigma1Odd => {
            LaurentSeries::new(0, 4, (0..n as u64).map(|k| q(divisor_sigma(1, 2 * k + 1))).collect())
        }
        SeriesKind::G2Eisenstein => {
            let mut c: Vec<CycloQ> = vec![CycloQ::frac(1, 240)];
            c.extend((1..n as u64).map(|m| q(divisor_sigma(3, m))));
            LaurentSeries::new(0, 8, c)
        }
    })
}
