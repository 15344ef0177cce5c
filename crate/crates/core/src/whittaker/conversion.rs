use rug::ops::Pow;
use rug::{Complex, Rational};
use serde::Serialize;

use crate::elliptic::dedekind_eta;
use crate::elliptic::{HalfPeriods, LatticeParams};
use crate::numeric::cyclo::rational_sqrt;
use crate::numeric::diff::{default_step, derivative1, derivative2, derivatives3};
use crate::numeric::jet::schwarzian;
use crate::numeric::mp::{abs_f64, i_c, pi_c, rel_residual, ToleranceConfig};
use crate::numeric::quad::{polyline, tanh_sinh};
use crate::numeric::CycloQ;
use crate::series::{theta_and_divisor_series, LaurentSeries, Prefactor, SeriesKind, SeriesRecord};
use crate::{Error, Result};

/// Solution of `[tau, mu] = c g2(tau)/pi^2` at `tau = i infinity` in `q = e^(pi i tau/4)`.
#[derive(Clone, Debug)]
pub struct ConversionSeries {
    pub c_ode: Rational,
    /// `mu~ = q^rho (1 + O(q^8))`.
    pub rho: Rational,
    pub mu_of_q: LaurentSeries,
    /// Compositional inverse, available when `rho = 1`.
    pub q_of_mu: Option<LaurentSeries>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConversionRecord {
    pub c_ode: String,
    pub rho: String,
    pub mu_of_q: SeriesRecord,
    pub q_of_mu: Option<SeriesRecord>,
}

impl ConversionSeries {
    pub fn record(&self) -> ConversionRecord {
        ConversionRecord {
            c_ode: self.c_ode.to_string(),
            rho: self.rho.to_string(),
            mu_of_q: self.mu_of_q.export("q = exp(pi i tau/4)"),
            q_of_mu: self.q_of_mu.as_ref().map(|s| s.export("mu~")),
        }
    }

    /// Rational coefficients of `mu~`, from the leading one.
    pub fn mu_coeffs(&self) -> Vec<Rational> {
        self.mu_of_q.coeffs.iter().map(|c| c.as_rational().cloned().expect("rational series")).collect()
    }

    pub fn q_coeffs(&self) -> Option<Vec<Rational>> {
        self.q_of_mu.as_ref().map(|s| s.coeffs.iter().map(|c| c.as_rational().cloned().expect("rational series")).collect())
    }

    /// `mu~(tau)` from the series.
    pub fn eval(&self, tau: &Complex) -> (Complex, f64) {
        let p = tau.prec().0;
        let s = Complex::with_val(p, &i_c(p) * &pi_c(p)) * tau / 4u32;
        self.mu_of_q.eval_log(&s)
    }
}

/// `mu~` as `q^rho A/B`, where `A` and `B` are the Frobenius solutions of
/// `psi'' + (1/2){mu, q} psi = 0` with exponents `(1 +- rho)/2`.
///
/// `{mu, q} = (16/q^2)(c/12 + 1/32 + 20 c sum sigma_3(n) q^(8n))`, so the
/// coefficients of `q^(8k)` obey
/// `a_k ((r+8k)(r+8k-1) + 2c/3 + 1/4) = -160 c sum sigma_3(n) a_(k-n)`.
pub fn conversion_ode_series(c: &Rational, terms: usize) -> Result<ConversionSeries> {
    if terms == 0 {
        return Err(Error::InvalidInput("at least one term".into()));
    }
    let rho2 = Rational::from(c * -8) / 3;
    if rho2 <= 0 {
        return Err(Error::InvalidInput("c must be negative".into()));
    }
    let rho = rational_sqrt(&rho2).ok_or_else(|| Error::InvalidInput(format!("sqrt(-8c/3) = sqrt({rho2}) is irrational")))?;
    let s0 = Rational::from(c * 2) / 3 + Rational::from((1, 4));
    let k160 = Rational::from(c * 160);
    let g2 = theta_and_divisor_series(SeriesKind::G2Eisenstein, terms)?;
    let sigma: Vec<Rational> = (0..terms).map(|k| g2.coeff(8 * k as i64).as_rational().cloned().unwrap_or_default()).collect();
    let frobenius = |r: &Rational| -> Result<Vec<CycloQ>> {
        let mut a = vec![Rational::from(1)];
        for k in 1..terms {
            let s = Rational::from(r + 8 * k as i64);
            let piv = Rational::from(&s * Rational::from(&s - 1)) + &s0;
            if piv == 0 {
                return Err(Error::Degenerate(format!("exponents differ by {rho}: logarithmic solution")));
            }
            let mut acc = Rational::new();
            for n in 1..=k {
                acc += Rational::from(&sigma[n] * &a[k - n]);
            }
            a.push(-(acc * &k160) / piv);
        }
        Ok(a.into_iter().map(CycloQ::from_rational).collect())
    };
    let r1 = Rational::from(&rho + 1) / 2;
    let r2 = Rational::from(1 - &rho) / 2;
    let a = LaurentSeries::new(0, 8, frobenius(&r1)?);
    let b = LaurentSeries::new(0, 8, frobenius(&r2)?);
    let ratio = a.div(&b)?;
    let (mu, q_of_mu) = if *rho.denom() == 1 {
        let n = rho.numer().to_i64().ok_or_else(|| Error::InvalidInput("exponent too large".into()))?;
        let mu = LaurentSeries::new(n, 8, ratio.coeffs);
        let inv = if n == 1 { Some(mu.revert()?) } else { None };
        (mu, inv)
    } else {
        let pre = Prefactor { q_shift: rho.clone(), ..Prefactor::default() };
        (ratio.with_prefactor(pre), None)
    };
    Ok(ConversionSeries { c_ode: c.clone(), rho, mu_of_q: mu, q_of_mu })
}

/// `(pi i/3) int_{i inf}^tau eta^4 = q^(4/3) sum b_n q^(8n)/(1 + 6n)` with
/// `prod (1 - q^(8n))^4 = sum b_n q^(8n)`.
pub fn eta4_integral_series(terms: usize) -> Result<LaurentSeries> {
    let mut b = vec![CycloQ::zero(); terms];
    b[0] = CycloQ::one();
    let base = LaurentSeries::new(0, 8, b.clone());
    let mut prod = base.clone();
    for n in 1..terms {
        let mut f = b.clone();
        f[n] = CycloQ::from_int(-1);
        prod = prod.mul(&LaurentSeries::new(0, 8, f)).truncate(8 * terms as i64);
    }
    let prod = prod.pow(4)?;
    let c = (0..terms).map(|n| prod.coeff(8 * n as i64).scale(&Rational::from((1, 1 + 6 * n as i64)))).collect();
    Ok(LaurentSeries::new(0, 8, c).with_prefactor(Prefactor { q_shift: Rational::from((4, 3)), ..Prefactor::default() }))
}

/// The `c = -2/3` series against the quadrature `mu = int eta^4 dtau`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadratureCheck {
    /// `|mu~(tau) - (pi i/3) int_{i inf}^tau eta^4|`, relative.
    pub series_vs_integral: f64,
    /// `[tau, mu] = -{mu, tau}` of the quadrature-built `mu` against `-(2/3) g2/pi^2`.
    pub schwarz_residual: f64,
}

pub fn quadrature_check(tau: &Complex, tc: &ToleranceConfig) -> Result<QuadratureCheck> {
    if tau.imag().to_f64() <= 0.3 {
        return Err(Error::OutOfDomain("Im tau too small for the q-series".into()));
    }
    let w = tc.working_prec();
    let p = tc.precision_bits;
    let t = Complex::with_val(w, tau);
    let im = t.imag().to_f64();
    let eta4 = |z: &Complex| -> Result<Complex> { Ok(dedekind_eta(z)?.square().square()) };
    let i = i_c(w);
    let tol = 2f64.powi(-(p as i32) - 16);

    let terms = (p as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI * im)).ceil() as usize + 4;
    let series = conversion_ode_series(&Rational::from((-2, 3)), terms)?;
    let (mu_s, _) = series.eval(&t);
    // integrand decays like exp(-pi Im/3)
    let top = 3.0 * (p as f64 + 40.0) * std::f64::consts::LN_2 / std::f64::consts::PI;
    let mut path = vec![t.clone()];
    let mut y = im;
    while y < top {
        y = (y + 4.0).min(top);
        path.push(Complex::with_val(w, (t.real(), y)));
    }
    let up = polyline(&eta4, &path, tol)?;
    let mu_q = Complex::with_val(w, &i * &pi_c(w)) / 3u32 * -up;
    let series_vs_integral = rel_residual(&mu_s, &mu_q);

    let h = Complex::with_val(w, default_step(p));
    let walk = |z: &Complex| -> Result<Complex> {
        if abs_f64(&Complex::with_val(w, z - &t)) == 0.0 {
            return Ok(Complex::new(w));
        }
        tanh_sinh(&eta4, &t, z, tol)
    };
    let d = derivatives3(walk, &t, &h, 6)?;
    let lhs = -schwarzian(&d[0], &d[1], &d[2]);
    let lp = LatticeParams::new(&HalfPeriods::unit(&t)?)?;
    let pi2 = Complex::with_val(w, pi_c(w).square_ref());
    let rhs = Complex::with_val(w, &lp.g2 * -2i32) / 3u32 / pi2;
    Ok(QuadratureCheck { series_vs_integral, schwarz_residual: rel_residual(&lhs, &rhs) })
}

/// Residual of `Psi'' + ((n+2)/(pi i)) eta Psi' - (n/(6 pi^2)) g2 Psi = 0` at `Psi = eta^n`.
#[derive(Clone, Debug, Serialize)]
pub struct EtaOdeCheck {
    pub n: i64,
    pub residual: f64,
}

pub fn eta_power_ode_check(n: i64, tau: &Complex, tc: &ToleranceConfig) -> Result<EtaOdeCheck> {
    let w = tc.working_prec();
    let t = Complex::with_val(w, tau);
    let psi = |z: &Complex| -> Result<Complex> {
        let e = dedekind_eta(z)?;
        Ok(if n >= 0 { e.pow(n as u32) } else { e.pow(-n as u32).recip() })
    };
    let h = Complex::with_val(w, default_step(tc.precision_bits));
    let (v, d2) = derivative2(psi, &t, &h, 6)?;
    let d1 = derivative1(psi, &t, &h, 6)?;
    let lp = LatticeParams::new(&HalfPeriods::unit(&t)?)?;
    let pii = Complex::with_val(w, &i_c(w) * &pi_c(w));
    let pi2 = Complex::with_val(w, pi_c(w).square_ref());
    let t1 = Complex::with_val(w, &lp.eta * &d1) * (n + 2) / &pii;
    let t2 = Complex::with_val(w, &lp.g2 * &v) * n / 6u32 / pi2;
    let scale = [abs_f64(&d2), abs_f64(&t1), abs_f64(&t2), abs_f64(&v)].into_iter().fold(0.0, f64::max);
    let sum = d2 + t1 - t2;
    let residual = abs_f64(&sum) / scale;
    Ok(EtaOdeCheck { n, residual })
}
