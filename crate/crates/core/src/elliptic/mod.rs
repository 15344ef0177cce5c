//! Weierstrass elliptic functions with multiprecision complex arguments.
//!
//! Everything is driven by the nome series of `theta_1`:
//!
//! ```text
//! zeta(z) = eta z / omega + (pi / 2 omega) theta1'(v) / theta1(v),   v = pi z / (2 omega)
//! wp(z)   = -zeta'(z)
//! sigma(z) = (2 omega / pi) exp(eta z^2 / (2 omega)) theta1(v) / theta1'(0)
//! ```

mod agm;
mod inverse;
mod modular;
pub mod theta;

pub use agm::{agm, complete_elliptic_k, complete_elliptic_k_prime};
pub use inverse::{carlson_rf, half_periods_from_invariants, wp_inverse};
pub use modular::{dedekind_eta, klein_j, log_eta_derivative, verify_diff_system, DiffSystemResiduals};

use rug::{Complex, Float};

use crate::numeric::mp::{abs, abs_f64, i_c, pi_c};
use crate::{Error, Result};

use theta::theta1_derivs;

/// Half-periods `(omega, omega')` with `Im(omega'/omega) > 0`.
#[derive(Clone, Debug)]
pub struct HalfPeriods {
    pub omega: Complex,
    pub omega_prime: Complex,
}

impl HalfPeriods {
    pub fn new(omega: Complex, omega_prime: Complex) -> Result<Self> {
        if omega.is_zero() {
            return Err(Error::InvalidInput("zero half-period".into()));
        }
        let hp = HalfPeriods { omega, omega_prime };
        if !hp.tau().imag().is_sign_positive() || hp.tau().imag().is_zero() {
            return Err(Error::OutOfDomain("Im(omega'/omega) must be positive".into()));
        }
        Ok(hp)
    }

    /// `(1, tau)`.
    pub fn unit(tau: &Complex) -> Result<Self> {
        Self::new(Complex::with_val(tau.prec().0, 1), tau.clone())
    }

    pub fn prec(&self) -> u32 {
        self.omega.prec().0
    }

    pub fn tau(&self) -> Complex {
        Complex::with_val(self.prec(), &self.omega_prime / &self.omega)
    }

    /// `omega'' = -omega - omega'`.
    pub fn omega_dprime(&self) -> Complex {
        -Complex::with_val(self.prec(), &self.omega + &self.omega_prime)
    }

    /// Both half-periods multiplied by `s`.
    pub fn scaled(&self, s: &Complex) -> Result<Self> {
        let p = self.prec();
        Self::new(Complex::with_val(p, &self.omega * s), Complex::with_val(p, &self.omega_prime * s))
    }

    /// Lattice coordinates `(m, n)` of the cell containing `z`, i.e. the
    /// integers nearest to `z = 2 m omega + 2 n omega' + small`.
    pub fn cell_of(&self, z: &Complex) -> (i64, i64) {
        let p = self.prec();
        let w = Complex::with_val(p, z / &self.omega) / 2u32;
        let tau = self.tau();
        let t = Float::with_val(p, w.imag() / tau.imag());
        let s = Float::with_val(p, w.real() - Float::with_val(p, &t * tau.real()));
        (s.to_f64().round() as i64, t.to_f64().round() as i64)
    }

    /// `2 m omega + 2 n omega'`.
    pub fn lattice_point(&self, m: i64, n: i64) -> Complex {
        let p = self.prec();
        Complex::with_val(p, &self.omega * (2 * m)) + Complex::with_val(p, &self.omega_prime * (2 * n))
    }
}

/// Invariants and quasi-periods of a lattice.
#[derive(Clone, Debug)]
pub struct LatticeParams {
    pub half_periods: HalfPeriods,
    pub g2: Complex,
    pub g3: Complex,
    /// `zeta(omega)`.
    pub eta: Complex,
    /// `zeta(omega')`.
    pub eta_prime: Complex,
    /// `wp(omega)`.
    pub e: Complex,
    /// `wp(omega')`.
    pub e_prime: Complex,
    /// `wp(omega'')`.
    pub e_dprime: Complex,
    theta1p0: Complex,
    eta_w: Complex,
    eta_prime_w: Complex,
    wprec: u32,
}

/// `sigma, zeta, wp, wp'` at one argument.
#[derive(Clone, Debug)]
pub struct WpValues {
    pub sigma: Complex,
    pub zeta: Complex,
    pub wp: Complex,
    pub wp_prime: Complex,
}

impl LatticeParams {
    pub fn new(hp: &HalfPeriods) -> Result<Self> {
        let p = hp.prec();
        let wprec = p + p / 4 + 24;
        let tau = Complex::with_val(wprec, hp.tau());
        if tau.imag().to_f64() < 1e-7 {
            return Err(Error::OutOfDomain("degenerate lattice: nome too close to 1".into()));
        }
        let zero = Complex::new(wprec);
        let th0 = theta1_derivs(&tau, &zero, wprec);
        let omega = Complex::with_val(wprec, &hp.omega);
        let pi = pi_c(wprec);
        let pi2 = Complex::with_val(wprec, pi.square_ref());
        let eta = -Complex::with_val(wprec, &pi2 * &th0[3]) / (Complex::with_val(wprec, &omega * &th0[1]) * 12u32);
        let mut lp = LatticeParams {
            half_periods: hp.clone(),
            g2: Complex::new(p),
            g3: Complex::new(p),
            eta: Complex::with_val(p, &eta),
            eta_prime: Complex::new(p),
            e: Complex::new(p),
            e_prime: Complex::new(p),
            e_dprime: Complex::new(p),
            theta1p0: th0[1].clone(),
            eta_w: eta.clone(),
            eta_prime_w: Complex::new(wprec),
            wprec,
        };
        let wp_hp = |z: &Complex, lp: &LatticeParams| -> Result<(Complex, Complex)> {
            let (zeta, wp, _) = lp.reduced_core(z, false)?;
            Ok((zeta, wp))
        };
        let omega_p = Complex::with_val(wprec, &hp.omega_prime);
        let (zeta_op, e_prime) = wp_hp(&omega_p, &lp)?;
        let (_, e) = wp_hp(&omega, &lp)?;
        let od = -Complex::with_val(wprec, &omega + &omega_p);
        let (_, e_dprime) = wp_hp(&od, &lp)?;
        let g2 = (Complex::with_val(wprec, e.square_ref())
            + Complex::with_val(wprec, e_prime.square_ref())
            + Complex::with_val(wprec, e_dprime.square_ref()))
            * 2u32;
        let g3 = Complex::with_val(wprec, &e * &e_prime) * &e_dprime * 4u32;
        lp.eta_prime_w = zeta_op.clone();
        lp.eta_prime = zeta_op;
        lp.e = e;
        lp.e_prime = e_prime;
        lp.e_dprime = e_dprime;
        lp.g2 = g2;
        lp.g3 = g3;
        let disc = Complex::with_val(wprec, lp.g2.square_ref()) * &lp.g2
            - Complex::with_val(wprec, lp.g3.square_ref()) * 27u32;
        if abs(&disc) < Float::with_val(wprec, Float::i_exp(1, -(p as i32))) * abs(&lp.g2).max(&abs(&lp.g3)).pow(2) {
            return Err(Error::OutOfDomain("degenerate lattice: vanishing discriminant".into()));
        }
        lp.round_public(p);
        Ok(lp)
    }

    fn round_public(&mut self, p: u32) {
        for v in [
            &mut self.g2,
            &mut self.g3,
            &mut self.eta,
            &mut self.eta_prime,
            &mut self.e,
            &mut self.e_prime,
            &mut self.e_dprime,
        ] {
            v.set_prec(p);
        }
    }

    pub fn prec(&self) -> u32 {
        self.half_periods.prec()
    }

    /// `zeta, wp, wp'` at `z`, evaluated on the centred-cell representative
    /// when `reduce` is set.
    fn reduced_core(&self, z: &Complex, reduce: bool) -> Result<(Complex, Complex, Complex)> {
        let w = self.wprec;
        let hp = &self.half_periods;
        let omega = Complex::with_val(w, &hp.omega);
        let (m, n) = if reduce { hp.cell_of(z) } else { (0, 0) };
        let zr = Complex::with_val(w, z) - Complex::with_val(w, hp.lattice_point(m, n));
        let guard = Float::with_val(w, Float::i_exp(1, -(self.prec() as i32) / 4)) * abs(&omega);
        if reduce && abs(&zr) < guard {
            return Err(Error::NearSingularity("argument within guard radius of a lattice point".into()));
        }
        let tau = Complex::with_val(w, hp.tau());
        let c = pi_c(w) / Complex::with_val(w, &omega * 2u32);
        let v = Complex::with_val(w, &c * &zr);
        let th = theta1_derivs(&tau, &v, w);
        let l1 = Complex::with_val(w, &th[1] / &th[0]);
        let r2 = Complex::with_val(w, &th[2] / &th[0]);
        let r3 = Complex::with_val(w, &th[3] / &th[0]);
        let l1sq = Complex::with_val(w, l1.square_ref());
        let l2 = Complex::with_val(w, &r2 - &l1sq);
        let l3 = r3 - Complex::with_val(w, &l1 * &r2) * 3u32 + Complex::with_val(w, &l1sq * &l1) * 2u32;
        let eta_over_omega = Complex::with_val(w, &self.eta_w / &omega);
        let mut zeta = Complex::with_val(w, &eta_over_omega * &zr) + Complex::with_val(w, &c * &l1);
        let c2 = Complex::with_val(w, c.square_ref());
        let wp = -eta_over_omega - Complex::with_val(w, &c2 * &l2);
        let wpp = -Complex::with_val(w, &c2 * &c) * &l3;
        if reduce && (m != 0 || n != 0) {
            zeta += Complex::with_val(w, &self.eta_w * (2 * m)) + Complex::with_val(w, &self.eta_prime_w * (2 * n));
        }
        Ok((zeta, wp, wpp))
    }

    /// `sigma, zeta, wp, wp'` at `z`.
    pub fn family(&self, z: &Complex) -> Result<WpValues> {
        let p = self.prec();
        let (zeta, wp, wpp) = self.reduced_core(z, true)?;
        let sigma = self.sigma_w(z)?;
        Ok(WpValues {
            sigma: Complex::with_val(p, sigma),
            zeta: Complex::with_val(p, zeta),
            wp: Complex::with_val(p, wp),
            wp_prime: Complex::with_val(p, wpp),
        })
    }

    pub fn wp(&self, z: &Complex) -> Result<Complex> {
        Ok(Complex::with_val(self.prec(), self.reduced_core(z, true)?.1))
    }

    /// `(wp, wp')`.
    pub fn wp_pair(&self, z: &Complex) -> Result<(Complex, Complex)> {
        let (_, wp, wpp) = self.reduced_core(z, true)?;
        let p = self.prec();
        Ok((Complex::with_val(p, wp), Complex::with_val(p, wpp)))
    }

    pub fn wp_prime(&self, z: &Complex) -> Result<Complex> {
        Ok(Complex::with_val(self.prec(), self.reduced_core(z, true)?.2))
    }

    pub fn zeta(&self, z: &Complex) -> Result<Complex> {
        Ok(Complex::with_val(self.prec(), self.reduced_core(z, true)?.0))
    }

    /// `sigma(z)`, defined everywhere.
    pub fn sigma(&self, z: &Complex) -> Result<Complex> {
        Ok(Complex::with_val(self.prec(), self.sigma_w(z)?))
    }

    fn sigma_w(&self, z: &Complex) -> Result<Complex> {
        let w = self.wprec;
        let hp = &self.half_periods;
        let omega = Complex::with_val(w, &hp.omega);
        let (m, n) = hp.cell_of(z);
        let shift = Complex::with_val(w, hp.lattice_point(m, n));
        let zr = Complex::with_val(w, z) - &shift;
        let tau = Complex::with_val(w, hp.tau());
        let c = pi_c(w) / Complex::with_val(w, &omega * 2u32);
        let v = Complex::with_val(w, &c * &zr);
        let th = theta1_derivs(&tau, &v, w);
        let gauss = Complex::with_val(w, &self.eta_w * Complex::with_val(w, zr.square_ref()))
            / Complex::with_val(w, &omega * 2u32);
        let mut s = gauss.exp() * &th[0] / Complex::with_val(w, &c * &self.theta1p0);
        if m != 0 || n != 0 {
            // sigma(z + 2W) = (-1)^{m+n+mn} exp(2H (z + W)) sigma(z)
            let half_shift = Complex::with_val(w, &shift / 2u32);
            let h = Complex::with_val(w, &self.eta_w * m) + Complex::with_val(w, &self.eta_prime_w * n);
            let arg = Complex::with_val(w, &zr + &half_shift) * h * 2u32;
            s *= arg.exp();
            if (m + n + m * n).rem_euclid(2) == 1 {
                s = -s;
            }
        }
        Ok(s)
    }

    /// Residual of `wp'^2 = 4 wp^3 - g2 wp - g3` relative to `max(1, |wp|^3)`.
    pub fn ode_residual(&self, z: &Complex) -> Result<f64> {
        let p = self.prec();
        let (wp, wpp) = self.wp_pair(z)?;
        let wp2 = Complex::with_val(p, wp.square_ref());
        let rhs = Complex::with_val(p, &wp2 * &wp) * 4u32 - Complex::with_val(p, &self.g2 * &wp) - &self.g3;
        let lhs = Complex::with_val(p, wpp.square_ref());
        let scale = abs_f64(&wp).powi(3).max(1.0);
        Ok(abs_f64(&Complex::with_val(p, &lhs - &rhs)) / scale)
    }

    /// Residual of the Legendre relation `eta omega' - eta' omega = pi i / 2`.
    pub fn legendre_residual(&self) -> f64 {
        let p = self.prec();
        let hp = &self.half_periods;
        let lhs = Complex::with_val(p, &self.eta * &hp.omega_prime) - Complex::with_val(p, &self.eta_prime * &hp.omega);
        let rhs = Complex::with_val(p, &i_c(p) * &pi_c(p)) / 2u32;
        abs_f64(&Complex::with_val(p, &lhs - &rhs))
    }

    /// `g2^3 - 27 g3^2`.
    pub fn discriminant(&self) -> Complex {
        let p = self.prec();
        Complex::with_val(p, self.g2.square_ref()) * &self.g2 - Complex::with_val(p, self.g3.square_ref()) * 27u32
    }
}

/// `sigma, zeta, wp, wp'` at `z` for the given half-periods.
pub fn wp_family(z: &Complex, hp: &HalfPeriods) -> Result<WpValues> {
    LatticeParams::new(hp)?.family(z)
}

/// Invariants and quasi-periods for `hp`.
pub fn lattice_params(hp: &HalfPeriods) -> Result<LatticeParams> {
    LatticeParams::new(hp)
}

use rug::ops::Pow;
