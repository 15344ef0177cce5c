//! Exact truncated Laurent series over `Q(i, sqrt 2)`, the cusp charts of the
//! Burnside functions and solvers for their Schwarz equations.

mod chart;
mod products;
mod solve;

pub use chart::{classify_singularity, ChartKind, CuspChart, Order, SingularityClass};
pub use products::{divisor_sigma, eta_product_series, theta_and_divisor_series, EtaFactor, EtaProductSpec, SeriesKind};
pub use solve::{burnside_chart_series, canonical_y_sign, eval_chart, y_state_sign, solve_schwarz_series, y_series_from_x, Ansatz, ChartSeries};

use rug::{Complex, Integer, Rational};
use serde::Serialize;

use crate::numeric::mp::{abs_f64, unit_root};
use crate::numeric::cyclo::rational_sqrt;
use crate::numeric::CycloQ;
use crate::{Error, Result};

/// Factor `zeta16^phase16 * scale * q^q_shift` kept apart from the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prefactor {
    pub phase16: u8,
    pub scale: CycloQ,
    pub q_shift: Rational,
}

impl Default for Prefactor {
    fn default() -> Self {
        Prefactor { phase16: 0, scale: CycloQ::one(), q_shift: Rational::new() }
    }
}

impl Prefactor {
    pub fn is_trivial(&self) -> bool {
        self.phase16 == 0 && self.scale == CycloQ::one() && self.q_shift == 0
    }

    fn mul(&self, o: &Prefactor) -> Prefactor {
        Prefactor {
            phase16: (self.phase16 + o.phase16) % 16,
            scale: &self.scale * &o.scale,
            q_shift: Rational::from(&self.q_shift + &o.q_shift),
        }
    }

    /// Numeric value of `zeta16^k * scale` (the `q` power excluded).
    pub fn constant(&self, prec: u32) -> Complex {
        unit_root(prec, self.phase16 as i64, 8) * self.scale.embed(prec)
    }
}

/// `prefactor * sum_k coeffs[k] q^(lead_exp + step k)`, exact below
/// `lead_exp + step * coeffs.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    pub lead_exp: i64,
    pub step: i64,
    pub coeffs: Vec<CycloQ>,
    pub prefactor: Prefactor,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl LaurentSeries {
    pub fn new(lead_exp: i64, step: i64, coeffs: Vec<CycloQ>) -> Self {
        assert!(step > 0, "step must be positive");
        let mut s = LaurentSeries { lead_exp, step, coeffs, prefactor: Prefactor::default() };
        s.normalize();
        s
    }

    pub fn from_ints(lead_exp: i64, step: i64, c: &[i64]) -> Self {
        Self::new(lead_exp, step, c.iter().map(|&k| CycloQ::from_int(k)).collect())
    }

    /// The constant `c` known below exponent `order`.
    pub fn constant(c: CycloQ, order: i64) -> Self {
        assert!(order > 0, "order must be positive");
        Self::new(0, order, vec![c])
    }

    /// `q` known below exponent `order`.
    pub fn identity(order: i64) -> Self {
        let mut v = vec![CycloQ::zero(); (order - 1).max(0) as usize];
        if !v.is_empty() {
            v[0] = CycloQ::one();
        }
        Self::new(1, 1, v)
    }

    pub fn with_prefactor(mut self, p: Prefactor) -> Self {
        self.prefactor = p;
        self
    }

    /// Exclusive exponent bound of validity.
    pub fn order(&self) -> i64 {
        self.lead_exp + self.step * self.coeffs.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead_exp += self.step * k as i64;
            }
            None => {
                self.lead_exp = self.order();
                self.coeffs.clear();
            }
        }
    }

    /// Coefficient of `q^e` (prefactor excluded).
    pub fn coeff(&self, e: i64) -> CycloQ {
        let d = e - self.lead_exp;
        if d < 0 || d % self.step != 0 {
            return CycloQ::zero();
        }
        self.coeffs.get((d / self.step) as usize).cloned().unwrap_or_else(CycloQ::zero)
    }

    /// Same series on a finer exponent grid.
    pub fn restep(&self, step: i64) -> LaurentSeries {
        assert!(self.step % step == 0, "new step must divide the old one");
        let r = (self.step / step) as usize;
        let mut c = vec![CycloQ::zero(); self.coeffs.len() * r];
        for (k, v) in self.coeffs.iter().enumerate() {
            c[k * r] = v.clone();
        }
        LaurentSeries { lead_exp: self.lead_exp, step, coeffs: c, prefactor: self.prefactor.clone() }
    }

    /// Coarsest exponent grid carrying the nonzero terms; the order rounds down to that grid.
    pub fn compress(&self) -> LaurentSeries {
        let mut g = 0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = gcd(g, self.step * k as i64);
            }
        }
        if g == 0 || g == self.step {
            return self.clone();
        }
        let n = (self.order() - self.lead_exp) / g;
        let r = (g / self.step) as usize;
        let coeffs = (0..n as usize).map(|k| self.coeffs.get(k * r).cloned().unwrap_or_else(CycloQ::zero)).collect();
        LaurentSeries { lead_exp: self.lead_exp, step: g, coeffs, prefactor: self.prefactor.clone() }
    }

    /// Truncate to exponents below `order`.
    pub fn truncate(&self, order: i64) -> LaurentSeries {
        let mut s = self.clone();
        let keep = ((order - s.lead_exp).max(0) + s.step - 1) / s.step;
        s.coeffs.truncate(keep as usize);
        if s.coeffs.is_empty() {
            s.lead_exp = s.lead_exp.min(order);
        }
        s
    }

    fn aligned(a: &LaurentSeries, b: &LaurentSeries) -> (LaurentSeries, LaurentSeries) {
        let g = gcd(gcd(a.step, b.step), a.lead_exp - b.lead_exp);
        let g = if g == 0 { a.step.min(b.step) } else { g };
        let g = gcd(g, gcd(a.step, b.step));
        (a.restep(g), b.restep(g))
    }

    fn check_add_prefactors(a: &LaurentSeries, o: &LaurentSeries) -> Result<()> {
        if a.prefactor.phase16 != o.prefactor.phase16 || a.prefactor.q_shift != o.prefactor.q_shift {
            return Err(Error::InvalidInput("series with different phase or q-shift cannot be added".into()));
        }
        Ok(())
    }

    /// Move the scale, and the phase when it lies in the field, into the coefficients.
    pub fn absorb_scale(&self) -> LaurentSeries {
        let mut s = self.clone();
        let mut k = s.prefactor.scale.clone();
        if s.prefactor.phase16 % 2 == 0 {
            k = &k * &CycloQ::zeta8().pow(s.prefactor.phase16 as i64 / 2).expect("unit");
            s.prefactor.phase16 = 0;
        }
        if k != CycloQ::one() {
            for c in s.coeffs.iter_mut() {
                *c = &*c * &k;
            }
        }
        s.prefactor.scale = CycloQ::one();
        s
    }

    pub fn add(&self, o: &LaurentSeries) -> Result<LaurentSeries> {
        let (a, b) = (self.absorb_scale(), o.absorb_scale());
        Self::check_add_prefactors(&a, &b)?;
        let (a, b) = Self::aligned(&a, &b);
        let lead = a.lead_exp.min(b.lead_exp);
        let order = a.order().min(b.order());
        let n = ((order - lead) / a.step).max(0) as usize;
        let mut c = vec![CycloQ::zero(); n];
        for (k, slot) in c.iter_mut().enumerate() {
            let e = lead + a.step * k as i64;
            *slot = a.coeff(e) + b.coeff(e);
        }
        let mut r = LaurentSeries::new(lead, a.step, c);
        if n == 0 {
            r.lead_exp = order;
        }
        r.prefactor = Prefactor { scale: CycloQ::one(), ..a.prefactor.clone() };
        Ok(r)
    }

    pub fn neg(&self) -> LaurentSeries {
        let mut s = self.clone();
        for c in s.coeffs.iter_mut() {
            *c = -&*c;
        }
        s
    }

    pub fn sub(&self, o: &LaurentSeries) -> Result<LaurentSeries> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &CycloQ) -> LaurentSeries {
        let mut s = self.clone();
        for c in s.coeffs.iter_mut() {
            *c = &*c * k;
        }
        s.normalize();
        s
    }

    pub fn mul(&self, o: &LaurentSeries) -> LaurentSeries {
        let (a, b) = if self.step == o.step { (self.clone(), o.clone()) } else {
            let g = gcd(self.step, o.step);
            (self.restep(g), o.restep(g))
        };
        let n = a.coeffs.len().min(b.coeffs.len());
        let mut c = vec![CycloQ::zero(); n];
        for (i, ai) in a.coeffs.iter().take(n).enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().take(n - i).enumerate() {
                if bj.is_zero() {
                    continue;
                }
                c[i + j] = &c[i + j] + &(ai * bj);
            }
        }
        let mut r = LaurentSeries::new(a.lead_exp + b.lead_exp, a.step, c);
        r.prefactor = self.prefactor.mul(&o.prefactor);
        r
    }

    /// Multiplicative inverse; the leading coefficient must be invertible.
    pub fn inv(&self) -> Result<LaurentSeries> {
        let c0 = self.coeffs.first().ok_or(Error::DivisionByZero)?;
        let c0i = c0.inv()?;
        let n = self.coeffs.len();
        let mut r = vec![CycloQ::zero(); n];
        r[0] = c0i.clone();
        for k in 1..n {
            let mut s = CycloQ::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() || r[k - j].is_zero() {
                    continue;
                }
                s = s + &self.coeffs[j] * &r[k - j];
            }
            r[k] = -(&s * &c0i);
        }
        let mut out = LaurentSeries::new(-self.lead_exp, self.step, r);
        out.prefactor = Prefactor {
            phase16: (16 - self.prefactor.phase16) % 16,
            scale: self.prefactor.scale.inv()?,
            q_shift: Rational::from(-&self.prefactor.q_shift),
        };
        Ok(out)
    }

    pub fn div(&self, o: &LaurentSeries) -> Result<LaurentSeries> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<LaurentSeries> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut one = vec![CycloQ::zero(); self.coeffs.len()];
        if let Some(c) = one.first_mut() {
            *c = CycloQ::one();
        }
        let mut acc = LaurentSeries::new(0, self.step, one);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Square root written as `zeta16^k * r * (1 + ...)` with `r > 0` in `Q(sqrt 2)`.
    ///
    /// `sign = -1` selects the other branch, recorded as a phase shift by `zeta16^8`.
    pub fn sqrt(&self, sign: i32) -> Result<LaurentSeries> {
        let s = self.absorb_scale();
        if s.lead_exp % 2 != 0 || s.prefactor.phase16 % 2 != 0 {
            return Err(Error::InvalidInput("odd leading order: no single-valued square root".into()));
        }
        let c0 = s.coeffs.first().ok_or(Error::DivisionByZero)?.clone();
        let (k, r) = leading_root(&c0).ok_or_else(|| Error::InvalidInput("leading coefficient has no root in Q(zeta16)".into()))?;
        let n = s.coeffs.len();
        let c0i = c0.inv()?;
        let t: Vec<CycloQ> = s.coeffs.iter().map(|c| c * &c0i).collect();
        let mut u = vec![CycloQ::zero(); n];
        u[0] = CycloQ::one();
        let half = Rational::from((1, 2));
        for m in 1..n {
            let mut acc = t[m].clone();
            for j in 1..m {
                if u[j].is_zero() || u[m - j].is_zero() {
                    continue;
                }
                acc = acc - &u[j] * &u[m - j];
            }
            u[m] = acc.scale(&half);
        }
        let flip = if sign < 0 { 8 } else { 0 };
        let mut out = LaurentSeries::new(s.lead_exp / 2, s.step, u);
        out.prefactor = Prefactor {
            phase16: ((s.prefactor.phase16 / 2 + k + flip) % 16) as u8,
            scale: r,
            q_shift: Rational::from(&s.prefactor.q_shift / 2),
        };
        Ok(out)
    }

    /// `q d/dq`, including the `q` shift of the prefactor.
    pub fn q_deriv(&self) -> LaurentSeries {
        let mut s = self.clone();
        for (k, c) in s.coeffs.iter_mut().enumerate() {
            let e = Rational::from(self.lead_exp + self.step * k as i64) + &self.prefactor.q_shift;
            *c = c.scale(&e);
        }
        s.normalize();
        s
    }

    /// `self(zeta8^k q)`; needs an integral `q` shift.
    pub fn rotate(&self, k: i64) -> Result<LaurentSeries> {
        if *self.prefactor.q_shift.denom() != 1 {
            return Err(Error::InvalidInput("rotation of a fractional q power".into()));
        }
        let z = CycloQ::zeta8();
        let shift = self.prefactor.q_shift.numer().to_i64().unwrap_or(0);
        let mut s = self.clone();
        for (j, c) in s.coeffs.iter_mut().enumerate() {
            let e = (k * (self.lead_exp + self.step * j as i64 + shift)).rem_euclid(8);
            *c = &*c * &z.pow(e)?;
        }
        Ok(s)
    }

    /// `d/dq`.
    pub fn deriv(&self) -> LaurentSeries {
        let mut s = self.q_deriv();
        s.lead_exp -= 1;
        s
    }

    /// Antiderivative in `q` with zero constant term; requires no `q^-1` term.
    pub fn integrate(&self) -> Result<LaurentSeries> {
        let mut s = self.clone();
        for (k, c) in s.coeffs.iter_mut().enumerate() {
            let e = Rational::from(self.lead_exp + self.step * k as i64 + 1) + &self.prefactor.q_shift;
            if e == 0 {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::InvalidInput("residue term q^-1 has no Laurent antiderivative".into()));
            }
            *c = c.scale(&Rational::from(e.recip_ref()));
        }
        s.lead_exp += 1;
        s.normalize();
        Ok(s)
    }

    /// `self(t)` for `t` with positive leading exponent and trivial prefactor.
    pub fn compose(&self, t: &LaurentSeries) -> Result<LaurentSeries> {
        if t.lead_exp < 1 || !t.prefactor.is_trivial() || !self.prefactor.is_trivial() {
            return Err(Error::InvalidInput("compose needs a positive-valuation inner series".into()));
        }
        let v = t.lead_exp;
        let bound = (self.order() * v).min(t.order() + v * (self.lead_exp - 1));
        let mut power = t.pow(self.lead_exp)?;
        let t_step = t.pow(self.step)?;
        let mut acc: Option<LaurentSeries> = None;
        for c in &self.coeffs {
            if !c.is_zero() {
                let term = power.scale(c).truncate(bound);
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term)?,
                });
            }
            power = power.mul(&t_step).truncate(bound);
        }
        let out = acc.unwrap_or_else(|| LaurentSeries::new(bound, 1, vec![]));
        Ok(out.truncate(bound))
    }

    /// Compositional inverse of `c q + ...` with invertible `c`.
    pub fn revert(&self) -> Result<LaurentSeries> {
        if self.lead_exp != 1 || !self.prefactor.is_trivial() {
            return Err(Error::InvalidInput("reversion needs a series c q + ... with trivial prefactor".into()));
        }
        let c0 = self.coeffs.first().ok_or(Error::DivisionByZero)?;
        let c0i = c0.inv()?;
        let order = self.order();
        let step = self.step;
        // r = q/c0 + ..., refined term by term on the grid 1 + step k
        let n = self.coeffs.len();
        let mut r = vec![CycloQ::zero(); n];
        r[0] = c0i.clone();
        for k in 1..n {
            let cur = LaurentSeries::new(1, step, r.clone()).truncate(1 + step * (k as i64 + 1));
            let cur = LaurentSeries { lead_exp: 1, step, coeffs: { let mut v = cur.coeffs; v.resize(k + 1, CycloQ::zero()); v }, prefactor: Prefactor::default() };
            let comp = self.truncate(1 + step * (k as i64 + 1)).compose(&cur)?;
            let e = 1 + step * k as i64;
            r[k] = -(&comp.coeff(e) * &c0i);
        }
        Ok(LaurentSeries::new(1, step, r).truncate(order))
    }

    /// Numeric value at `q = exp(s)`, with a tail estimate from the last retained term.
    pub fn eval_log(&self, s: &Complex) -> (Complex, f64) {
        let p = s.prec().0;
        let mut acc = Complex::new(p);
        let mut last = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.lead_exp + self.step * k as i64;
            let t = Complex::with_val(p, s * e).exp() * c.embed(p);
            last = abs_f64(&t);
            acc += t;
        }
        let shift = Complex::with_val(p, s * &Complex::with_val(p, &self.prefactor.q_shift)).exp();
        let pre = self.prefactor.constant(p) * shift;
        let mag = abs_f64(&pre);
        (acc * pre, last * mag)
    }

    /// [`eval_log`](Self::eval_log) in a chart, refused when `|q| >= guard`.
    pub fn numeric_eval(&self, chart: &CuspChart, tau: &Complex, guard: f64) -> Result<(Complex, f64)> {
        let s = chart.log_q(tau)?;
        let mag = s.real().to_f64().exp();
        if mag >= guard {
            return Err(Error::NoConvergence(format!("|q| = {mag:.3} exceeds {guard}; use another chart")));
        }
        Ok(self.eval_log(&s))
    }

    /// Coefficients as integers when all of them are rational integers.
    pub fn integer_coeffs(&self) -> Option<Vec<Integer>> {
        self.coeffs.iter().map(|c| c.as_integer()).collect()
    }

    /// JSON record with exact coefficient strings.
    pub fn export(&self, chart: &str) -> SeriesRecord {
        SeriesRecord {
            chart: chart.to_string(),
            ring: if self.coeffs.iter().all(|c| c.as_rational().is_some()) { "Q" } else { "Q(i,sqrt2)" }.to_string(),
            lead_exp: self.lead_exp,
            step: self.step,
            prefactor: PrefactorRecord {
                zeta16_power: self.prefactor.phase16,
                scale: self.prefactor.scale.to_string(),
                q_shift: self.prefactor.q_shift.to_string(),
            },
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// `(k, r)` with `sqrt c = zeta16^k r` and `r > 0` in `Q(sqrt 2)` when possible.
fn leading_root(c: &CycloQ) -> Option<(u8, CycloQ)> {
    let z = CycloQ::zeta8();
    for k in 0..8u8 {
        let w = c * &z.pow(-(k as i64)).ok()?;
        if let Some(v) = w.as_rational().filter(|v| **v > 0) {
            if let Some(root) = rational_sqrt(v) {
                return Some((k, CycloQ::from_rational(root)));
            }
            if let Some(root) = rational_sqrt(&Rational::from(v / 2u32)) {
                return Some((k, CycloQ::sqrt2().scale(&root)));
            }
        }
    }
    c.sqrt_exact().map(|r| (0, r))
}

#[derive(Clone, Debug, Serialize)]
pub struct PrefactorRecord {
    pub zeta16_power: u8,
    pub scale: String,
    pub q_shift: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesRecord {
    pub chart: String,
    pub ring: String,
    pub lead_exp: i64,
    pub step: i64,
    pub prefactor: PrefactorRecord,
    pub coeffs: Vec<String>,
}
