use rug::{Complex, Integer, Rational};
use serde::Serialize;

use crate::numeric::mp::{i_c, pi_c};
use crate::numeric::CycloQ;
use crate::{Error, Result};

/// What `x` does at the cusp of a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartKind {
    Pole,
    Zero,
    /// `x` tends to the given fourth root of unity.
    Branch(CycloQ),
}

/// `q = exp((pi i / 4)(a tau + b)/(c tau + d))` around one cusp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspChart {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub cusp: &'static str,
    pub approach: &'static str,
    pub kind: ChartKind,
}

impl CuspChart {
    fn make(m: [i64; 4], cusp: &'static str, approach: &'static str, kind: ChartKind) -> Self {
        let ch = CuspChart { a: m[0], b: m[1], c: m[2], d: m[3], cusp, approach, kind };
        assert!(ch.a * ch.d - ch.b * ch.c != 0);
        ch
    }

    pub fn pole() -> Self {
        Self::make([2, -5, 1, -2], "2", "tau -> 2 + i0", ChartKind::Pole)
    }

    pub fn zero() -> Self {
        Self::make([1, -2, 2, 0], "0", "tau -> 0 + i0", ChartKind::Zero)
    }

    pub fn half() -> Self {
        Self::make([3, -2, 2, -1], "1/2", "tau -> 1/2 + i0", ChartKind::Branch(CycloQ::one()))
    }

    pub fn infinity() -> Self {
        Self::make([1, -2, 0, 1], "inf", "tau -> i inf", ChartKind::Branch(CycloQ::from_int(-1)))
    }

    pub fn one() -> Self {
        Self::make([1, -2, 1, -1], "1", "tau -> 1 + i0", ChartKind::Branch(CycloQ::i()))
    }

    pub fn minus_one() -> Self {
        Self::make([3, 2, 1, 1], "-1", "tau -> -1 + i0", ChartKind::Branch(-CycloQ::i()))
    }

    pub fn all() -> [CuspChart; 6] {
        [Self::pole(), Self::zero(), Self::half(), Self::infinity(), Self::one(), Self::minus_one()]
    }

    pub fn by_name(name: &str) -> Option<CuspChart> {
        Self::all().into_iter().find(|c| c.cusp == name || (name == "infinity" && c.cusp == "inf"))
    }

    pub fn determinant(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// The cusp as a point of the extended real line (`None` for infinity).
    pub fn cusp_point(&self) -> Option<Rational> {
        if self.c == 0 {
            None
        } else {
            Some(Rational::from((-self.d, self.c)))
        }
    }

    /// Local coordinate at `tau`.
    pub fn q(&self, tau: &Complex) -> Result<Complex> {
        let p = tau.prec().0;
        let den = Complex::with_val(p, tau * self.c) + self.d;
        if den.real().is_zero() && den.imag().is_zero() {
            return Err(Error::OutOfDomain("tau is the cusp itself".into()));
        }
        let num = Complex::with_val(p, tau * self.a) + self.b;
        let ipi4 = Complex::with_val(p, &i_c(p) * &pi_c(p)) / 4u32;
        Ok((ipi4 * num / den).exp())
    }

    /// `ln q` on the principal sheet of the chart.
    pub fn log_q(&self, tau: &Complex) -> Result<Complex> {
        let p = tau.prec().0;
        let den = Complex::with_val(p, tau * self.c) + self.d;
        if den.real().is_zero() && den.imag().is_zero() {
            return Err(Error::OutOfDomain("tau is the cusp itself".into()));
        }
        let num = Complex::with_val(p, tau * self.a) + self.b;
        let ipi4 = Complex::with_val(p, &i_c(p) * &pi_c(p)) / 4u32;
        Ok(ipi4 * num / den)
    }

    /// A point at distance `eps` from the cusp along the chart's approach direction.
    pub fn point_near(&self, prec: u32, eps: f64) -> Complex {
        match self.cusp_point() {
            None => Complex::with_val(prec, (0, 1.0 / eps)),
            Some(r) => Complex::with_val(prec, (rug::Float::with_val(prec, &r), eps)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    Parabolic,
    /// Local order `n`, determined up to sign.
    Finite(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityClass {
    pub mu: Rational,
    pub order: Order,
}

/// Classify a double-pole coefficient `mu` of `Q` by `n^2 (2 mu + 1) = 1`.
pub fn classify_singularity(mu: &Rational) -> Result<SingularityClass> {
    let s = Rational::from(mu * 2u32) + 1u32;
    if s == 0 {
        return Ok(SingularityClass { mu: mu.clone(), order: Order::Parabolic });
    }
    if s < 0 || *s.numer() != 1 {
        return Err(Error::InvalidInput(format!("mu = {mu} gives no integer local order")));
    }
    let d = s.denom().clone();
    let (root, rem) = d.sqrt_rem(Integer::new());
    if rem != 0 {
        return Err(Error::InvalidInput(format!("mu = {mu} gives no integer local order")));
    }
    let n = root.to_u32().ok_or_else(|| Error::InvalidInput("local order too large".into()))?;
    Ok(SingularityClass { mu: mu.clone(), order: Order::Finite(n) })
}
