use rug::{Complex, Float, Rational};
use serde::Serialize;

use super::{HyperellipticCurve, RationalFunction};
use crate::numeric::cyclo::rational_sqrt;
use crate::numeric::diff::{default_step, derivative2};
use crate::numeric::jet::Jet;
use crate::numeric::mp::{abs_f64, ser_rational, ToleranceConfig};
use crate::numeric::poly::Poly;
use crate::numeric::CycloQ;
use crate::{Error, Result};

/// `y(y-1) F'' + ((a+b+1) y - c) F' + a b F = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypergeometricParams {
    #[serde(serialize_with = "ser_rational")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub b: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
}

impl HypergeometricParams {
    pub fn new(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Self {
        HypergeometricParams { a: Rational::from(a), b: Rational::from(b), c: Rational::from(c) }
    }
}

/// Gauss series `2F1(a, b; c | z)` for `|z| < 1`, with a bound on the omitted tail.
pub fn gauss_2f1(hp: &HypergeometricParams, z: &Complex) -> Result<(Complex, f64)> {
    if hp.c <= 0 && hp.c.denom() == &1u32 {
        return Err(Error::InvalidInput("c is a non-positive integer".into()));
    }
    let az = abs_f64(z);
    if az >= 1.0 {
        return Err(Error::OutOfDomain("|z| >= 1".into()));
    }
    let p = z.prec().0;
    let w = p + 32;
    let fl = |r: &Rational| Float::with_val(w, r);
    let (a, b, c) = (fl(&hp.a), fl(&hp.b), fl(&hp.c));
    let (ma, mb, mc) = (hp.a.to_f64().abs(), hp.b.to_f64().abs(), hp.c.to_f64().abs());
    let z = Complex::with_val(w, z);
    let mut term = Complex::with_val(w, 1);
    let mut sum = term.clone();
    let eps = 2f64.powi(-(p as i32));
    for n in 0u32..200_000 {
        let num = Float::with_val(w, &a + n) * Float::with_val(w, &b + n);
        let den = Float::with_val(w, &c + n) * (n + 1);
        term *= Complex::with_val(w, &z * num) / den;
        sum += &term;
        let m = (n + 2) as f64;
        if m > 2.0 * mc {
            let r = az * (1.0 + ma / m) * (1.0 + mb / m) / (1.0 - mc / m);
            if r < 1.0 {
                let tail = abs_f64(&term) * r / (1.0 - r);
                if tail <= eps * abs_f64(&sum).max(1e-300) {
                    return Ok((Complex::with_val(p, sum), tail));
                }
            }
        }
    }
    Err(Error::NoConvergence("Gauss series".into()))
}

/// `Psi~'' = -(g(g+1)/(2g+1)^2) ((y^2 + 3a)/(y^2 - a)^2) Psi~` for `y^2 = x^(2g+1) + a`.
#[derive(Clone, Debug, Serialize)]
pub struct HyperReduction {
    pub genus: usize,
    pub a: CycloQ,
    #[serde(serialize_with = "ser_rational")]
    pub coefficient: Rational,
    /// `lim (y - y0)^2 (1/2) Q~` at `y0 = +-sqrt a`, and `lim y^2 (1/2) Q~` at infinity.
    pub local_double_pole: [CycloQ; 3],
    /// Roots of `rho (rho - 1) = d`, `Psi~ ~ (y - y0)^rho` or `y^rho`, at `+sqrt a, -sqrt a, infinity`.
    pub exponents: Vec<[String; 2]>,
    #[serde(serialize_with = "ser_rational")]
    pub exponent_difference: Rational,
    /// Rotation angle of the elliptic generators over `pi`.
    #[serde(serialize_with = "ser_rational")]
    pub rotation_angle_over_pi: Rational,
    #[serde(skip)]
    pub q: RationalFunction,
}

/// Reduction of Whittaker's equation on `y^2 = x^(2g+1) + a` by `Psi~ = sqrt(y_x) Psi`.
pub fn hypergeometric_reduce(curve: &HyperellipticCurve) -> Result<HyperReduction> {
    let e = curve.e_poly();
    if e.degree() != Some(0) {
        return Err(Error::InvalidInput("E(x) is not constant: the reduced equation depends on x".into()));
    }
    let a = e.c[0].clone();
    let g = curve.genus as i64;
    let n = 2 * g + 1;
    let coefficient = Rational::from((-g * (g + 1), n * n));
    let k = CycloQ::from_rational(coefficient.clone());
    // y0^2 = a, so (y0^2 + 3a)/(2 y0)^2 = 1
    let four_a = a.mul_int(4);
    let at_root = (&k * &four_a).checked_div(&four_a)?;
    let local_double_pole = [at_root.clone(), at_root, k.clone()];
    let d = k.as_rational().cloned().ok_or_else(|| Error::InvalidInput("non-rational coefficient".into()))?;
    let disc = Rational::from(1) + Rational::from(&d * 4);
    let s = rational_sqrt(&disc).ok_or_else(|| Error::InvalidInput("irrational exponents".into()))?;
    let lo: Rational = Rational::from(1 - &s) / 2u32;
    let hi: Rational = Rational::from(1 + &s) / 2u32;
    let pair = [lo.to_string(), hi.to_string()];
    let num = Poly::new(vec![a.mul_int(3), CycloQ::zero(), CycloQ::one()]).scale(&k.mul_int(2));
    let base = Poly::new(vec![-&a, CycloQ::zero(), CycloQ::one()]);
    Ok(HyperReduction {
        genus: curve.genus,
        a,
        coefficient,
        local_double_pole,
        exponents: vec![pair.clone(), pair.clone(), pair],
        exponent_difference: Rational::from(&hi - &lo),
        rotation_angle_over_pi: Rational::from(&hi - &lo) * 2,
        q: RationalFunction { num, den: base.mul(&base) },
    })
}

/// ODE residuals of the two Gauss-series solutions of
/// `Psi~'' = -(6/25)(y^2+3)/(y^2-1)^2 Psi~`.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionsCheck {
    pub psi1: f64,
    pub psi2: f64,
}

/// `(1-y^2)^(2/5) 2F1(2/5, 1/5; 4/5 | (1-y)/2)` and
/// `(1-y)^(1/5) (1-y^2)^(2/5) 2F1(3/5, 2/5; 6/5 | (1-y)/2)`, which equal the
/// solutions written with `(y^2-1)`, `(y-1)` up to constant phases.
pub fn hypergeometric_solutions_check(y: &Complex, tc: &ToleranceConfig) -> Result<SolutionsCheck> {
    let w = tc.working_prec();
    let y = Complex::with_val(w, y);
    let pot = |y: &Complex| {
        let y2 = Complex::with_val(w, y.square_ref());
        let d = Complex::with_val(w, &y2 - 1u32).square();
        (y2 + 3u32) * -6i32 / 25u32 / d
    };
    let fifth = |k: i32| Complex::with_val(w, Float::with_val(w, k) / 5u32);
    let p1 = HypergeometricParams::new((2, 5), (1, 5), (4, 5));
    let p2 = HypergeometricParams::new((3, 5), (2, 5), (6, 5));
    let psi = |second: bool| {
        let (p1, p2) = (p1.clone(), p2.clone());
        move |y: &Complex| -> Result<Complex> {
            let one_m = Complex::with_val(w, 1u32 - y);
            let z = Complex::with_val(w, &one_m / 2u32);
            let s = Complex::with_val(w, 1u32 - Complex::with_val(w, y.square_ref()));
            let base = rug::ops::Pow::pow(s, &fifth(2));
            if second {
                let f = gauss_2f1(&p2, &z)?.0;
                Ok(base * rug::ops::Pow::pow(one_m, &fifth(1)) * f)
            } else {
                Ok(base * gauss_2f1(&p1, &z)?.0)
            }
        }
    };
    let h = Complex::with_val(w, default_step(tc.precision_bits));
    let v = pot(&y);
    let res = |second: bool| -> Result<f64> {
        let (c, d2) = derivative2(psi(second), &y, &h, 6)?;
        let rhs = Complex::with_val(w, &v * &c);
        let scale = abs_f64(&rhs).max(abs_f64(&d2)).max(1e-300);
        Ok(abs_f64(&(d2 - rhs)) / scale)
    };
    Ok(SolutionsCheck { psi1: res(false)?, psi2: res(true)? })
}

/// The gauge `Psi(x(y)) = S(y) Psi~(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gauge {
    /// `Psi~ = sqrt(y_x) Psi`, which keeps the normal form.
    SqrtDeriv,
    /// `Psi = sqrt(y) Psi~`.
    Weber,
}

/// `Psi~'' + p Psi~' + r Psi~ = 0` at one point.
#[derive(Clone, Debug)]
pub struct TransformedEquation {
    pub p: Complex,
    pub r: Complex,
}

impl TransformedEquation {
    /// The potential `Q` of `Psi~'' = (1/2) Q Psi~` when `p = 0`.
    pub fn q_out(&self) -> Complex {
        Complex::with_val(self.r.prec().0, &self.r * -2i32)
    }
}

/// Transform `Psi_xx = (1/2) Q_in(x) Psi` under `x = map(y)` at the point `y`.
///
/// For [`Gauge::SqrtDeriv`] the result is `Q_out = x_y^2 Q_in(x) - {x, y}`.
pub fn substitution_transform<F, M>(q_in: F, gauge: Gauge, map: M, y: &Complex) -> Result<TransformedEquation>
where
    F: Fn(&Complex) -> Result<Complex>,
    M: Fn(&Jet) -> Result<Jet>,
{
    let p = y.prec().0;
    let x = map(&Jet::variable(y.clone()))?;
    let [_, x1, x2, _] = &x.d;
    if abs_f64(x1) < 2f64.powi(-(p as i32) / 2) {
        return Err(Error::NearSingularity("critical point of the map".into()));
    }
    let half_q = Complex::with_val(p, q_in(x.value())? * Complex::with_val(p, x1.square_ref())) / 2u32;
    Ok(match gauge {
        Gauge::SqrtDeriv => {
            let r = Complex::with_val(p, x.schwarzian() / 2u32) - half_q;
            TransformedEquation { p: Complex::new(p), r }
        }
        Gauge::Weber => {
            let l = Complex::with_val(p, x2 / x1);
            let s1 = Complex::with_val(p, y.recip_ref()) / 2u32;
            let s2 = -Complex::with_val(p, s1.square_ref());
            let pp = Complex::with_val(p, &s1 * 2u32) - &l;
            let r = s2 - Complex::with_val(p, &l * &s1) - half_q;
            TransformedEquation { p: pp, r }
        }
    })
}
