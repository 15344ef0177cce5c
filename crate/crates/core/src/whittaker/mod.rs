//! Whittaker's Q-function for hyperelliptic curves `y^2 = f(x)`, its
//! reduction to the hypergeometric equation, the Gauss series, and the
//! conversion between the Burnside and Whittaker global coordinates.
//!
//! Every Q here is the potential of `Psi'' = (1/2) Q Psi`.

mod conversion;
mod hyper;

pub use conversion::{
    conversion_ode_series, eta4_integral_series, eta_power_ode_check, quadrature_check, ConversionRecord, ConversionSeries, EtaOdeCheck,
    QuadratureCheck,
};
pub use hyper::{
    gauss_2f1, hypergeometric_reduce, hypergeometric_solutions_check, substitution_transform, Gauge, HyperReduction,
    HypergeometricParams, SolutionsCheck, TransformedEquation,
};

use rug::{Complex, Rational};
use serde::Serialize;

use crate::numeric::mp::abs_f64;
use crate::numeric::poly::Poly;
use crate::numeric::CycloQ;
use crate::{Error, Result};

/// `y^2 = f(x)` with `f` monic, squarefree, of degree `2g + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    pub f: Poly,
    pub genus: usize,
    pub branch_points: Option<Vec<CycloQ>>,
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.divrem(&b);
        a = b;
        b = r;
    }
    a
}

fn monomial(k: usize, c: CycloQ) -> Poly {
    let mut v = vec![CycloQ::zero(); k + 1];
    v[k] = c;
    Poly::new(v)
}

impl HyperellipticCurve {
    pub fn from_poly(f: Poly) -> Result<Self> {
        let d = f.degree().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
        if d < 3 || d % 2 == 0 {
            return Err(Error::InvalidInput(format!("degree {d} is not 2g+1 with g >= 1")));
        }
        if f.c[d] != CycloQ::one() {
            return Err(Error::InvalidInput("f must be monic".into()));
        }
        if poly_gcd(&f, &f.deriv()).degree() != Some(0) {
            return Err(Error::InvalidInput("repeated branch point".into()));
        }
        Ok(HyperellipticCurve { f, genus: (d - 1) / 2, branch_points: None })
    }

    pub fn from_branch_points(e: &[CycloQ]) -> Result<Self> {
        for (j, a) in e.iter().enumerate() {
            if e[..j].contains(a) {
                return Err(Error::InvalidInput(format!("repeated branch point {a}")));
            }
        }
        let mut c = Self::from_poly(Poly::from_roots(e))?;
        c.branch_points = Some(e.to_vec());
        Ok(c)
    }

    /// `y^2 = x^(2g+1) + E(x)`.
    pub fn from_normal_form(g: usize, e: Poly) -> Result<Self> {
        if e.degree().is_some_and(|d| d > 2 * g) {
            return Err(Error::InvalidInput("deg E exceeds 2g".into()));
        }
        Self::from_poly(monomial(2 * g + 1, CycloQ::one()).add(&e))
    }

    /// `y^2 = x^5 - x` with its branch points `0, +-1, +-i`.
    pub fn burnside() -> Self {
        let e = [0, 1, -1].map(CycloQ::from_int);
        let mut pts = e.to_vec();
        pts.push(CycloQ::i());
        pts.push(-CycloQ::i());
        Self::from_branch_points(&pts).expect("distinct points")
    }

    pub fn degree(&self) -> usize {
        2 * self.genus + 1
    }

    /// `E(x) = f(x) - x^(2g+1)`.
    pub fn e_poly(&self) -> Poly {
        self.f.sub(&monomial(self.degree(), CycloQ::one()))
    }
}

/// `num / den` over `Q(i, sqrt 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn eval_exact(&self, x: &CycloQ) -> Result<CycloQ> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::OutOfDomain(format!("pole at {x}")));
        }
        self.num.eval(x).checked_div(&d)
    }

    pub fn eval(&self, x: &Complex) -> Result<Complex> {
        let p = x.prec().0;
        let d = self.den.eval_mp(x);
        let scale = self.den.c.iter().map(|c| abs_f64(&c.embed(53))).fold(0.0, f64::max) * (1.0 + abs_f64(x)).powi(self.den.c.len() as i32);
        if abs_f64(&d) <= scale * 2f64.powi(-(p as i32) / 2) {
            return Err(Error::NearSingularity("argument at a pole".into()));
        }
        Ok(self.num.eval_mp(x) / d)
    }

    pub fn scale(&self, k: &CycloQ) -> RationalFunction {
        RationalFunction { num: self.num.scale(k), den: self.den.clone() }
    }

    /// Equality as rational functions, by cross multiplication.
    pub fn same_as(&self, o: &RationalFunction) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

fn bracket(f: &Poly, first: &Poly, rest: &Poly, k: CycloQ) -> RationalFunction {
    let fp = f.deriv();
    let num = fp.mul(&fp).sub(&first.mul(f)).sub(&rest.mul(f)).scale(&k);
    RationalFunction { num, den: f.mul(f) }
}

/// `Q = -(3/8) { f'^2/f^2 - ((2g+2)/(2g+1)) f''/f }`.
pub fn whittaker_q(curve: &HyperellipticCurve) -> RationalFunction {
    let n = curve.degree() as i64;
    let fpp = curve.f.deriv().deriv().scale(&CycloQ::frac(n + 1, n));
    bracket(&curve.f, &fpp, &Poly::default(), CycloQ::frac(-3, 8))
}

/// The same bracket with `-1/2` in front.
pub fn parabolic_q(curve: &HyperellipticCurve) -> RationalFunction {
    whittaker_q(curve).scale(&CycloQ::frac(4, 3))
}

/// `Q = -(1/2)(x^8 + 14 x^4 + 1)/(x^5 - x)^2`.
pub fn burnside_q() -> RationalFunction {
    let f = Poly::from_ints(&[0, -1, 0, 0, 0, 1]);
    RationalFunction { num: Poly::from_ints(&[1, 0, 0, 0, 14, 0, 0, 0, 1]).scale(&CycloQ::frac(-1, 2)), den: f.mul(&f) }
}

/// `A(x) = E''(x)/(2g+1)`, the accessory polynomial the conjecture predicts.
pub fn accessory_decomposition(curve: &HyperellipticCurve) -> Poly {
    accessory_polynomial(curve.genus, &curve.e_poly())
}

/// `E''/(2g+1)` for any `E`, singular curves included.
pub fn accessory_polynomial(genus: usize, e: &Poly) -> Poly {
    e.deriv().deriv().scale(&CycloQ::frac(1, 2 * genus as i64 + 1))
}

/// A Fuchsian equation on the curve with a chosen accessory polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerQ {
    pub curve: HyperellipticCurve,
    pub accessory: Poly,
}

impl WhittakerQ {
    pub fn conjectured(curve: &HyperellipticCurve) -> Self {
        WhittakerQ { accessory: accessory_decomposition(curve), curve: curve.clone() }
    }

    fn x_top(&self) -> Poly {
        monomial(2 * self.curve.genus - 1, CycloQ::one())
    }

    /// `-(3/8) { f'^2/f^2 - 4g(g+1) x^(2g-1)/f - (E'' + A)/f }`.
    pub fn rational(&self) -> RationalFunction {
        let g = self.curve.genus as i64;
        let top = self.x_top().scale(&CycloQ::from_int(4 * g * (g + 1)));
        let rest = self.curve.e_poly().deriv().deriv().add(&self.accessory);
        bracket(&self.curve.f, &top, &rest, CycloQ::frac(-3, 8))
    }

    /// Twice `-(3/16) { sum 1/(x - e_k)^2 - (2g x^(2g-1) + A(x))/f }`.
    pub fn fuchs_form(&self) -> RationalFunction {
        let f = &self.curve.f;
        let g = self.curve.genus as i64;
        let lin = self.x_top().scale(&CycloQ::from_int(2 * g)).add(&self.accessory);
        bracket(f, &f.deriv().deriv(), &lin, CycloQ::frac(-3, 8))
    }

    /// `(2g+1) A = E''`.
    pub fn satisfies_conjecture(&self) -> bool {
        self.accessory.scale(&CycloQ::from_int(self.curve.degree() as i64)) == self.curve.e_poly().deriv().deriv()
    }
}

/// Laurent data of `(1/2) Q` at a finite branch point.
#[derive(Clone, Debug, Serialize)]
pub struct PoleTerm {
    pub point: CycloQ,
    pub double_pole: CycloQ,
    pub residue: CycloQ,
}

/// `(1/2) Q = double/(x-e)^2 + residue/(x-e) + ...` at each exact branch point.
pub fn partial_fractions(q: &RationalFunction, points: &[CycloQ]) -> Result<Vec<PoleTerm>> {
    let d1 = q.den.deriv();
    let d2 = d1.deriv();
    let d3 = d2.deriv();
    let n1 = q.num.deriv();
    points
        .iter()
        .map(|e| {
            if !q.den.eval(e).is_zero() || !d1.eval(e).is_zero() {
                return Err(Error::InvalidInput(format!("{e} is not a double pole")));
            }
            let g0 = d2.eval(e).scale(&Rational::from((1, 2)));
            let g1 = d3.eval(e).scale(&Rational::from((1, 6)));
            let n0 = q.num.eval(e);
            let double = n0.checked_div(&g0)?;
            let res = (&(&n1.eval(e) * &g0) - &(&n0 * &g1)).checked_div(&(&g0 * &g0))?;
            let half = Rational::from((1, 2));
            Ok(PoleTerm { point: e.clone(), double_pole: double.scale(&half), residue: res.scale(&half) })
        })
        .collect()
}
