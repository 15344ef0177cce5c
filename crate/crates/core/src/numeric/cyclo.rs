//! Exact arithmetic in the number field `Q(i, sqrt 2) = Q(zeta_8)`.
//!
//! An element is stored as `c0 + c1*sqrt2 + c2*i + c3*i*sqrt2` with rational
//! coordinates.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::{Complex, Float, Integer, Rational};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Element of `Q(i, sqrt 2)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycloQ {
    pub c: [Rational; 4],
}

/// Element of `Q(sqrt 2)` as `(a, b)` meaning `a + b*sqrt2`.
type Real2 = (Rational, Rational);

fn r2_mul(x: &Real2, y: &Real2) -> Real2 {
    let a = Rational::from(&x.0 * &y.0) + Rational::from(&x.1 * &y.1) * 2u32;
    let b = Rational::from(&x.0 * &y.1) + Rational::from(&x.1 * &y.0);
    (a, b)
}

fn r2_add(x: &Real2, y: &Real2) -> Real2 {
    (Rational::from(&x.0 + &y.0), Rational::from(&x.1 + &y.1))
}

fn r2_sub(x: &Real2, y: &Real2) -> Real2 {
    (Rational::from(&x.0 - &y.0), Rational::from(&x.1 - &y.1))
}

fn r2_inv(x: &Real2) -> Real2 {
    let norm = Rational::from(x.0.square_ref()) - Rational::from(x.1.square_ref()) * 2u32;
    (Rational::from(&x.0 / &norm), Rational::from(-&x.1) / norm)
}

impl CycloQ {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        CycloQ { c: [c0, c1, c2, c3] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::from(1))
    }

    pub fn i() -> Self {
        Self::new(0.into(), 0.into(), 1.into(), 0.into())
    }

    pub fn sqrt2() -> Self {
        Self::new(0.into(), 1.into(), 0.into(), 0.into())
    }

    /// `zeta_8 = (1+i)/sqrt2 = sqrt(i)`.
    pub fn zeta8() -> Self {
        let h = Rational::from((1, 2));
        Self::new(0.into(), h.clone(), 0.into(), h)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, 0.into(), 0.into(), 0.into())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::from((n, d)))
    }

    /// `a + b*sqrt2` with integer parts over a common denominator.
    pub fn real2(a: Rational, b: Rational) -> Self {
        Self::new(a, b, 0.into(), 0.into())
    }

    pub fn from_parts(re: Real2, im: Real2) -> Self {
        Self::new(re.0, re.1, im.0, im.1)
    }

    fn re(&self) -> Real2 {
        (self.c[0].clone(), self.c[1].clone())
    }

    fn im(&self) -> Real2 {
        (self.c[2].clone(), self.c[3].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| *r == 0)
    }

    /// True when the element is a rational number.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1] == 0 && self.c[2] == 0 && self.c[3] == 0 {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// True when the element is a rational integer.
    pub fn as_integer(&self) -> Option<Integer> {
        self.as_rational()
            .filter(|r| *r.denom() == 1)
            .map(|r| r.numer().clone())
    }

    /// True when every coordinate is an integer.
    pub fn is_integral_coords(&self) -> bool {
        self.c.iter().all(|r| *r.denom() == 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.c[0].clone(),
            self.c[1].clone(),
            Rational::from(-&self.c[2]),
            Rational::from(-&self.c[3]),
        )
    }

    /// Image under `sqrt2 -> -sqrt2`.
    pub fn sqrt2_conj(&self) -> Self {
        Self::new(
            self.c[0].clone(),
            Rational::from(-&self.c[1]),
            self.c[2].clone(),
            Rational::from(-&self.c[3]),
        )
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            c: std::array::from_fn(|k| Rational::from(&self.c[k] * r)),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (p, q) = (self.re(), self.im());
        let n = r2_add(&r2_mul(&p, &p), &r2_mul(&q, &q));
        let ni = r2_inv(&n);
        let re = r2_mul(&p, &ni);
        let im = r2_mul(&(Rational::from(-&q.0), Rational::from(-&q.1)), &ni);
        Ok(Self::from_parts(re, im))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exact square root when it lies in the field and is recognized.
    ///
    /// Recognized inputs are `r * s * u` with `r` a rational square, `s` in
    /// `{1, 2}` and `u` a power of `zeta_8`.  The returned root is the one with
    /// argument in `(-pi/2, pi/2]`.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // sqrt(zeta8^k) lies in the field only for even k
        let i = Self::i();
        let mut u = Self::one();
        for half in 0..4 {
            let w = self.checked_div(&u).ok()?;
            if let Some(r) = w.as_rational().filter(|r| **r > 0) {
                let root = if let Some(s) = rational_sqrt(r) {
                    Some(Self::from_rational(s))
                } else {
                    rational_sqrt(&Rational::from(r / 2u32)).map(|s| Self::sqrt2().scale(&s))
                };
                if let Some(root) = root {
                    let unit = Self::zeta8().pow(half).ok()?;
                    let r = &root * &unit;
                    return Some(if half == 3 { -r } else { r });
                }
            }
            u = &u * &i;
        }
        None
    }

    /// Numeric value at `prec` bits.
    pub fn embed(&self, prec: u32) -> Complex {
        let s2 = Float::with_val(prec, 2).sqrt();
        let re = Float::with_val(prec, &self.c[0]) + Float::with_val(prec, &self.c[1] * &s2);
        let im = Float::with_val(prec, &self.c[2]) + Float::with_val(prec, &self.c[3] * &s2);
        Complex::with_val(prec, (re, im))
    }

    /// Element times an integer.
    pub fn mul_int(&self, n: i64) -> Self {
        self.scale(&Rational::from(n))
    }
}

/// Exact square root of a nonnegative rational when it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if *r < 0 {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, rn) = n.clone().sqrt_rem(Integer::new());
    let (sd, rd) = d.clone().sqrt_rem(Integer::new());
    if rn == 0 && rd == 0 {
        Some(Rational::from((sn, sd)))
    } else {
        None
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&CycloQ> for &CycloQ {
            type Output = CycloQ;
            fn $m(self, rhs: &CycloQ) -> CycloQ {
                let f: fn(&CycloQ, &CycloQ) -> CycloQ = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycloQ> for CycloQ {
            type Output = CycloQ;
            fn $m(self, rhs: CycloQ) -> CycloQ {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycloQ> for CycloQ {
            type Output = CycloQ;
            fn $m(self, rhs: &CycloQ) -> CycloQ {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycloQ> for &CycloQ {
            type Output = CycloQ;
            fn $m(self, rhs: CycloQ) -> CycloQ {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| CycloQ {
    c: std::array::from_fn(|k| Rational::from(&a.c[k] + &b.c[k])),
});
binop!(Sub, sub, |a, b| CycloQ {
    c: std::array::from_fn(|k| Rational::from(&a.c[k] - &b.c[k])),
});
binop!(Mul, mul, |a, b| {
    let (p, q) = (a.re(), a.im());
    let (r, s) = (b.re(), b.im());
    let re = r2_sub(&r2_mul(&p, &r), &r2_mul(&q, &s));
    let im = r2_add(&r2_mul(&p, &s), &r2_mul(&q, &r));
    CycloQ::from_parts(re, im)
});
binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("CycloQ division by zero"));

impl Neg for CycloQ {
    type Output = CycloQ;
    fn neg(self) -> CycloQ {
        CycloQ {
            c: self.c.map(|r| -r),
        }
    }
}

impl Neg for &CycloQ {
    type Output = CycloQ;
    fn neg(self) -> CycloQ {
        -(self.clone())
    }
}

impl From<i64> for CycloQ {
    fn from(n: i64) -> Self {
        CycloQ::from_int(n)
    }
}

impl From<Rational> for CycloQ {
    fn from(r: Rational) -> Self {
        CycloQ::from_rational(r)
    }
}

impl fmt::Display for CycloQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const BASIS: [&str; 4] = ["", "*sqrt2", "*i", "*i*sqrt2"];
        let mut first = true;
        for (k, r) in self.c.iter().enumerate() {
            if *r == 0 {
                continue;
            }
            let neg = *r < 0;
            let mag = Rational::from(r.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let unit = k > 0 && mag == 1;
            if unit {
                write!(f, "{}", &BASIS[k][1..])?;
            } else {
                write!(f, "{}{}", mag, BASIS[k])?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloQ({self})")
    }
}

impl Serialize for CycloQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
