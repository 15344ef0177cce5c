//! Third-order jets: a value with its first three derivatives.
//!
//! Arithmetic follows the Leibniz and Faa di Bruno rules, so closed-form
//! expressions built from jets carry exact derivatives up to rounding.

use rug::Complex;

/// `(f, f', f'', f''')` at a point.
#[derive(Clone, Debug)]
pub struct Jet {
    pub d: [Complex; 4],
}

fn mk(p: u32) -> Complex {
    Complex::new(p)
}

impl Jet {
    pub fn prec(&self) -> u32 {
        self.d[0].prec().0
    }

    pub fn constant(c: Complex) -> Self {
        let p = c.prec().0;
        Jet { d: [c, mk(p), mk(p), mk(p)] }
    }

    /// The identity function at `x`.
    pub fn variable(x: Complex) -> Self {
        let p = x.prec().0;
        Jet { d: [x, Complex::with_val(p, 1), mk(p), mk(p)] }
    }

    pub fn value(&self) -> &Complex {
        &self.d[0]
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let p = self.prec();
        Jet { d: std::array::from_fn(|k| Complex::with_val(p, &self.d[k] + &o.d[k])) }
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        let p = self.prec();
        Jet { d: std::array::from_fn(|k| Complex::with_val(p, &self.d[k] - &o.d[k])) }
    }

    pub fn scale(&self, c: &Complex) -> Jet {
        let p = self.prec();
        Jet { d: std::array::from_fn(|k| Complex::with_val(p, &self.d[k] * c)) }
    }

    pub fn add_const(&self, c: &Complex) -> Jet {
        let mut r = self.clone();
        r.d[0] += c;
        r
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let p = self.prec();
        let [a0, a1, a2, a3] = &self.d;
        let [b0, b1, b2, b3] = &o.d;
        let c0 = Complex::with_val(p, a0 * b0);
        let c1 = Complex::with_val(p, a1 * b0) + Complex::with_val(p, a0 * b1);
        let c2 = Complex::with_val(p, a2 * b0)
            + Complex::with_val(p, a1 * b1) * 2u32
            + Complex::with_val(p, a0 * b2);
        let c3 = Complex::with_val(p, a3 * b0)
            + Complex::with_val(p, a2 * b1) * 3u32
            + Complex::with_val(p, a1 * b2) * 3u32
            + Complex::with_val(p, a0 * b3);
        Jet { d: [c0, c1, c2, c3] }
    }

    /// Composition `g(self)` given `g, g', g'', g'''` at the value of `self`.
    pub fn compose(&self, g: [Complex; 4]) -> Jet {
        let p = self.prec();
        let [_, f1, f2, f3] = &self.d;
        let [g0, g1, g2, g3] = g;
        let f1sq = Complex::with_val(p, f1 * f1);
        let c1 = Complex::with_val(p, &g1 * f1);
        let c2 = Complex::with_val(p, &g2 * &f1sq) + Complex::with_val(p, &g1 * f2);
        let f1cube = Complex::with_val(p, &f1sq * f1);
        let c3 = Complex::with_val(p, &g3 * &f1cube)
            + Complex::with_val(p, f1 * f2) * &g2 * 3u32
            + Complex::with_val(p, &g1 * f3);
        Jet { d: [g0, c1, c2, c3] }
    }

    pub fn recip(&self) -> Jet {
        let p = self.prec();
        let v = &self.d[0];
        let r = Complex::with_val(p, v.recip_ref());
        let r2 = Complex::with_val(p, &r * &r);
        let r3 = Complex::with_val(p, &r2 * &r);
        let r4 = Complex::with_val(p, &r3 * &r);
        self.compose([r, -r2, r3 * 2u32, -r4 * 6u32])
    }

    pub fn div(&self, o: &Jet) -> Jet {
        self.mul(&o.recip())
    }

    /// `self^e` on the principal branch.
    pub fn powc(&self, e: &Complex) -> Jet {
        let p = self.prec();
        let v = &self.d[0];
        let g0 = Complex::with_val(p, rug::ops::Pow::pow(v.clone(), e));
        let inv = Complex::with_val(p, v.recip_ref());
        let e1 = Complex::with_val(p, e - 1u32);
        let e2 = Complex::with_val(p, e - 2u32);
        let g1 = Complex::with_val(p, &g0 * e) * &inv;
        let g2 = Complex::with_val(p, &g1 * &e1) * &inv;
        let g3 = Complex::with_val(p, &g2 * &e2) * &inv;
        self.compose([g0, g1, g2, g3])
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Jet {
        self.powc(&Complex::with_val(self.prec(), 0.5))
    }

    pub fn exp(&self) -> Jet {
        let e = Complex::with_val(self.prec(), self.d[0].exp_ref());
        self.compose([e.clone(), e.clone(), e.clone(), e])
    }

    pub fn powi(&self, n: u32) -> Jet {
        let mut acc = Jet::constant(Complex::with_val(self.prec(), 1));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Schwarzian `{f, x} = f'''/f' - (3/2)(f''/f')^2`.
    pub fn schwarzian(&self) -> Complex {
        schwarzian(&self.d[1], &self.d[2], &self.d[3])
    }
}

/// Schwarzian from the first three derivatives.
pub fn schwarzian(f1: &Complex, f2: &Complex, f3: &Complex) -> Complex {
    let p = f1.prec().0;
    let a = Complex::with_val(p, f3 / f1);
    let b = Complex::with_val(p, f2 / f1);
    a - Complex::with_val(p, b.square_ref()) * 1.5f64
}

/// Meromorphic derivative `[f, x] = {f, x} / f'^2`.
pub fn meromorphic(f1: &Complex, f2: &Complex, f3: &Complex) -> Complex {
    let p = f1.prec().0;
    schwarzian(f1, f2, f3) / Complex::with_val(p, f1.square_ref())
}

/// Polynomial with complex coefficients (ascending) evaluated on a jet.
pub fn poly_jet(coeffs: &[Complex], x: &Jet) -> Jet {
    let p = x.prec();
    let mut acc = Jet::constant(Complex::new(p));
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add_const(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::mp::{abs_diff, cx};

    #[test]
    fn mobius_has_zero_schwarzian() {
        let p = 128;
        let x = Jet::variable(cx(p, 0.3, 0.7));
        let num = x.scale(&cx(p, 2.0, 1.0)).add_const(&cx(p, -1.0, 0.0));
        let den = x.scale(&cx(p, 0.5, 0.0)).add_const(&cx(p, 3.0, -1.0));
        let f = num.div(&den);
        assert!(crate::numeric::mp::abs_f64(&f.schwarzian()) < 1e-35);
    }

    #[test]
    fn exp_schwarzian() {
        let p = 128;
        let x = Jet::variable(cx(p, 0.2, -0.4));
        let f = x.scale(&cx(p, 3.0, 0.0)).exp();
        // {e^{ax}, x} = -a^2/2
        assert!(abs_diff(&f.schwarzian(), &cx(p, -4.5, 0.0)) < 1e-35);
    }

    #[test]
    fn power_derivatives() {
        let p = 128;
        let x = Jet::variable(cx(p, 2.0, 0.0));
        let f = x.powc(&cx(p, 3.0, 0.0));
        assert!(abs_diff(&f.d[1], &cx(p, 12.0, 0.0)) < 1e-30);
        assert!(abs_diff(&f.d[2], &cx(p, 12.0, 0.0)) < 1e-30);
        assert!(abs_diff(&f.d[3], &cx(p, 6.0, 0.0)) < 1e-30);
    }
}
