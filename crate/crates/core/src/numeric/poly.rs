//! Dense univariate polynomials over `Q(i, sqrt 2)`.

use rug::Complex;

use super::cyclo::CycloQ;

/// Coefficients in ascending order; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub c: Vec<CycloQ>,
}

impl Poly {
    pub fn new(mut c: Vec<CycloQ>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| CycloQ::from_int(n)).collect())
    }

    pub fn constant(c: CycloQ) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &CycloQ) -> Self {
        Self::new(vec![-r, CycloQ::one()])
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, k: usize) -> CycloQ {
        self.c.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![CycloQ::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &CycloQ) -> Poly {
        Poly::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn deriv(&self) -> Poly {
        Poly::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a.mul_int(k as i64)).collect())
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(CycloQ::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &CycloQ) -> CycloQ {
        let mut acc = CycloQ::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn eval_mp(&self, x: &Complex) -> Complex {
        let p = x.prec().0;
        let mut acc = Complex::new(p);
        for a in self.c.iter().rev() {
            acc *= x;
            acc += a.embed(p);
        }
        acc
    }

    /// Product of `(x - r)` over the roots.
    pub fn from_roots(roots: &[CycloQ]) -> Poly {
        roots.iter().fold(Poly::constant(CycloQ::one()), |acc, r| acc.mul(&Poly::linear_root(r)))
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.c[dd].inv().expect("nonzero lead");
        let mut r = self.c.clone();
        let mut q = vec![CycloQ::zero(); self.c.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let t = &r[k] * &lead_inv;
            if !t.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k - dd + j] = &r[k - dd + j] - &(&t * dj);
                }
            }
            q[k - dd] = t;
            r.pop();
        }
        (Poly::new(q), Poly::new(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_exact() {
        let a = Poly::from_ints(&[-1, 0, 0, 0, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert!(r.is_zero());
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn derivative() {
        let f = Poly::from_ints(&[0, -1, 0, 0, 0, 1]);
        assert_eq!(f.deriv(), Poly::from_ints(&[-1, 0, 0, 0, 5]));
    }
}
