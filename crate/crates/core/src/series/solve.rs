//! Coefficient-by-coefficient solution of
//!
//! ```text
//! (X^5 - X)^2 (2 DX D^3X - 3 (D^2X)^2) + (X^8 + 14 X^4 + 1)(DX)^4 = 0,   D = q d/dq,
//! ```
//!
//! the Schwarz equation of `x(tau)` written in a cusp coordinate `q`.

use rug::{Complex, Rational};

use super::chart::{ChartKind, CuspChart};
use super::{LaurentSeries, Prefactor};
use crate::numeric::CycloQ;
use crate::{Error, Result};

/// `X = lead_coeff q^lead_exp (1 + free[0] q^step + free[1] q^(2 step) + ...)`,
/// with the remaining coefficients fixed by the equation.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub lead_exp: i64,
    pub lead_coeff: CycloQ,
    pub step: i64,
    pub free: Vec<Rational>,
}

impl Ansatz {
    /// Normalization used for the canonical expansions of each chart.
    pub fn canonical(chart: &CuspChart) -> Ansatz {
        match &chart.kind {
            ChartKind::Pole => Ansatz { lead_exp: -2, lead_coeff: CycloQ::frac(1, 2), step: 8, free: vec![] },
            ChartKind::Zero => Ansatz {
                lead_exp: 2,
                lead_coeff: CycloQ::zeta8().pow(3).expect("unit").mul_int(2),
                step: 8,
                free: vec![],
            },
            ChartKind::Branch(e) => Ansatz { lead_exp: 0, lead_coeff: e.clone(), step: 2, free: vec![Rational::from(4)] },
        }
    }
}

enum Node {
    F,
    /// `sum c_i t^i`, finitely many terms.
    Poly(Vec<Rational>),
    /// `(n0 + s i) a_i`
    Theta(usize),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    Scale(usize, Rational),
}

/// Expression graph over series in `t`, evaluated one coefficient index at a time.
struct Graph {
    nodes: Vec<Node>,
    vals: Vec<Vec<Rational>>,
    n0: i64,
    s: i64,
}

impl Graph {
    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.vals.push(Vec::new());
        self.nodes.len() - 1
    }

    fn compute(&mut self, i: usize, f: &[Rational]) {
        for id in 0..self.nodes.len() {
            let v = match &self.nodes[id] {
                Node::F => f.get(i).cloned().unwrap_or_default(),
                Node::Poly(c) => c.get(i).cloned().unwrap_or_default(),
                Node::Theta(a) => Rational::from(&self.vals[*a][i] * (self.n0 + self.s * i as i64)),
                Node::Add(a, b) => Rational::from(&self.vals[*a][i] + &self.vals[*b][i]),
                Node::Sub(a, b) => Rational::from(&self.vals[*a][i] - &self.vals[*b][i]),
                Node::Scale(a, r) => Rational::from(&self.vals[*a][i] * r),
                Node::Mul(a, b) => {
                    let (va, vb) = (&self.vals[*a], &self.vals[*b]);
                    let mut acc = Rational::new();
                    for k in 0..=i {
                        if va[k] != 0 && vb[i - k] != 0 {
                            acc += Rational::from(&va[k] * &vb[i - k]);
                        }
                    }
                    acc
                }
            };
            let slot = &mut self.vals[id];
            if slot.len() <= i {
                slot.resize(i + 1, Rational::new());
            }
            slot[i] = v;
        }
    }
}

/// Build the residual graph for `X = c q^n0 F(q^s)` with `c^4 = kappa`; returns the residual node.
fn build(n0: i64, s: i64, kappa: &Rational) -> Result<(Graph, usize)> {
    if (4 * n0) % s != 0 {
        return Err(Error::InvalidInput("leading exponent incompatible with the step".into()));
    }
    let u = 4 * n0 / s;
    let mut g = Graph { nodes: vec![], vals: vec![], n0, s };
    let f = g.push(Node::F);
    let g1 = g.push(Node::Theta(f));
    let g2 = g.push(Node::Theta(g1));
    let g3 = g.push(Node::Theta(g2));
    let f2 = g.push(Node::Mul(f, f));
    let f4 = g.push(Node::Mul(f2, f2));
    let p = g.push(Node::Scale(f4, kappa.clone()));
    let mono = |k: i64| {
        let mut c = vec![Rational::new(); k as usize + 1];
        c[k as usize] = Rational::from(1);
        Node::Poly(c)
    };
    // A = X^4/c^4 q^(-4 n0) = t^u P; both factors multiplied through by t^(2 max(0,-u)).
    let (t1, t2) = if u >= 0 {
        let tu = g.push(mono(u));
        let a = g.push(Node::Mul(tu, p));
        let one = g.push(mono(0));
        let am1 = g.push(Node::Sub(a, one));
        let t1 = g.push(Node::Mul(am1, am1));
        let a2 = g.push(Node::Mul(a, a));
        let a14 = g.push(Node::Scale(a, Rational::from(14)));
        let s1 = g.push(Node::Add(a2, a14));
        let t2 = g.push(Node::Add(s1, one));
        (t1, t2)
    } else {
        let tv = g.push(mono(-u));
        let t2v = g.push(mono(-2 * u));
        let pm = g.push(Node::Sub(p, tv));
        let t1 = g.push(Node::Mul(pm, pm));
        let p2 = g.push(Node::Mul(p, p));
        let tp = g.push(Node::Mul(tv, p));
        let tp14 = g.push(Node::Scale(tp, Rational::from(14)));
        let s1 = g.push(Node::Add(p2, tp14));
        let t2 = g.push(Node::Add(s1, t2v));
        (t1, t2)
    };
    let a13 = g.push(Node::Mul(g1, g3));
    let a13 = g.push(Node::Scale(a13, Rational::from(2)));
    let b22 = g.push(Node::Mul(g2, g2));
    let b22 = g.push(Node::Scale(b22, Rational::from(3)));
    let sch = g.push(Node::Sub(a13, b22));
    let l = g.push(Node::Mul(t1, f2));
    let l = g.push(Node::Mul(l, sch));
    let d2 = g.push(Node::Mul(g1, g1));
    let d4 = g.push(Node::Mul(d2, d2));
    let r = g.push(Node::Mul(t2, d4));
    let res = g.push(Node::Add(l, r));
    Ok((g, res))
}

/// Coefficients `f_k`, `k < n`, of the normalized series `F` for `X = c q^n0 F(q^s)`.
fn solve_normalized(n0: i64, s: i64, kappa: &Rational, free: &[Rational], n: usize) -> Result<Vec<Rational>> {
    let (mut g, res) = build(n0, s, kappa)?;
    let mut f: Vec<Rational> = std::iter::once(Rational::from(1)).chain(free.iter().cloned()).collect();
    if f.len() >= n {
        f.truncate(n);
        return Ok(f);
    }
    let j0 = f.len();
    // locate the first residual index that sees f_j0
    let probe = j0 + 16;
    let trial = |g: &mut Graph, f: &mut Vec<Rational>, j: usize, v: i64, upto: usize| -> Vec<Rational> {
        f.truncate(j);
        f.push(Rational::from(v));
        (0..=upto).map(|i| {
            g.compute(i, f);
            g.vals[res][i].clone()
        }).collect()
    };
    let r0 = trial(&mut g, &mut f, j0, 0, probe);
    let r1 = trial(&mut g, &mut f, j0, 1, probe);
    let first = (0..=probe).find(|&i| r0[i] != r1[i]).ok_or_else(|| Error::Degenerate("coefficient does not enter the recurrence".into()))?;
    if first < j0 {
        return Err(Error::Degenerate("recurrence offset smaller than the free prefix".into()));
    }
    let off = first - j0;
    if let Some(i) = (0..first).find(|&i| r0[i] != 0) {
        return Err(Error::Degenerate(format!("ansatz inconsistent at residual index {i}")));
    }
    for j in j0..n {
        let lo = j;
        let hi = j + off;
        let mut eval = |f: &mut Vec<Rational>, v: Rational| -> Rational {
            f.truncate(j);
            f.push(v);
            for i in lo..=hi {
                g.compute(i, f);
            }
            g.vals[res][hi].clone()
        };
        let a = eval(&mut f, Rational::new());
        let b = eval(&mut f, Rational::from(1));
        let pivot = Rational::from(&b - &a);
        if pivot == 0 {
            return Err(Error::Degenerate(format!("vanishing pivot at coefficient {j}")));
        }
        let v = Rational::from(-a) / pivot;
        eval(&mut f, v);
    }
    // full residual check through the determined range
    for i in 0..n + off {
        g.compute(i, &f);
        if g.vals[res][i] != 0 {
            return Err(Error::Degenerate(format!("nonzero residual at index {i}")));
        }
    }
    Ok(f)
}

/// Split `c` as `zeta8^k * r` with `r` rational when possible.
fn split_phase(c: &CycloQ) -> Prefactor {
    let z = CycloQ::zeta8();
    for k in 0..8i64 {
        let w = c * &z.pow(-k).expect("unit");
        if w.as_rational().is_some_and(|r| *r > 0) {
            return Prefactor { phase16: (2 * k) as u8, scale: w, q_shift: Rational::new() };
        }
    }
    Prefactor { scale: c.clone(), ..Prefactor::default() }
}

/// Solve the Schwarz equation of `x` in `chart` to `n` coefficients.
///
/// The leading coefficient must have a rational fourth power.
pub fn solve_schwarz_series(chart: &CuspChart, ansatz: &Ansatz, n: usize) -> Result<LaurentSeries> {
    if n == 0 {
        return Err(Error::InvalidInput("series length must be positive".into()));
    }
    if chart.determinant() == 0 {
        return Err(Error::InvalidInput("degenerate chart".into()));
    }
    let c4 = ansatz.lead_coeff.pow(4)?;
    let kappa = c4
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::InvalidInput("leading coefficient must have a rational fourth power".into()))?;
    if kappa == 0 {
        return Err(Error::InvalidInput("leading coefficient must be nonzero".into()));
    }
    let f = solve_normalized(ansatz.lead_exp, ansatz.step, &kappa, &ansatz.free, n)?;
    let coeffs = f.into_iter().map(CycloQ::from_rational).collect();
    Ok(LaurentSeries::new(ansatz.lead_exp, ansatz.step, coeffs).with_prefactor(split_phase(&ansatz.lead_coeff)))
}

/// `Y` with `Y^2 = X^5 - X`; `sign` picks the branch.
pub fn y_series_from_x(x: &LaurentSeries, sign: i32) -> Result<LaurentSeries> {
    let x5 = x.pow(5)?;
    let rhs = x5.sub(x)?;
    rhs.sqrt(sign)
}

/// `X`, `Y` pair in one chart.
#[derive(Clone, Debug)]
pub struct ChartSeries {
    pub chart: CuspChart,
    pub x: LaurentSeries,
    pub y: LaurentSeries,
}

/// Square-root branch of the canonical `Y` in each chart.
pub fn canonical_y_sign(chart: &CuspChart) -> i32 {
    match chart.cusp {
        "0" | "inf" => -1,
        _ => 1,
    }
}

/// `s` with canonical `Y = s y(tau)` in the chart.
pub fn y_state_sign(chart: &CuspChart) -> i32 {
    match chart.cusp {
        "0" => -1,
        _ => 1,
    }
}

/// Canonical `X`, `Y` expansions of `chart` with `n` coefficients each.
pub fn burnside_chart_series(chart: &CuspChart, n: usize) -> Result<ChartSeries> {
    let mut x = solve_schwarz_series(chart, &Ansatz::canonical(chart), n + 1)?;
    let mut y = y_series_from_x(&x, canonical_y_sign(chart))?;
    x.coeffs.truncate(n);
    y.coeffs.truncate(n);
    Ok(ChartSeries { chart: chart.clone(), x, y })
}

/// Numeric `X`, `Y` at `tau` from the chart series, with tail estimates.
pub fn eval_chart(cs: &ChartSeries, tau: &Complex) -> Result<((Complex, f64), (Complex, f64))> {
    let s = cs.chart.log_q(tau)?;
    Ok((cs.x.eval_log(&s), cs.y.eval_log(&s)))
}
