use rug::Complex;
use serde::Serialize;

use super::{cover_wp_of_x, BurnsideTorus};
use crate::numeric::mp::{abs_f64, i_c, nearest, ser_complex, sqrt2, unit_root};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `x` as a function on the torus.
    AlphaToX,
    /// `alpha` as a function on the `x`-sphere.
    XToAlpha,
}

/// One branch point of the base with its ramification scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheetBranch {
    pub alpha: &'static str,
    pub x: &'static str,
    pub scheme: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    pub direction: Direction,
    pub branch_data: Vec<SheetBranch>,
    pub sheets: u32,
    pub genus_base: i64,
    pub genus_cover: i64,
}

fn br(alpha: &'static str, x: &'static str, scheme: &[u32]) -> SheetBranch {
    SheetBranch { alpha, x, scheme: scheme.to_vec() }
}

/// Riemann-Hurwitz `g~ = (1/2) sum (q_j - 1) + N (g - 1) + 1` in exact integers.
pub fn riemann_hurwitz(branch_data: &[SheetBranch], sheets: u32, genus_base: i64) -> Result<i64> {
    let mut s = 0i64;
    for b in branch_data {
        if b.scheme.iter().sum::<u32>() != sheets {
            return Err(Error::InvalidInput(format!("scheme at {} does not cover {sheets} sheets", b.alpha)));
        }
        s += b.scheme.iter().map(|&q| q as i64 - 1).sum::<i64>();
    }
    if s % 2 != 0 {
        return Err(Error::InvalidInput("odd total ramification".into()));
    }
    Ok(s / 2 + sheets as i64 * (genus_base - 1) + 1)
}

pub fn ramification_profile(direction: Direction) -> Result<RamificationProfile> {
    let (branch_data, genus_base) = match direction {
        Direction::AlphaToX => (
            vec![br("omega''", "-i sqrt i", &[1, 1]), br("aleph", "i sqrt i", &[2]), br("-aleph", "i sqrt i", &[2])],
            1,
        ),
        Direction::XToAlpha => (
            vec![
                br("omega", "1", &[2]),
                br("omega", "-i", &[2]),
                br("omega'", "0", &[2]),
                br("omega'", "inf", &[2]),
                br("omega''", "-i sqrt i", &[1, 1]),
                br("0", "-1", &[2]),
                br("0", "i", &[2]),
            ],
            0,
        ),
    };
    let genus_cover = riemann_hurwitz(&branch_data, 2, genus_base)?;
    Ok(RamificationProfile { direction, branch_data, sheets: 2, genus_base, genus_cover })
}

/// Both solutions `x` of the cover equation for a given `wp(alpha)`.
pub fn x_of_wp(t: &BurnsideTorus, wp: &Complex) -> [Complex; 2] {
    let p = wp.prec().0;
    let i = i_c(p);
    let w = Complex::with_val(p, wp - t.e_prime.embed(p));
    let c = (crate::numeric::CycloQ::one() + t.e.mul_int(3)).embed(p);
    let omi = Complex::with_val(p, 1u32 - &i);
    // W x^2 + (1-i)(W - c) x - i W = 0
    let b = Complex::with_val(p, &w - &c) * &omi;
    let cc = -Complex::with_val(p, &w * &i);
    let disc = Complex::with_val(p, b.square_ref()) - Complex::with_val(p, &w * &cc) * 4u32;
    let s = disc.sqrt();
    let two_w = Complex::with_val(p, &w * 2u32);
    [Complex::with_val(p, &s - &b) / &two_w, -Complex::with_val(p, &s + &b) / &two_w]
}

/// Largest deviation of the two roots at `alpha = omega'' + h` from
/// `((1-i)/2)(sqrt 2 +- 2^(1/4) h + h^2/2)`, divided by `|h|^3`.
pub fn omega_dprime_series_check(t: &BurnsideTorus, h: &Complex) -> Result<f64> {
    let p = t.prec();
    let a = Complex::with_val(p, t.omega_dprime() + h);
    let roots = x_of_wp(t, &t.lp.wp(&a)?);
    let pre = Complex::with_val(p, 1u32 - i_c(p)) / 2u32;
    let q = super::fourth_root2(p);
    let h2 = Complex::with_val(p, h.square_ref()) / 2u32;
    let mut worst = 0f64;
    for sign in [1i32, -1] {
        let lin = Complex::with_val(p, h * &q) * sign;
        let s = Complex::with_val(p, &pre * (lin + &h2 + sqrt2(p)));
        let r = nearest(&roots, &s);
        worst = worst.max(abs_f64(&Complex::with_val(p, r - &s)));
    }
    Ok(worst / abs_f64(h).powi(3))
}

/// Coefficients of `alpha(x) = omega + a1 s + a3 s^3 + ...` with `s = sqrt(x - 1)`.
#[derive(Clone, Debug, Serialize)]
pub struct PuiseuxCheck {
    #[serde(serialize_with = "ser_complex")]
    pub a1: Complex,
    #[serde(serialize_with = "ser_complex")]
    pub a3: Complex,
    #[serde(serialize_with = "ser_complex")]
    pub a1_stated: Complex,
    #[serde(serialize_with = "ser_complex")]
    pub a3_stated: Complex,
    /// `|a - stated|` after fixing the branch of `s` by `a1`.
    pub coeff_residual: f64,
    /// `|alpha(x) - series| / |s|^5` at sample points around `x = 1`.
    pub continuation_ratio: f64,
}

/// Puiseux expansion of the inverse of the cover at `(alpha, x) = (omega, 1)`.
pub fn puiseux_at_branch(t: &BurnsideTorus) -> Result<PuiseuxCheck> {
    let p = t.prec();
    let i = i_c(p);
    let e = t.e.embed(p);
    let g2 = t.g2.embed(p);
    // wp(omega + u) = e + (A/2) u^2 + (e A/2) u^4 + ...
    let a = Complex::with_val(p, e.square_ref()) * 6u32 - Complex::with_val(p, &g2 / 2u32);
    let c = (crate::numeric::CycloQ::one() + t.e.mul_int(3)).embed(p);
    let one = Complex::with_val(p, 1);
    let xi = Complex::with_val(p, &one - &i);
    let xp = Complex::with_val(p, &one + 1u32);
    let c1 = -Complex::with_val(p, &c / Complex::with_val(p, xi.square_ref())) + Complex::with_val(p, &c * &i) / Complex::with_val(p, xp.square_ref());
    let c2 = Complex::with_val(p, &c / Complex::with_val(p, xi.square_ref()) / &xi)
        - Complex::with_val(p, &c * &i) / Complex::with_val(p, xp.square_ref()) / &xp;
    let a1_sq = Complex::with_val(p, &c1 * 2u32) / &a;
    let a1_stated = {
        let r = Complex::with_val(p, &i * (sqrt2(p) + 1u32)).sqrt();
        -Complex::with_val(p, &i * &r)
    };
    let mut a1 = a1_sq.clone().sqrt();
    if abs_f64(&Complex::with_val(p, &a1 - &a1_stated)) > abs_f64(&Complex::with_val(p, &a1 + &a1_stated)) {
        a1 = -a1;
    }
    let a1_4 = Complex::with_val(p, a1_sq.square_ref());
    let a3 = (c2 - Complex::with_val(p, &e * &a) * a1_4 / 2u32) / Complex::with_val(p, &a * &a1);
    let a3_stated = {
        let s2 = sqrt2(p);
        let u = Complex::with_val(p, Complex::with_val(p, &s2 * 26u32) + 34u32).sqrt();
        let v = Complex::with_val(p, Complex::with_val(p, &s2 * 26u32) - 14u32).sqrt();
        (Complex::with_val(p, &i * &u) - v) / 24u32
    };
    let coeff_residual = abs_f64(&Complex::with_val(p, &a1 - &a1_stated)).max(abs_f64(&Complex::with_val(p, &a3 - &a3_stated)));
    let mut ratio = 0f64;
    let r = 1e-3f64;
    for k in 0..8 {
        let s = Complex::with_val(p, unit_root(p, 2 * k + 1, 8) * r);
        let x = Complex::with_val(p, s.square_ref()) + 1u32;
        let ser = Complex::with_val(p, &a1 * &s) + Complex::with_val(p, &a3 * Complex::with_val(p, s.square_ref()) * &s) + &t.omega;
        let wp = cover_wp_of_x(&x, t)?;
        let al = crate::elliptic::wp_inverse(&wp, &t.lp, &ser)?;
        let cand = lattice_neighbours(t, &al, &ser);
        let d = abs_f64(&Complex::with_val(p, &cand - &ser));
        ratio = ratio.max(d / r.powi(5));
    }
    Ok(PuiseuxCheck { a1, a3, a1_stated, a3_stated, coeff_residual, continuation_ratio: ratio })
}

/// The point among `+-z + 2m omega + 2n omega'` closest to `target`.
pub(crate) fn lattice_neighbours(t: &BurnsideTorus, z: &Complex, target: &Complex) -> Complex {
    super::abel::nearest_rep(&t.lp, z, target)
}
