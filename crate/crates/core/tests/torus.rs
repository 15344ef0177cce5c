use burnside_uniform::elliptic::{half_periods_from_invariants, klein_j, LatticeParams};
use burnside_uniform::numeric::mp::{abs_f64, cx, i_c, rel_residual, sqrt2, unit_root};
use burnside_uniform::numeric::{CycloQ, ToleranceConfig};
use burnside_uniform::series::{eta_product_series, EtaFactor, EtaProductSpec, LaurentSeries};
use burnside_uniform::torus::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rug::{Complex, Rational};
use std::sync::OnceLock;

const P: u32 = 256;

fn torus() -> &'static BurnsideTorus {
    static T: OnceLock<BurnsideTorus> = OnceLock::new();
    T.get_or_init(|| BurnsideTorus::new(P).unwrap())
}

fn tc() -> ToleranceConfig {
    ToleranceConfig::new(P)
}

/// The torus at the working precision of `tc()`, for finite-difference checks.
fn torus_w() -> &'static BurnsideTorus {
    static T: OnceLock<BurnsideTorus> = OnceLock::new();
    T.get_or_init(|| BurnsideTorus::new(tc().working_prec()).unwrap())
}

fn digits(z: &rug::Float, n: usize) -> String {
    z.to_string_radix(10, Some(n))
}

fn samples(n: usize, seed: u64) -> Vec<Complex> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let t = torus();
    let w = t.omega.real().to_f64();
    let wi = t.omega_prime.imag().to_f64();
    let mut out = Vec::new();
    while out.len() < n {
        let a = cx(P, rng.gen_range(0.05..1.95) * w, rng.gen_range(0.05..1.95) * wi);
        if torus_fuchsian_q(t, &a, FuchsVariant::Burnside).is_ok() {
            out.push(a);
        }
    }
    out
}

#[test]
fn period_to_thirty_digits() {
    let t = torus();
    assert_eq!(digits(t.omega.real(), 31), "2.118156723947863188505038347006");
    assert!(t.omega.imag().is_zero());
    let wp = Complex::with_val(P, &t.omega * i_c(P)) / sqrt2(P);
    assert!(rel_residual(&t.omega_prime, &wp) < 1e-70);
}

#[test]
fn invariants_and_j() {
    let t = torus();
    let tol = tc().residual_tol;
    assert!(rel_residual(&t.lp.g2, &t.g2.embed(P)) < tol);
    assert!(rel_residual(&t.lp.g3, &t.g3.embed(P)) < tol);
    let tau = Complex::with_val(P, &t.omega_prime / &t.omega);
    let j = klein_j(&tau).unwrap();
    assert!(rel_residual(&j, &Complex::with_val(P, Rational::from((125, 27)))) < tol);
    assert!(t.lp.discriminant().real().is_sign_positive());
}

#[test]
fn roots_of_the_cubic() {
    let t = torus();
    let tol = tc().residual_tol;
    let hp = &t.lp.half_periods;
    assert!(rel_residual(&t.lp.wp(&hp.omega).unwrap(), &t.e.embed(P)) < tol);
    assert!(rel_residual(&t.lp.wp(&hp.omega_prime).unwrap(), &t.e_prime.embed(P)) < tol);
    assert!(rel_residual(&t.lp.wp(&t.omega_dprime()).unwrap(), &t.e_dprime.embed(P)) < tol);
    assert_eq!(&(&t.e + &t.e_prime) + &t.e_dprime, CycloQ::zero());
}

#[test]
fn rescaling_to_integer_invariants() {
    let t = torus();
    let s2 = sqrt2(P);
    let g3p = Complex::with_val(P, -t.g3.embed(P));
    let a = LatticeParams::new(&half_periods_from_invariants(&t.g2.embed(P), &g3p).unwrap()).unwrap();
    let b = LatticeParams::new(&half_periods_from_invariants(&cx(P, 30.0, 0.0), &cx(P, 28.0, 0.0)).unwrap()).unwrap();
    let c = Complex::with_val(P, &s2 / 6u32);
    let z = cx(P, 0.31, 0.17);
    let lhs = a.wp(&z).unwrap();
    let rhs = b.wp(&Complex::with_val(P, &z * c.clone().sqrt())).unwrap() * c;
    assert!(rel_residual(&lhs, &rhs) < tc().residual_tol);
}

#[test]
fn jacobi_moduli() {
    let c = jacobi_k(&CycloQ::from_int(-1), &CycloQ::i(), P).unwrap();
    let half = Rational::from((1, 2));
    assert_eq!(c.k_plus, KValue::Exact((&CycloQ::one() + &CycloQ::sqrt2()).scale(&half)));
    assert_eq!(c.k_minus, KValue::Exact((&CycloQ::one() - &CycloQ::sqrt2()).scale(&half)));
    let same = jacobi_k(&CycloQ::from_int(4), &CycloQ::from_int(4), P).unwrap();
    assert_eq!(same.k_minus, KValue::Exact(CycloQ::zero()));
    assert!(jacobi_k(&CycloQ::one(), &CycloQ::i(), P).is_err());
    assert!(jacobi_k(&CycloQ::zero(), &CycloQ::i(), P).is_err());
    let num = jacobi_k(&CycloQ::frac(3, 7), &CycloQ::from_int(2), P).unwrap();
    assert!(matches!(num.k_plus, KValue::Numeric(_)));
}

#[test]
fn jacobi_differentials_reduce() {
    let xs: Vec<Complex> = (0..8).map(|k| cx(P, 0.3 + 0.37 * k as f64, 0.2 - 0.11 * k as f64)).collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(17);
    let mut pairs = vec![(CycloQ::from_int(-1), CycloQ::i())];
    for _ in 0..4 {
        let a = CycloQ::frac(rng.gen_range(-9..=9) * 2 + 1, rng.gen_range(2..9));
        let b = CycloQ::new(Rational::from(rng.gen_range(-5..=5)), Rational::new(), Rational::from(rng.gen_range(1..=5)), Rational::new());
        pairs.push((a, b));
    }
    for (a, b) in pairs {
        let c = jacobi_k(&a, &b, P).unwrap();
        for (_, spread) in jacobi_reduction_check(&c, &xs).unwrap() {
            assert!(spread < 1e-60, "{a:?} {b:?}: {spread:e}");
        }
    }
}

#[test]
fn cover_values() {
    let t = torus();
    let tol = tc().residual_tol;
    let at1 = cover_wp_of_x(&cx(P, 1.0, 0.0), t).unwrap();
    assert!(rel_residual(&at1, &t.e.embed(P)) < tol);
    let isi = CycloQ::zeta8().pow(3).unwrap().embed(P);
    let at_split = cover_wp_of_x(&Complex::with_val(P, -&isi), t).unwrap();
    assert!(rel_residual(&at_split, &t.e_dprime.embed(P)) < tol);
    let at_aleph = cover_wp_of_x(&isi, t).unwrap();
    assert!(rel_residual(&at_aleph, &BurnsideTorus::wp_aleph_exact().embed(P)) < tol);
    // the branch values of wp are the roots of (6 wp - 3 + sqrt 2)(6 wp + 21 + 13 sqrt 2)
    let s2 = CycloQ::sqrt2();
    for v in [t.e_dprime.clone(), BurnsideTorus::wp_aleph_exact()] {
        let f1 = &(&v.mul_int(6) - &CycloQ::from_int(3)) + &s2;
        let f2 = &(&v.mul_int(6) + &CycloQ::from_int(21)) + &s2.mul_int(13);
        assert_eq!(&f1 * &f2, CycloQ::zero());
    }
    assert!(cover_wp_of_x(&cx(P, -1.0, 0.0), t).is_err());
    assert!(cover_wp_of_x(&i_c(P), t).is_err());
}

#[test]
fn aleph_position_and_derivative() {
    let t = torus();
    let tol = tc().residual_tol;
    let a = &t.aleph;
    assert!(a.point.real().clone().abs() < 1e-60);
    assert_eq!(digits(a.point.imag(), 12), "3.90699665709e-1");
    let other = Complex::with_val(P, Complex::with_val(P, &t.omega_prime * 2u32) - &a.point);
    assert_eq!(digits(other.imag(), 13), "2.604826300529");
    assert!(rel_residual(&a.wp, &BurnsideTorus::wp_aleph_exact().embed(P)) < tol);
    let neg = t.lp.wp(&Complex::with_val(P, -&a.point)).unwrap();
    assert!(rel_residual(&neg, &a.wp) < tol);
    assert!(t.aleph_curve_residual() < tol);
    // at 0.3907i the derivative is the negative of 2^(5/4)(7 + 5 sqrt 2) i
    let c = BurnsideTorus::wp_prime_aleph_stated(P);
    assert!(rel_residual(&a.wp_prime, &Complex::with_val(P, -&c)) < tol);
    assert_eq!(t.aleph_sign(), -1);
}

#[test]
fn riemann_hurwitz_both_directions() {
    for d in [Direction::AlphaToX, Direction::XToAlpha] {
        let r = ramification_profile(d).unwrap();
        assert_eq!((r.sheets, r.genus_cover), (2, 2));
    }
    assert_eq!(ramification_profile(Direction::AlphaToX).unwrap().genus_base, 1);
    assert_eq!(ramification_profile(Direction::XToAlpha).unwrap().genus_base, 0);
    let bad = vec![SheetBranch { alpha: "0", x: "0", scheme: vec![2, 1] }];
    assert!(riemann_hurwitz(&bad, 2, 0).is_err());
    let odd = vec![SheetBranch { alpha: "0", x: "0", scheme: vec![2] }];
    assert!(riemann_hurwitz(&odd, 2, 0).is_err());
}

#[test]
fn branch_points_lie_over_the_listed_values() {
    let t = torus();
    let tol = tc().residual_tol;
    let xt = ramification_profile(Direction::XToAlpha).unwrap();
    let isi = CycloQ::zeta8().pow(3).unwrap().embed(P);
    for b in &xt.branch_data {
        let x = match b.x {
            "1" => cx(P, 1.0, 0.0),
            "-i" => cx(P, 0.0, -1.0),
            "0" => cx(P, 0.0, 0.0),
            "-i sqrt i" => Complex::with_val(P, -&isi),
            _ => continue,
        };
        let a = match b.alpha {
            "omega" => t.omega.clone(),
            "omega'" => t.omega_prime.clone(),
            _ => t.omega_dprime(),
        };
        let w = t.lp.wp(&a).unwrap();
        assert!(rel_residual(&cover_wp_of_x(&x, t).unwrap(), &w) < tol, "{}", b.x);
    }
}

#[test]
fn two_holomorphic_branches_at_split_point() {
    let t = torus();
    let r3 = omega_dprime_series_check(t, &cx(P, 1e-3, 3e-4)).unwrap();
    let r4 = omega_dprime_series_check(t, &cx(P, 1e-4, 3e-5)).unwrap();
    assert!(r3 < 1.0 && r4 < 1.0);
    assert!((r3 / r4 - 1.0).abs() < 0.05);
}

#[test]
fn puiseux_at_x_equal_one() {
    let pc = puiseux_at_branch(torus()).unwrap();
    assert!(pc.coeff_residual < 1e-60, "{:e}", pc.coeff_residual);
    assert!(pc.continuation_ratio < 10.0);
}

#[test]
fn lambda_equation_matches_transform() {
    let tol = tc().residual_tol;
    for l in [cx(P, 2.0, 0.0), cx(P, 0.4, 0.9), cx(P, -3.0, 0.5)] {
        let a = lambda_fuchsian_q(&l).unwrap();
        let b = lambda_q_by_transform(&l, FuchsVariant::Burnside).unwrap();
        assert!(rel_residual(&a, &b) < tol, "{l}");
    }
    assert!(lambda_fuchsian_q(&cx(P, 1.0, 0.0)).is_err());
}

#[test]
fn lambda_equation_local_exponents() {
    let eps = Complex::with_val(P, rug::Float::with_val(P, rug::Float::i_exp(1, -80)));
    let at0 = lambda_fuchsian_q(&eps).unwrap() * Complex::with_val(P, eps.square_ref()) / 2u32;
    assert!((at0.real().to_f64() + 0.25).abs() < 1e-20);
    let lj = Complex::with_val(P, sqrt2(P) * 2u32) - 2u32;
    let q = lambda_fuchsian_q(&Complex::with_val(P, &lj + &eps)).unwrap() * Complex::with_val(P, eps.square_ref()) / 2u32;
    assert!((q.real().to_f64() + 3.0 / 16.0).abs() < 1e-20);
}

#[test]
fn whittaker_q_is_three_quarters_of_burnside() {
    for x in [cx(P, 0.3, 0.2), cx(P, 2.0, -1.0), cx(P, -0.7, 0.4)] {
        let w = q_whittaker_x(&x);
        let b = burnside_uniform::curve::q_of_x(&x) * 3u32 / 4u32;
        assert!(rel_residual(&w, &b) < 1e-70);
    }
}

#[test]
fn torus_equation_matches_construction() {
    let t = torus();
    let tol = tc().residual_tol;
    for v in [FuchsVariant::Burnside, FuchsVariant::Whittaker] {
        for a in samples(6, 3) {
            let f = torus_fuchsian_q(t, &a, v).unwrap();
            let c = torus_q_by_construction(t, &a, v).unwrap();
            assert!(rel_residual(&f.wp_form, &c) < tol, "{v:?} {a}");
        }
    }
}

#[test]
fn zeta_forms_follow_the_sign_of_wp_prime_at_aleph() {
    let t = torus();
    let tol = tc().residual_tol;
    let mut flipped = t.clone();
    flipped.aleph.point = -t.aleph.point.clone();
    flipped.aleph.wp_prime = -t.aleph.wp_prime.clone();
    for v in [FuchsVariant::Burnside, FuchsVariant::Whittaker] {
        for a in samples(20, 5) {
            assert!(torus_fuchsian_q(&flipped, &a, v).unwrap().residual() < tol);
            assert!(torus_fuchsian_q(t, &a, v).unwrap().residual() > 1e-6);
        }
    }
}

#[test]
fn torus_equation_is_elliptic() {
    let t = torus();
    let tol = tc().residual_tol;
    let shifts = [Complex::with_val(P, &t.omega * 2u32), Complex::with_val(P, &t.omega_prime * 2u32)];
    for v in [FuchsVariant::Burnside, FuchsVariant::Whittaker] {
        for a in samples(20, 11) {
            let q0 = torus_fuchsian_q(t, &a, v).unwrap().wp_form;
            for s in &shifts {
                let q1 = torus_fuchsian_q(t, &Complex::with_val(P, &a + s), v).unwrap().wp_form;
                assert!(rel_residual(&q0, &q1) < tol);
            }
        }
    }
}

#[test]
fn local_coefficients_at_singular_points() {
    let t = torus();
    for (v, count) in [(FuchsVariant::Burnside, 5), (FuchsVariant::Whittaker, 2)] {
        let cs = local_coefficients(t, v).unwrap();
        assert_eq!(cs.len(), count);
        for c in cs {
            let (re2, im2, re1, im1) = c.numeric;
            assert!((re2 - c.double_pole.to_f64()).abs() < 1e-30 && im2.abs() < 1e-30, "{}", c.point);
            assert!((re1 - c.residue_over_r8i.to_f64()).abs() < 1e-30 && im1.abs() < 1e-30, "{}", c.point);
        }
    }
    let b = local_coefficients(t, FuchsVariant::Burnside).unwrap();
    assert!(b[..3].iter().all(|c| c.double_pole == Rational::from((-1, 4))));
    assert!(b[3..].iter().all(|c| c.double_pole == Rational::from((-3, 16))));
    assert!(torus_fuchsian_q(t, &t.omega, FuchsVariant::Burnside).is_err());
}

#[test]
fn renormalized_constants() {
    let t = torus();
    let r = renormalized(t).unwrap();
    assert!((r.zeta_tilde.real().to_f64() - 3.83102282421).abs() < 1e-11);
    assert!(abs_f64(&Complex::with_val(P, r.accessory.imag())) < 1e-60);
    assert!(abs_f64(&Complex::with_val(P, r.aleph_tilde.imag())) < 1e-60);
    assert!(rel_residual(&r.accessory, &r.scaled_free_term) < tc().residual_tol);
    let m = Complex::with_val(P, rug::Float::with_val(P, 8).root(4)) * burnside_uniform::numeric::mp::pi(P)
        * burnside_uniform::elliptic::dedekind_eta(&Complex::with_val(P, (0, sqrt2(P)))).unwrap().square();
    assert!(rel_residual(&r.m, &m) < tc().residual_tol);
}

fn gamma() -> CycloQ {
    &CycloQ::sqrt2() - &CycloQ::one()
}

#[test]
fn abelian_differential_table() {
    let ab = abelian_differential_series(40).unwrap();
    assert!(ab.d_alpha.prefactor.is_trivial());
    let g = gamma();
    let table: [(i64, i64, bool); 15] = [
        (0, 1, false),
        (2, -2, true),
        (8, -1, false),
        (10, 6, true),
        (16, -6, false),
        (18, -2, true),
        (24, 5, false),
        (26, -4, true),
        (32, 12, false),
        (40, -6, false),
        (42, -10, true),
        (48, -7, false),
        (50, 12, true),
        (56, -4, false),
        (58, 6, true),
    ];
    for e in 0..60 {
        let want = match table.iter().find(|r| r.0 == e) {
            Some(&(_, c, true)) => g.mul_int(c),
            Some(&(_, c, false)) => CycloQ::from_int(c),
            None => CycloQ::zero(),
        };
        assert_eq!(ab.d_alpha.coeff(e), want, "q^{e}");
    }
}

#[test]
fn alpha_series_is_the_antiderivative() {
    let ab = abelian_differential_series(40).unwrap();
    assert_eq!(ab.alpha.deriv().truncate(60), ab.d_alpha.truncate(60));
    let g = gamma();
    let want: [(i64, CycloQ); 8] = [
        (1, CycloQ::one()),
        (3, g.scale(&Rational::from((-2, 3)))),
        (9, CycloQ::frac(-1, 9)),
        (11, g.scale(&Rational::from((6, 11)))),
        (17, CycloQ::frac(-6, 17)),
        (19, g.scale(&Rational::from((-2, 19)))),
        (25, CycloQ::frac(5, 25)),
        (27, g.scale(&Rational::from((-4, 27)))),
    ];
    for (e, c) in want {
        assert_eq!(ab.alpha.coeff(e), c, "q^{e}");
    }
    assert_eq!(ab.alpha.coeff(0), CycloQ::zero());
}

#[test]
fn differentials_are_eta_products() {
    let ab = abelian_differential_series(40).unwrap();
    let upto = 70;
    let unit = CycloQ::zeta8();
    let prod = |sign: i8| {
        eta_product_series(
            &EtaProductSpec::new(vec![EtaFactor::new(4, -1, 1, 0), EtaFactor::new(4, sign, 2, 2), EtaFactor::new(8, -1, 3, 0)])
                .with_lead(CycloQ::from_int(2), 0),
            80,
        )
        .unwrap()
    };
    let back = |s: &LaurentSeries| s.absorb_scale().rotate(-1).unwrap();
    let w = back(&ab.dx_over_y);
    let xw = back(&ab.x_dx_over_y);
    let p1 = prod(-1).scale(&unit);
    let p2 = prod(1).scale(&unit);
    for e in 0..upto {
        assert_eq!(w.coeff(e), p1.coeff(e), "dX/Y q^{e}");
        assert_eq!(xw.coeff(e), p2.coeff(e), "X dX/Y q^{e}");
    }
}

#[test]
fn mixed_differential_normalization() {
    let ab = abelian_differential_series(40).unwrap();
    // (1 - i sqrt i)/sqrt(1 + i) = (M/2) zeta8^-1
    let s2 = sqrt2(P);
    let m = Complex::with_val(P, &s2 + 1u32).sqrt() * 2u32;
    let isi = CycloQ::zeta8().pow(3).unwrap().embed(P);
    let lhs = Complex::with_val(P, 1u32 - &isi) / Complex::with_val(P, i_c(P) + 1u32).sqrt();
    let rhs = m / 2u32 * unit_root(P, -1, 4);
    assert!(rel_residual(&lhs, &rhs) < 1e-70);
    let k = &CycloQ::zeta8().pow(7).unwrap() * &(&CycloQ::one() - &CycloQ::zeta8().pow(3).unwrap()).inv().unwrap();
    let again = ab.mixed.absorb_scale().scale(&k.scale(&Rational::from((1, 2))));
    assert_eq!(again.truncate(60), ab.d_alpha.truncate(60));
}

#[test]
fn alpha_series_matches_inversion() {
    let t = torus();
    let ab = abelian_differential_series(40).unwrap();
    let m = Complex::with_val(P, sqrt2(P) + 1u32).sqrt() * 2u32;
    let ch = alpha_branch_chart();
    for (re, im) in [(0.501, 0.02), (0.499, 0.025)] {
        let tau = cx(P, re, im);
        let (s, _) = ab.alpha.numeric_eval(&ch, &tau, 0.5).unwrap();
        let ser = Complex::with_val(P, &s * &m) + &t.omega;
        let a = alpha_of_tau(t, &tau, 1, Some(&ser)).unwrap();
        assert!(abs_f64(&Complex::with_val(P, &a - &ser)) < 1e-15);
    }
}

#[test]
fn alpha_of_tau_inverts_the_cover() {
    let t = torus();
    let tol = tc().residual_tol;
    let tau = cx(P, 0.1, 1.3);
    let x = burnside_uniform::curve::x_of_tau(&tau).unwrap();
    for sheet in [1, -1] {
        let a = alpha_of_tau(t, &tau, sheet, None).unwrap();
        let lp = if sheet > 0 { t.lp.clone() } else { LatticeParams::new(&t.lp.half_periods.scaled(&i_c(P)).unwrap()).unwrap() };
        assert!(rel_residual(&lp.wp(&a).unwrap(), &cover_argument(&x, sheet).unwrap()) < tol);
    }
    assert!(rel_residual(&cover_argument(&x, 1).unwrap(), &cover_wp_of_x(&x, t).unwrap()) < tol);
}

#[test]
fn schwarzian_of_alpha() {
    let s = alpha_schwarz_residual(torus_w(), &cx(P, 0.0, 2.0), &tc()).unwrap();
    assert!(s.wp_form_residual < tc().residual_tol, "{:e}", s.wp_form_residual);
    assert!(s.zeta_form_residual > 1e-6);
}

#[test]
fn differential_of_alpha() {
    let (r, sign) = d_alpha_check(torus_w(), &cx(P, 0.0, 2.0), &tc()).unwrap();
    assert!(r < tc().residual_tol, "{r:e}");
    assert_eq!(sign, 1);
}

#[test]
fn algebraic_pair_holds_on_the_curve() {
    let t = torus();
    let tol = tc().residual_tol;
    let tau = cx(P, 0.0, 2.0);
    let st = burnside_uniform::curve::BurnsideState::new(&tau).unwrap();
    let a = alpha_of_tau(t, &tau, 1, None).unwrap();
    let mut good = Vec::new();
    for cand in [a.clone(), Complex::with_val(P, -&a)] {
        let (r1, r2, s) = palpha_residual(t, &st.x, &st.y, &cand).unwrap();
        assert!(r1 < tol);
        if r2 < tol {
            good.push(s);
        }
    }
    assert_eq!(good, [1]);
}

#[test]
fn xi_solves_the_torus_equation() {
    let t = torus_w();
    for a in [cx(P, 0.3, 0.8), cx(P, 0.0, 1.1)] {
        for c in [(1, 0), (0, 1)] {
            let r = xi_solution_check(t, &a, c, &tc()).unwrap();
            assert!(r.residual < 1e-10, "{a} {c:?}: {:e}", r.residual);
        }
    }
    let r = xi_solution_check(t, &cx(P, 0.3, 0.8), (2, -3), &tc()).unwrap();
    assert!(r.residual < 1e-10);
}

#[test]
fn holomorphic_integral_reduces() {
    let t = torus();
    let short = holo_integral_check(t, &[cx(P, 2.0, 0.0), cx(P, 2.1, 0.05)], 1e-40).unwrap();
    assert!(short.residual < 1e-15);
    assert_eq!(short.lattice, (0, 0));
    let free = [cx(P, 2.0, 0.0), cx(P, 2.1, 0.1), cx(P, 1.9, 0.1), cx(P, 2.0, 0.0)];
    let lp = holo_integral_check(t, &free, 1e-40).unwrap();
    assert!(abs_f64(&lp.integral) < 1e-30);
    let around = [cx(P, 1.5, 0.0), cx(P, 1.0, 0.5), cx(P, 0.5, 0.0), cx(P, 1.0, -0.5), cx(P, 1.5, 0.0)];
    let r = holo_integral_check(t, &around, 1e-40).unwrap();
    assert!(r.residual < 1e-30);
    assert_ne!(r.lattice, (0, 0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cover_agrees_with_lambda_chain(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let x = cx(P, re, im);
        prop_assume!(abs_f64(&Complex::with_val(P, &x + 1u32)) > 1e-3 && abs_f64(&Complex::with_val(P, &x - i_c(P))) > 1e-3);
        let t = torus();
        let a = cover_wp_of_x(&x, t).unwrap();
        let b = cover_wp_via_lambda(&x, t).unwrap();
        prop_assert!(rel_residual(&a, &b) < 1e-60);
    }

    #[test]
    fn cover_roots_recover_x(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let x = cx(P, re, im);
        prop_assume!(abs_f64(&Complex::with_val(P, &x + 1u32)) > 1e-2 && abs_f64(&Complex::with_val(P, &x - i_c(P))) > 1e-2 && abs_f64(&x) > 1e-2);
        let t = torus();
        let w = cover_wp_of_x(&x, t).unwrap();
        let roots = x_of_wp(t, &w);
        let d = roots.iter().map(|r| abs_f64(&Complex::with_val(P, r - &x))).fold(f64::INFINITY, f64::min);
        prop_assert!(d < 1e-50);
    }
}
