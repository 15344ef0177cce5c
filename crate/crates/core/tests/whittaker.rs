use burnside_uniform::numeric::jet::Jet;
use burnside_uniform::numeric::mp::{abs_diff, cx, rel_residual, ToleranceConfig};
use burnside_uniform::numeric::poly::Poly;
use burnside_uniform::numeric::CycloQ;
use burnside_uniform::torus::lambda_fuchsian_q;
use burnside_uniform::whittaker::*;
use burnside_uniform::Error;
use proptest::prelude::*;
use rug::{Complex, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn rc(p: u32, n: i64, d: i64) -> Complex {
    Complex::with_val(p, r(n, d))
}

fn whit() -> HyperellipticCurve {
    HyperellipticCurve::from_normal_form(2, Poly::from_ints(&[1])).unwrap()
}

/// `x = (y^2 - a)^(1/(2g+1))` as a jet.
fn root_map(g: usize, a: CycloQ) -> impl Fn(&Jet) -> burnside_uniform::Result<Jet> {
    move |y: &Jet| {
        let p = y.prec();
        let e = Complex::with_val(p, 1) / (2 * g as u32 + 1);
        Ok(y.mul(y).add_const(&-a.embed(p)).powc(&e))
    }
}

#[test]
fn ratio_to_burnside_is_three_quarters() {
    let b = HyperellipticCurve::burnside();
    let qw = whittaker_q(&b);
    let qb = burnside_q();
    assert!(qw.same_as(&qb.scale(&CycloQ::frac(3, 4))));
    let i = CycloQ::i();
    for x in [CycloQ::from_int(2), CycloQ::one() + i.clone(), i.mul_int(3)] {
        let ratio = qw.eval_exact(&x).unwrap().checked_div(&qb.eval_exact(&x).unwrap()).unwrap();
        assert_eq!(ratio, CycloQ::frac(3, 4), "at {x}");
    }
    assert!(matches!(qw.eval_exact(&i), Err(Error::OutOfDomain(_))));
}

#[test]
fn fuchs_form_without_accessory_is_the_conjecture_for_burnside() {
    let b = HyperellipticCurve::burnside();
    let zero = WhittakerQ { curve: b.clone(), accessory: Poly::default() };
    let two = CycloQ::from_int(2);
    assert_eq!(zero.fuchs_form().eval_exact(&two).unwrap(), whittaker_q(&b).eval_exact(&two).unwrap());
    assert!(zero.satisfies_conjecture());
    assert_eq!(WhittakerQ::conjectured(&b), zero);
}

#[test]
fn double_poles_are_minus_three_sixteenths() {
    let b = HyperellipticCurve::burnside();
    let pts = b.branch_points.clone().unwrap();
    let terms = partial_fractions(&whittaker_q(&b), &pts).unwrap();
    for t in &terms {
        assert_eq!(t.double_pole, CycloQ::frac(-3, 16), "at {}", t.point);
    }
    // Burnside's potential has -1/4 at the same points
    for t in partial_fractions(&burnside_q(), &pts).unwrap() {
        assert_eq!(t.double_pole, CycloQ::frac(-1, 4));
    }
    assert!(partial_fractions(&whittaker_q(&b), &[CycloQ::from_int(2)]).is_err());
}

#[test]
fn accessory_polynomials() {
    assert!(accessory_decomposition(&whit()).is_zero());
    assert!(accessory_decomposition(&HyperellipticCurve::burnside()).is_zero());
    // y^2 = x^5 + x^4 is singular at 0, so only E enters
    let a = accessory_polynomial(2, &Poly::from_ints(&[0, 0, 0, 0, 1]));
    assert_eq!(a, Poly::new(vec![CycloQ::zero(), CycloQ::zero(), CycloQ::frac(12, 5)]));
    assert!(HyperellipticCurve::from_normal_form(2, Poly::from_ints(&[0, 0, 0, 0, 1])).is_err());
    let c = HyperellipticCurve::from_normal_form(2, Poly::from_ints(&[1, 0, 0, 0, 1])).unwrap();
    assert_eq!(accessory_decomposition(&c), a);
    let wq = WhittakerQ::conjectured(&c);
    assert!(wq.satisfies_conjecture());
    assert!(wq.rational().same_as(&whittaker_q(&c)));
    let off = WhittakerQ { curve: c.clone(), accessory: Poly::default() };
    assert!(!off.satisfies_conjecture());
    assert!(!off.rational().same_as(&whittaker_q(&c)));
}

#[test]
fn curve_validation() {
    assert!(HyperellipticCurve::from_poly(Poly::from_ints(&[0, 0, 0, 0, 1])).is_err());
    assert!(HyperellipticCurve::from_poly(Poly::from_ints(&[0, 0, 1, 1])).is_err());
    assert!(HyperellipticCurve::from_poly(Poly::from_ints(&[1, 0, 0, 2])).is_err());
    assert!(HyperellipticCurve::from_branch_points(&[1, 2, 1].map(CycloQ::from_int)).is_err());
    assert_eq!(HyperellipticCurve::from_poly(Poly::from_ints(&[1, 0, 0, 0, 0, 0, 0, 1])).unwrap().genus, 3);
}

#[test]
fn parabolic_version_is_four_thirds() {
    for c in [HyperellipticCurve::burnside(), whit()] {
        let w = whittaker_q(&c);
        let par = parabolic_q(&c);
        assert!(par.same_as(&w.scale(&CycloQ::frac(4, 3))));
        assert_eq!(par.num.coeff(0), w.num.coeff(0).scale(&r(4, 3)));
    }
    assert!(parabolic_q(&HyperellipticCurve::burnside()).same_as(&burnside_q()));
}

#[test]
fn reduction_of_the_hyperlemniscate() {
    let red = hypergeometric_reduce(&whit()).unwrap();
    assert_eq!(red.coefficient, r(-6, 25));
    for e in &red.exponents {
        assert_eq!(e, &["2/5".to_string(), "3/5".to_string()]);
    }
    assert_eq!(red.exponent_difference, r(1, 5));
    assert_eq!(red.rotation_angle_over_pi, r(2, 5));
    assert_eq!(red.local_double_pole, [CycloQ::frac(-6, 25), CycloQ::frac(-6, 25), CycloQ::frac(-6, 25)]);
    let stated = {
        let d = Poly::from_ints(&[-1, 0, 1]);
        burnside_uniform::whittaker::RationalFunction { num: Poly::from_ints(&[3, 0, 1]).scale(&CycloQ::frac(-12, 25)), den: d.mul(&d) }
    };
    assert!(red.q.same_as(&stated));
    let c = HyperellipticCurve::from_normal_form(2, Poly::from_ints(&[1, 1])).unwrap();
    assert!(matches!(hypergeometric_reduce(&c), Err(Error::InvalidInput(_))));
}

#[test]
fn reduction_coefficients_for_higher_genus() {
    for (g, want) in [(1usize, r(-2, 9)), (3, r(-12, 49)), (4, r(-20, 81))] {
        let c = HyperellipticCurve::from_normal_form(g, Poly::from_ints(&[2])).unwrap();
        let red = hypergeometric_reduce(&c).unwrap();
        assert_eq!(red.coefficient, want);
        assert_eq!(red.exponent_difference, r(1, 2 * g as i64 + 1));
    }
}

#[test]
fn substitution_reproduces_the_reduced_equation() {
    let p = 256;
    for (g, a) in [(2usize, CycloQ::one()), (3, CycloQ::from_int(2)), (4, CycloQ::i()), (2, CycloQ::frac(1, 3))] {
        let c = HyperellipticCurve::from_normal_form(g, Poly::constant(a.clone())).unwrap();
        let qw = whittaker_q(&c);
        let red = hypergeometric_reduce(&c).unwrap();
        for y in [cx(p, 1.0 / 3.0, 0.0), cx(p, 0.2, 0.7), cx(p, -1.4, 0.3)] {
            let t = substitution_transform(|x: &Complex| qw.eval(x), Gauge::SqrtDeriv, root_map(g, a.clone()), &y).unwrap();
            assert!(t.p.is_zero());
            let want = red.q.eval(&y).unwrap();
            assert!(rel_residual(&t.q_out(), &want) < 1e-60, "g = {g}, a = {a}");
        }
    }
}

#[test]
fn substitution_identity_and_composition() {
    let p = 256;
    let qw = whittaker_q(&HyperellipticCurve::burnside());
    let q_in = |x: &Complex| qw.eval(x);
    let y = cx(p, 0.3, 0.45);
    let id = substitution_transform(q_in, Gauge::SqrtDeriv, |j: &Jet| Ok(j.clone()), &y).unwrap();
    assert!(abs_diff(&id.q_out(), &qw.eval(&y).unwrap()) < 1e-70);

    // x = g(u) = u^2 + u/3, u = h(y) = exp(y)/(1 + y)
    let g = |u: &Jet| Ok(u.mul(u).add(&u.scale(&cx(p, 1.0 / 3.0, 0.0))));
    let h = |y: &Jet| Ok(y.exp().div(&y.add_const(&cx(p, 1.0, 0.0))));
    let mid = |u: &Complex| Ok(substitution_transform(q_in, Gauge::SqrtDeriv, g, u)?.q_out());
    let twice = substitution_transform(mid, Gauge::SqrtDeriv, h, &y).unwrap().q_out();
    let once = substitution_transform(q_in, Gauge::SqrtDeriv, |y: &Jet| g(&h(y)?), &y).unwrap().q_out();
    assert!(rel_residual(&twice, &once) < 1e-60);

    let flat = substitution_transform(|_: &Complex| Ok(Complex::new(p)), Gauge::SqrtDeriv, |j: &Jet| Ok(j.mul(j)), &cx(p, 0.0, 0.0));
    assert!(matches!(flat, Err(Error::NearSingularity(_))));
}

#[test]
fn weber_gauge_carries_a_known_solution() {
    // Psi = x solves Psi'' = 0; with x = y^2, Psi~ = y^(3/2)
    let p = 256;
    let y = cx(p, 0.7, 0.2);
    let t = substitution_transform(|_: &Complex| Ok(Complex::new(p)), Gauge::Weber, |j: &Jet| Ok(j.mul(j)), &y).unwrap();
    let e = Complex::with_val(p, 1.5);
    let psi = Jet::variable(y.clone()).powc(&e);
    let res = Complex::with_val(p, &psi.d[2] + Complex::with_val(p, &t.p * &psi.d[1])) + Complex::with_val(p, &t.r * &psi.d[0]);
    assert!(abs_diff(&res, &Complex::new(p)) < 1e-70);
}

#[test]
fn lambda_equation_by_substitution() {
    let p = 256;
    let l = cx(p, 2.0, 0.0);
    // l (x + 1)(x - i) = 2 (1 - i) x
    let map = |lj: &Jet| {
        let p = lj.prec();
        let omi = cx(p, 1.0, -1.0);
        let b = lj.add_const(&cx(p, -2.0, 0.0)).scale(&omi);
        let disc = b.mul(&b).add(&lj.mul(lj).scale(&cx(p, 0.0, 4.0)));
        let num = disc.sqrt().sub(&b);
        Ok(num.div(&lj.scale(&cx(p, 2.0, 0.0))))
    };
    let t = substitution_transform(|x: &Complex| Ok(burnside_uniform::curve::q_of_x(x)), Gauge::SqrtDeriv, map, &l).unwrap();
    assert!(rel_residual(&t.q_out(), &lambda_fuchsian_q(&l).unwrap()) < 1e-60);
}

#[test]
fn gauss_series_values() {
    let p = 256;
    let hp = HypergeometricParams::new((1, 12), (1, 12), (2, 3));
    let (one, tail) = gauss_2f1(&hp, &Complex::new(p)).unwrap();
    assert_eq!(one, 1);
    assert_eq!(tail, 0.0);
    let z = cx(p, 0.1, 0.0);
    let (f, tail) = gauss_2f1(&hp, &z).unwrap();
    assert!(tail < 1e-70);
    // Pfaff: 2F1(a,b;c|z) = (1-z)^(-a) 2F1(a, c-b; c | z/(z-1))
    let pf = HypergeometricParams::new((1, 12), (7, 12), (2, 3));
    let zz = Complex::with_val(p, &z / Complex::with_val(p, &z - 1u32));
    let g = gauss_2f1(&pf, &zz).unwrap().0;
    let pre = rug::ops::Pow::pow(Complex::with_val(p, 1u32 - &z), &rc(p, -1, 12));
    assert!(rel_residual(&f, &(pre * g)) < 1e-70);
    assert!(f.real().to_f64() > 1.0 && f.real().to_f64() < 1.01);
    assert!(matches!(gauss_2f1(&hp, &cx(p, 0.6, 0.8)), Err(Error::OutOfDomain(_))));
    assert!(gauss_2f1(&HypergeometricParams::new((1, 2), (1, 2), (-2, 1)), &z).is_err());
}

#[test]
fn gauss_series_solves_its_equation() {
    let tc = ToleranceConfig::new(256);
    let w = tc.working_prec();
    let hp = HypergeometricParams::new((1, 12), (1, 12), (2, 3));
    let z = cx(w, 0.1, 0.0);
    let h = Complex::with_val(w, burnside_uniform::numeric::diff::default_step(256));
    let f = |z: &Complex| Ok(gauss_2f1(&hp, z)?.0);
    let (v, d2) = burnside_uniform::numeric::diff::derivative2(f, &z, &h, 6).unwrap();
    let d1 = burnside_uniform::numeric::diff::derivative1(f, &z, &h, 6).unwrap();
    // z(1-z) F'' + (c - (a+b+1) z) F' - ab F = 0
    let zz = Complex::with_val(w, &z * Complex::with_val(w, 1u32 - &z));
    let lin = rc(w, 2, 3) - Complex::with_val(w, &z * rc(w, 7, 6));
    let res = Complex::with_val(w, &zz * &d2) + Complex::with_val(w, &lin * &d1) - Complex::with_val(w, &v / 144u32);
    assert!(abs_diff(&res, &Complex::new(w)) < 1e-40);
}

#[test]
fn gauss_solutions_of_the_reduced_equation() {
    let tc = ToleranceConfig::new(256);
    for y in [cx(256, 1.0 / 3.0, 0.0), cx(256, 0.1, 0.4), cx(256, 1.5, -0.2)] {
        let s = hypergeometric_solutions_check(&y, &tc).unwrap();
        assert!(s.psi1 < 1e-15 && s.psi2 < 1e-15, "{s:?}");
    }
}

#[test]
fn conversion_series_for_three_eighths() {
    let s = conversion_ode_series(&r(-3, 8), 8).unwrap();
    assert_eq!(s.rho, 1);
    assert_eq!(s.mu_of_q.lead_exp, 1);
    assert_eq!(s.mu_of_q.step, 8);
    let want = [r(1, 1), r(-5, 21), r(-78, 833), r(4001, 39445), r(168948, 1711913), r(42752022, 491319031)];
    assert_eq!(&s.mu_coeffs()[..6], &want);
    let back = [r(1, 1), r(5, 21), r(503, 833), r(4138924, 2011695), r(6383638315, 785768067)];
    assert_eq!(&s.q_coeffs().unwrap()[..5], &back);
    let id = s.mu_of_q.compose(s.q_of_mu.as_ref().unwrap()).unwrap();
    assert_eq!(id.lead_exp, 1);
    assert!(id.coeffs[1..].iter().all(|c| c.is_zero()));
    let rec = serde_json::to_value(s.record()).unwrap();
    assert_eq!(rec["mu_of_q"]["coeffs"][1], "-5/21");
}

#[test]
fn conversion_series_for_two_thirds_is_the_eta_integral() {
    let s = conversion_ode_series(&r(-2, 3), 12).unwrap();
    assert_eq!(s.rho, r(4, 3));
    assert!(s.q_of_mu.is_none());
    let e = eta4_integral_series(12).unwrap();
    assert_eq!(s.mu_of_q, e);
}

#[test]
fn conversion_quadrature() {
    let tc = ToleranceConfig::new(256);
    for tau in [cx(256, 0.0, 2.0), cx(256, 0.5, 1.2)] {
        let q = quadrature_check(&tau, &tc).unwrap();
        assert!(q.series_vs_integral < tc.residual_tol, "{q:?}");
        assert!(q.schwarz_residual < tc.residual_tol, "{q:?}");
    }
}

#[test]
fn conversion_series_errors() {
    assert!(matches!(conversion_ode_series(&r(1, 8), 4), Err(Error::InvalidInput(_))));
    assert!(matches!(conversion_ode_series(&r(-1, 8), 4), Err(Error::InvalidInput(_))));
    // rho = 8 puts the second exponent on the first one's lattice
    assert!(matches!(conversion_ode_series(&r(-24, 1), 4), Err(Error::Degenerate(_))));
    let s = conversion_ode_series(&r(-3, 2), 5).unwrap();
    assert_eq!(s.mu_of_q.lead_exp, 2);
}

#[test]
fn eta_power_equation() {
    let tc = ToleranceConfig::new(256);
    for (n, tau) in [(-2, cx(256, 0.0, 2.0)), (1, cx(256, 1.0, 2.0)), (0, cx(256, 0.3, 1.1)), (-2, cx(256, 0.25, 0.9)), (3, cx(256, -0.4, 1.3))] {
        let c = eta_power_ode_check(n, &tau, &tc).unwrap();
        assert!(c.residual < tc.residual_tol, "{c:?}");
    }
}

fn small_point() -> impl Strategy<Value = CycloQ> {
    (-6i64..=6, -6i64..=6, 1i64..=3).prop_map(|(a, b, d)| CycloQ::frac(a, d) + CycloQ::i().scale(&Rational::from((b, d))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjecture_is_the_decomposition(g in 1usize..=4, pts in prop::collection::vec(small_point(), 9)) {
        let mut e: Vec<CycloQ> = Vec::new();
        for q in pts {
            if !e.contains(&q) {
                e.push(q);
            }
        }
        prop_assume!(e.len() >= 2 * g + 1);
        e.truncate(2 * g + 1);
        let c = HyperellipticCurve::from_branch_points(&e).unwrap();
        let wq = WhittakerQ::conjectured(&c);
        prop_assert!(wq.satisfies_conjecture());
        prop_assert!(wq.rational().same_as(&whittaker_q(&c)));
        prop_assert!(wq.fuchs_form().same_as(&whittaker_q(&c)));
        for t in partial_fractions(&whittaker_q(&c), &e).unwrap() {
            prop_assert_eq!(t.double_pole, CycloQ::frac(-3, 16));
        }
    }

    #[test]
    fn reversion_round_trip(k in 1i64..6, d in 1i64..4) {
        let c = Rational::from((-3 * k * k, 8 * d * d));
        let s = conversion_ode_series(&c, 6).unwrap();
        prop_assert_eq!(s.rho.clone(), Rational::from((k, d)));
        if let Some(q) = &s.q_of_mu {
            let id = s.mu_of_q.compose(q).unwrap();
            prop_assert!(id.coeffs[1..].iter().all(|c| c.is_zero()));
        }
        prop_assert!(s.mu_of_q.coeffs.iter().all(|c| c.as_rational().is_some()));
    }
}
