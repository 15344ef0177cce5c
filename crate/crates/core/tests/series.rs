use burnside_uniform::curve::{theta_forms, BurnsideState};
use burnside_uniform::numeric::mp::{abs_f64, cx, pi_c};
use burnside_uniform::numeric::CycloQ;
use burnside_uniform::series::*;
use proptest::prelude::*;
use rug::{Complex, Integer, Rational};
use std::sync::OnceLock;

const N: usize = 200;

fn ints(s: &LaurentSeries, k: usize) -> Vec<i64> {
    s.integer_coeffs().expect("integer coefficients")[..k].iter().map(|v| v.to_i64().unwrap()).collect()
}

#[test]
fn pole_chart_x_and_y() {
    let cs = burnside_chart_series(&CuspChart::pole(), 12).unwrap();
    assert_eq!((cs.x.lead_exp, cs.x.step), (-2, 8));
    assert_eq!(cs.x.prefactor.scale, CycloQ::frac(1, 2));
    assert_eq!(ints(&cs.x, 8), [1, 2, -1, -2, 3, 2, -4, -4]);
    assert_eq!((cs.y.lead_exp, cs.y.step), (-5, 8));
    assert_eq!(cs.y.prefactor.scale, CycloQ::sqrt2().scale(&Rational::from((1, 8))));
    assert_eq!(cs.y.prefactor.phase16, 0);
    assert_eq!(ints(&cs.y, 7), [1, -3, -3, 14, 6, -33, -20]);
}

#[test]
fn zero_chart_x_and_y() {
    let cs = burnside_chart_series(&CuspChart::zero(), 10).unwrap();
    assert_eq!((cs.x.lead_exp, cs.x.prefactor.phase16), (2, 6));
    assert_eq!(cs.x.prefactor.scale, CycloQ::from_int(2));
    assert_eq!(ints(&cs.x, 6), [1, 2, 5, 10, 18, 32]);
    assert_eq!((cs.y.lead_exp, cs.y.prefactor.phase16), (1, 15));
    assert_eq!(cs.y.prefactor.scale, CycloQ::sqrt2());
    assert_eq!(ints(&cs.y, 6), [1, 9, 42, 147, 444, 1206]);
}

#[test]
fn branch_chart_x_and_y() {
    let cs = burnside_chart_series(&CuspChart::half(), 10).unwrap();
    assert_eq!((cs.x.lead_exp, cs.x.step), (0, 2));
    assert_eq!(ints(&cs.x, 7), [1, 4, 8, 16, 32, 56, 96]);
    assert_eq!(cs.y.prefactor.scale, CycloQ::from_int(4));
    assert_eq!(cs.y.lead_exp, 1);
    assert_eq!(ints(&cs.y, 6), [1, 6, 24, 80, 231, 606]);
}

#[test]
fn singularity_classes() {
    let c = |n: i64, d: i64| classify_singularity(&Rational::from((n, d))).unwrap().order;
    assert_eq!(c(-1, 2), Order::Parabolic);
    assert_eq!(c(-3, 8), Order::Finite(2));
    assert_eq!(c(-4, 9), Order::Finite(3));
    assert_eq!(c(0, 1), Order::Finite(1));
    assert!(classify_singularity(&Rational::from((-1, 3))).is_err());
    assert!(classify_singularity(&Rational::from((-1, 1))).is_err());
}

#[test]
fn divisor_sigma_values() {
    assert_eq!(divisor_sigma(1, 12), Integer::from(28));
    assert_eq!(divisor_sigma(3, 4), Integer::from(73));
}

fn charts() -> Vec<ChartSeries> {
    static CACHE: OnceLock<Vec<ChartSeries>> = OnceLock::new();
    CACHE.get_or_init(|| CuspChart::all().iter().map(|c| burnside_chart_series(c, N).unwrap()).collect()).clone()
}

fn assert_same(a: &LaurentSeries, b: &LaurentSeries, upto: i64) {
    let (a, b) = (a.absorb_scale(), b.absorb_scale());
    assert!(a.order() >= upto && b.order() >= upto, "orders {} {} below {upto}", a.order(), b.order());
    for e in a.lead_exp.min(b.lead_exp)..upto {
        assert_eq!(a.coeff(e), b.coeff(e), "exponent {e}");
    }
}

#[test]
fn integer_coefficients_through_200() {
    for cs in charts() {
        assert!(cs.x.coeffs.len() >= N && cs.y.coeffs.len() >= N);
        assert!(cs.x.integer_coeffs().is_some(), "X at {}", cs.chart.cusp);
        assert!(cs.y.integer_coeffs().is_some(), "Y at {}", cs.chart.cusp);
    }
}

#[test]
fn curve_identity_in_every_chart() {
    for cs in charts() {
        let d = cs.y.mul(&cs.y).sub(&cs.x.pow(5).unwrap().sub(&cs.x).unwrap()).unwrap();
        assert!(d.is_zero(), "chart {}", cs.chart.cusp);
        assert!(d.order() >= 2 * cs.y.lead_exp + cs.y.step * (N as i64 - 1), "chart {}", cs.chart.cusp);
    }
}

#[test]
fn branch_products_equal_sums() {
    let cs = charts()[2].clone();
    let upto = 2 * N as i64;
    let xp = eta_product_series(&EtaProductSpec::new(vec![EtaFactor::new(4, 1, 2, 0), EtaFactor::new(4, 1, 4, 2)]), 2 * N).unwrap();
    assert_same(&cs.x, &xp, upto);
    let yp = eta_product_series(
        &EtaProductSpec::new(vec![EtaFactor::new(4, 1, 3, 0), EtaFactor::new(2, 1, 6, 0)]).with_lead(CycloQ::from_int(4), 1),
        2 * N,
    )
    .unwrap();
    assert_same(&cs.y, &yp, upto);
}

#[test]
fn differential_products_equal_sums() {
    let cs = charts()[2].clone();
    let w = cs.x.deriv().div(&cs.y).unwrap();
    let upto = 2 * N as i64 - 2;
    let p1 = eta_product_series(
        &EtaProductSpec::new(vec![EtaFactor::new(4, -1, 1, 0), EtaFactor::new(4, -1, 2, 2), EtaFactor::new(8, -1, 3, 0)])
            .with_lead(CycloQ::from_int(2), 0),
        2 * N,
    )
    .unwrap();
    assert_same(&w, &p1, upto);
    let p2 = eta_product_series(
        &EtaProductSpec::new(vec![EtaFactor::new(4, -1, 1, 0), EtaFactor::new(4, 1, 2, 2), EtaFactor::new(8, -1, 3, 0)])
            .with_lead(CycloQ::from_int(2), 0),
        2 * N,
    )
    .unwrap();
    assert_same(&cs.x.mul(&w), &p2, upto);
}

#[test]
fn empty_product_is_one() {
    let s = eta_product_series(&EtaProductSpec::new(vec![]), 10).unwrap();
    assert_eq!(s.coeff(0), CycloQ::one());
    assert!(s.coeffs[1..].iter().all(|c| c.is_zero()));
    assert_eq!(s.order(), 10);
}

#[test]
fn theta_and_divisor_values() {
    let t = theta_and_divisor_series(SeriesKind::Theta3Pow4, N).unwrap();
    assert_eq!(t.step, 8);
    assert_eq!(ints(&t, 8), [1, 8, 24, 32, 24, 48, 96, 64]);
    let s = theta_and_divisor_series(SeriesKind::Sigma1Odd, 10).unwrap();
    assert_eq!(ints(&s, 7), [1, 4, 6, 8, 13, 12, 14]);
    let g = theta_and_divisor_series(SeriesKind::G2Eisenstein, 10).unwrap();
    assert_eq!(g.coeffs[0], CycloQ::frac(1, 240));
    let tail: Vec<i64> = g.coeffs[1..7].iter().map(|c| c.as_integer().unwrap().to_i64().unwrap()).collect();
    assert_eq!(tail, [1, 9, 28, 73, 126, 252]);
}

fn theta1_formal(cs: &ChartSeries) -> LaurentSeries {
    let x = cs.x.absorb_scale();
    let den = x.mul(&x).sub(&LaurentSeries::constant(CycloQ::one(), x.order() + 8)).unwrap();
    x.q_deriv().div(&den).unwrap()
}

#[test]
fn theta1_at_zero_cusp_is_sigma1() {
    let cs = charts()[1].clone();
    let s = theta1_formal(&cs);
    let sig = theta_and_divisor_series(SeriesKind::Sigma1Odd, N).unwrap();
    let lead = CycloQ::zeta8().pow(7).unwrap().mul_int(4);
    let mut twist = CycloQ::one();
    for k in 0..N as i64 {
        let e = 2 + 4 * k;
        assert!(e < s.order());
        assert_eq!(s.coeff(e), &(&lead * &twist) * &sig.coeff(4 * k), "k = {k}");
        assert!(s.coeff(e + 2).is_zero());
        twist = &twist * &(-CycloQ::i());
    }
}

#[test]
fn theta1_at_infinity_is_theta_power() {
    let cs = charts()[3].clone();
    let s = theta1_formal(&cs).neg();
    let th = theta_and_divisor_series(SeriesKind::Theta3Pow4, N / 4).unwrap();
    for e in 0..th.order().min(s.order()) {
        let sign = if e % 16 == 8 { -1 } else { 1 };
        assert_eq!(s.coeff(e), th.coeff(e).mul_int(sign), "exponent {e}");
    }
}

#[test]
fn theta1_series_matches_elliptic_value() {
    let p = 256;
    let tau = cx(p, 0.0, 3.0);
    let (t1, _, _) = theta_forms(&tau).unwrap();
    let th = theta_and_divisor_series(SeriesKind::Theta3Pow4, 60).unwrap();
    let chart = CuspChart { a: 2, b: -5, c: 0, d: 2, ..CuspChart::infinity() };
    let (v, tail) = th.numeric_eval(&chart, &tau, 0.5).unwrap();
    let pi2 = Complex::with_val(p, pi_c(p).square_ref()) / 16u32;
    let v = v * pi2;
    assert!(tail < 1e-70);
    assert!(abs_f64(&Complex::with_val(p, &v - &t1)) < 1e-60);
}

#[test]
fn numeric_eval_matches_curve() {
    let p = 256;
    for cs in charts() {
        let cs = ChartSeries { x: cs.x.truncate(cs.x.lead_exp + 8 * 60), y: cs.y.truncate(cs.y.lead_exp + 8 * 60), ..cs };
        let tau = match cs.chart.cusp_point() {
            None => cx(p, 0.3, 1.5),
            Some(r) => Complex::with_val(p, (rug::Float::with_val(p, &r) + 0.03, 0.12)),
        };
        let st = BurnsideState::new(&tau).unwrap();
        let (x, ex) = cs.x.numeric_eval(&cs.chart, &tau, 0.5).unwrap();
        let (y, _) = cs.y.numeric_eval(&cs.chart, &tau, 0.5).unwrap();
        let y = y * y_state_sign(&cs.chart);
        let rel = |a: &Complex, b: &Complex| abs_f64(&Complex::with_val(p, a - b)) / abs_f64(b).max(1.0);
        assert!(ex < 1e-40, "tail {ex:e} at {}", cs.chart.cusp);
        assert!(rel(&x, &st.x) < 1e-40, "x at {}", cs.chart.cusp);
        assert!(rel(&y, &st.y) < 1e-35, "y at {}", cs.chart.cusp);
    }
}

#[test]
fn pole_chart_at_two_plus_fifth_i() {
    let p = 256;
    let tau = cx(p, 2.0, 0.2);
    let cs = charts()[0].clone();
    let st = BurnsideState::new(&tau).unwrap();
    let (x, _) = cs.x.numeric_eval(&cs.chart, &tau, 0.5).unwrap();
    assert!(abs_f64(&Complex::with_val(p, &x - &st.x)) / abs_f64(&st.x) < 1e-20);
}

#[test]
fn chart_limits_give_branch_values() {
    let p = 256;
    for (ch, val) in [
        (CuspChart::zero(), (0.0, 0.0)),
        (CuspChart::half(), (1.0, 0.0)),
        (CuspChart::infinity(), (-1.0, 0.0)),
        (CuspChart::one(), (0.0, 1.0)),
        (CuspChart::minus_one(), (0.0, -1.0)),
    ] {
        let cs = burnside_chart_series(&ch, 40).unwrap();
        let tau = ch.point_near(p, if ch.cusp_point().is_none() { 0.02 } else { 0.01 });
        let (x, _) = cs.x.numeric_eval(&ch, &tau, 0.5).unwrap();
        assert!(abs_f64(&Complex::with_val(p, &x - &cx(p, val.0, val.1))) < 1e-6, "{}", ch.cusp);
    }
}

#[test]
fn large_q_is_refused() {
    let cs = burnside_chart_series(&CuspChart::infinity(), 10).unwrap();
    assert!(cs.x.numeric_eval(&cs.chart, &cx(128, 0.0, 0.1), 0.5).is_err());
}

#[test]
fn wrong_ansatz_is_rejected() {
    let ch = CuspChart::half();
    let bad = Ansatz { lead_exp: 0, lead_coeff: CycloQ::one(), step: 2, free: vec![] };
    assert!(solve_schwarz_series(&ch, &bad, 10).is_err());
    let bad = Ansatz { lead_exp: -1, lead_coeff: CycloQ::frac(1, 2), step: 8, free: vec![] };
    assert!(solve_schwarz_series(&CuspChart::pole(), &bad, 10).is_err());
}

#[test]
fn free_coefficient_is_a_rescaling() {
    let ch = CuspChart::half();
    let canon = solve_schwarz_series(&ch, &Ansatz::canonical(&ch), 12).unwrap();
    let other = Ansatz { lead_exp: 0, lead_coeff: CycloQ::one(), step: 2, free: vec![Rational::from(3)] };
    let s = solve_schwarz_series(&ch, &other, 12).unwrap();
    let mut lam = CycloQ::one();
    for k in 0..12 {
        assert_eq!(s.coeffs[k], &canon.coeffs[k] * &lam);
        lam = lam.scale(&Rational::from((3, 4)));
    }
}

#[test]
fn odd_order_has_no_square_root() {
    let s = LaurentSeries::from_ints(1, 2, &[1, 3, 5]);
    assert!(s.sqrt(1).is_err());
}

#[test]
fn modular_coordinate_reversion() {
    let f = |n: i64, d: i64| CycloQ::frac(n, d);
    let mut c = vec![CycloQ::zero(); 41];
    for (k, v) in [(0, f(1, 1)), (8, f(-5, 21)), (16, f(-78, 833)), (24, f(4001, 39445)), (32, f(168948, 1711913)), (40, f(42752022, 491319031))] {
        c[k] = v;
    }
    let mu = LaurentSeries::new(1, 1, c);
    let q = mu.revert().unwrap();
    for (e, v) in [(1, f(1, 1)), (9, f(5, 21)), (17, f(503, 833)), (25, f(4138924, 2011695)), (33, f(6383638315, 785768067))] {
        assert_eq!(q.coeff(e), v, "exponent {e}");
    }
    assert_eq!(mu.compose(&q).unwrap().truncate(42), LaurentSeries::identity(42));
}

#[test]
fn export_record() {
    let cs = burnside_chart_series(&CuspChart::zero(), 6).unwrap();
    let v = serde_json::to_value(cs.y.export("0")).unwrap();
    assert_eq!(v["lead_exp"], 1);
    assert_eq!(v["step"], 8);
    assert_eq!(v["ring"], "Q");
    assert_eq!(v["prefactor"]["zeta16_power"], 15);
    assert_eq!(v["coeffs"][2], "42");
}

fn small_series() -> impl Strategy<Value = LaurentSeries> {
    proptest::collection::vec((-9i64..10, 1i64..5), 40).prop_map(|v| {
        let mut c: Vec<CycloQ> = v.into_iter().map(|(n, d)| CycloQ::frac(n, d)).collect();
        if c[0].is_zero() {
            c[0] = CycloQ::one();
        }
        LaurentSeries::new(1, 1, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reversion_round_trip(s in small_series()) {
        let r = s.revert().unwrap();
        prop_assert_eq!(r.revert().unwrap(), s.clone());
        prop_assert_eq!(s.compose(&r).unwrap().truncate(41), LaurentSeries::identity(41));
    }

    #[test]
    fn inverse_times_self_is_one(s in small_series()) {
        let one = s.mul(&s.inv().unwrap());
        prop_assert_eq!(one.coeffs[0].clone(), CycloQ::one());
        prop_assert!(one.coeffs[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn sqrt_squares_back(s in small_series()) {
        let sq = s.mul(&s);
        let r = sq.sqrt(1).unwrap();
        prop_assert_eq!(r.mul(&r).absorb_scale().coeffs, sq.absorb_scale().coeffs);
    }
}
