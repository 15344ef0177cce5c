use burnside_uniform::curve::x_of_tau;
use burnside_uniform::numeric::mp::{abs_f64, cx};
use burnside_uniform::torus::{torus_fuchsian_q, BurnsideTorus, FuchsVariant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Complex;

pub const SAMPLE_COUNT: usize = 20;

/// Guard radius around the branch values `0, +-1, +-i` of `x(tau)`.
pub const GUARD: f64 = 1e-3;

fn guarded(x: &Complex) -> bool {
    let p = x.prec().0;
    let near = [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]
        .iter()
        .any(|&(re, im)| abs_f64(&Complex::with_val(p, x - cx(p, re, im))) < GUARD);
    near || abs_f64(x) > 1.0 / GUARD
}

/// Points of `{|Re tau| <= 2, 1/2 <= Im tau <= 4}` where `x(tau)` stays away
/// from its branch values and its pole, redrawn otherwise.
pub fn tau_samples(n: usize, seed: u64, prec: u32) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (re, im) = (rng.gen_range(-2.0..=2.0), rng.gen_range(0.5..=4.0));
        let x = match x_of_tau(&cx(128, re, im)) {
            Ok(x) => x,
            Err(_) => continue,
        };
        if !guarded(&x) {
            out.push(cx(prec, re, im));
        }
    }
    out
}

/// Points of the period cell `(0, 2 omega) x (0, 2 omega')`, away from the
/// singular points of the torus equation.
pub fn alpha_samples(t: &BurnsideTorus, n: usize, seed: u64) -> Vec<Complex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa1e9);
    let p = t.prec();
    let w = t.omega.real().to_f64();
    let wi = t.omega_prime.imag().to_f64();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let a = cx(p, rng.gen_range(0.05..1.95) * w, rng.gen_range(0.05..1.95) * wi);
        if torus_fuchsian_q(t, &a, FuchsVariant::Burnside).is_ok() {
            out.push(a);
        }
    }
    out
}
