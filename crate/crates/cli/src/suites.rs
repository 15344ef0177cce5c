use std::sync::{Arc, OnceLock};

use burnside_uniform::curve::{
    klein_j_relation, schwarz_residual, theta1_identity_residual, verify_four_identities, verify_rational_identities, y_schwarz_residual,
    BurnsideState,
};
use burnside_uniform::numeric::mp::{fmt_complex, ToleranceConfig};
use burnside_uniform::series::{burnside_chart_series, ChartSeries, CuspChart};
use burnside_uniform::torus::BurnsideTorus;
use rug::Complex;

use crate::report::{Job, Outcome, Report};
use crate::samples::{alpha_samples, tau_samples, SAMPLE_COUNT};
use crate::RunConfig;

mod exact;
mod torus;

pub const SUITES: [&str; 7] = ["schwarz", "identities", "forms", "cover", "torus-fuchsian", "whittaker", "conversion"];

/// Shared state of one verification run, built lazily.
pub struct Ctx {
    pub cfg: RunConfig,
    pub tc: ToleranceConfig,
    taus: OnceLock<Vec<Complex>>,
    alphas: OnceLock<Vec<Complex>>,
    torus: OnceLock<Result<BurnsideTorus, String>>,
    torus_w: OnceLock<Result<BurnsideTorus, String>>,
    charts: OnceLock<Result<Vec<ChartSeries>, String>>,
}

impl Ctx {
    pub fn new(cfg: &RunConfig) -> Arc<Self> {
        Arc::new(Ctx {
            cfg: cfg.clone(),
            tc: cfg.tolerance(),
            taus: OnceLock::new(),
            alphas: OnceLock::new(),
            torus: OnceLock::new(),
            torus_w: OnceLock::new(),
            charts: OnceLock::new(),
        })
    }

    pub fn tol(&self) -> f64 {
        self.cfg.residual_tol
    }

    pub fn taus(&self) -> &[Complex] {
        self.taus.get_or_init(|| tau_samples(SAMPLE_COUNT, self.cfg.seed, self.cfg.precision_bits))
    }

    pub fn torus(&self) -> Result<&BurnsideTorus, String> {
        self.torus.get_or_init(|| BurnsideTorus::new(self.cfg.precision_bits).map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
    }

    /// The torus at the working precision, for finite-difference checks.
    pub fn torus_w(&self) -> Result<&BurnsideTorus, String> {
        self.torus_w.get_or_init(|| BurnsideTorus::new(self.tc.working_prec()).map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
    }

    pub fn alphas(&self) -> Result<&[Complex], String> {
        let t = self.torus()?;
        Ok(self.alphas.get_or_init(|| alpha_samples(t, SAMPLE_COUNT, self.cfg.seed)))
    }

    /// The six cusp charts with `truncation_order` coefficients each.
    pub fn charts(&self) -> Result<&[ChartSeries], String> {
        self.charts
            .get_or_init(|| {
                CuspChart::all().iter().map(|c| burnside_chart_series(c, self.cfg.truncation_order).map_err(|e| e.to_string())).collect()
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }
}

pub fn fmt(z: &Complex) -> String {
    fmt_complex(z, 24)
}

pub(crate) fn e2s(e: burnside_uniform::Error) -> String {
    e.to_string()
}

pub(crate) fn below(tol: f64) -> String {
    format!("residual < {tol:.3e}")
}

fn state(ctx: &Ctx, tau: &Complex) -> Result<BurnsideState, String> {
    BurnsideState::new(&Complex::with_val(ctx.tc.working_prec(), tau)).map_err(e2s)
}

fn list(v: &[f64]) -> String {
    v.iter().map(|r| format!("{r:.3e}")).collect::<Vec<_>>().join(", ")
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

fn schwarz(ctx: &Arc<Ctx>) -> Vec<Job> {
    (0..SAMPLE_COUNT)
        .map(|k| {
            let c = ctx.clone();
            Job::new(format!("schwarz/tau-{k:02}"), "Schwarz equation of x(tau)", move || {
                let tau = &c.taus()[k];
                let r = schwarz_residual(tau, &c.tc).map_err(e2s)?;
                Ok(Outcome::residual(r.residual, c.tol(), format!("Q(x) = {}", fmt(&r.rhs)), format!("[x, tau] = {} at tau = {}", fmt(&r.lhs), fmt(tau))))
            })
        })
        .collect()
}

fn identities(ctx: &Arc<Ctx>) -> Vec<Job> {
    let mut jobs = Vec::new();
    for k in 0..SAMPLE_COUNT {
        let c = ctx.clone();
        jobs.push(Job::new(format!("identities/four-{k:02}"), "wp-quotient identities", move || {
            let r = verify_four_identities(&state(&c, &c.taus()[k])?);
            Ok(Outcome::residual(max(&r), c.tol(), below(c.tol()), list(&r)))
        }));
        let c = ctx.clone();
        jobs.push(Job::new(format!("identities/rational-{k:02}"), "wp-quotient identities", move || {
            let r = verify_rational_identities(&state(&c, &c.taus()[k])?);
            Ok(Outcome::residual(max(&r), c.tol(), below(c.tol()), list(&r)))
        }));
        let c = ctx.clone();
        jobs.push(Job::new(format!("identities/klein-j-{k:02}"), "Klein J relation", move || {
            let r = klein_j_relation(&state(&c, &c.taus()[k])?).map_err(e2s)?;
            Ok(Outcome::residual(r, c.tol(), below(c.tol()), format!("{r:.3e}")))
        }));
        let c = ctx.clone();
        jobs.push(Job::new(format!("identities/theta1-{k:02}"), "Theta1 identity", move || {
            let r = theta1_identity_residual(&c.taus()[k], &c.tc).map_err(e2s)?;
            Ok(Outcome::residual(r, c.tol(), below(c.tol()), format!("{r:.3e}")))
        }));
        let c = ctx.clone();
        jobs.push(Job::new(format!("identities/y-schwarz-{k:02}"), "Schwarz equation of y(tau)", move || {
            let r = y_schwarz_residual(&c.taus()[k], &c.tc).map_err(e2s)?;
            Ok(Outcome::residual(r.stated.max(r.chain_rule), c.tol(), below(c.tol()), format!("stated {:.3e}, chain rule {:.3e}", r.stated, r.chain_rule)))
        }));
    }
    jobs
}

/// The jobs of one suite, or of every suite for `all`.
pub fn jobs(suite: &str, ctx: &Arc<Ctx>) -> Result<Vec<Job>, String> {
    Ok(match suite {
        "schwarz" => schwarz(ctx),
        "identities" => identities(ctx),
        "forms" => exact::forms(ctx),
        "cover" => torus::cover(ctx),
        "torus-fuchsian" => torus::fuchsian(ctx),
        "whittaker" => exact::whittaker(ctx),
        "conversion" => exact::conversion(ctx),
        "all" => {
            let mut v = Vec::new();
            for s in SUITES {
                v.extend(jobs(s, ctx)?);
            }
            v
        }
        _ => return Err(format!("unknown suite {suite:?}; known: {}, all", SUITES.join(", "))),
    })
}

pub fn verify(suite: &str, cfg: &RunConfig) -> Result<Report, String> {
    let ctx = Ctx::new(cfg);
    let jobs = jobs(suite, &ctx)?;
    Ok(Report::run(suite, cfg, jobs))
}
