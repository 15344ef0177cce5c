use std::fmt::Write as _;
use std::time::Instant;

use burnside_uniform::numeric::ToleranceConfig;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub truncation_order: usize,
    pub residual_tol: f64,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    pub const MAX_ORDER: usize = 4096;

    /// Validates `precision_bits >= 64` and `8 <= truncation_order <= MAX_ORDER`.
    /// The tolerance defaults to `2^(-P/2)`.
    pub fn new(precision_bits: u32, truncation_order: usize, residual_tol: Option<f64>, seed: u64) -> Result<Self, String> {
        if precision_bits < 64 {
            return Err(format!("precision {precision_bits} is below 64 bits"));
        }
        if !(8..=Self::MAX_ORDER).contains(&truncation_order) {
            return Err(format!("order {truncation_order} is outside 8..={}", Self::MAX_ORDER));
        }
        let residual_tol = residual_tol.unwrap_or_else(|| ToleranceConfig::new(precision_bits).residual_tol);
        if !(residual_tol > 0.0 && residual_tol.is_finite()) {
            return Err(format!("tolerance {residual_tol} is not a positive number"));
        }
        Ok(RunConfig { precision_bits, truncation_order, residual_tol, format: Format::Json, seed })
    }

    pub fn with_format(mut self, f: Format) -> Self {
        self.format = f;
        self
    }

    pub fn tolerance(&self) -> ToleranceConfig {
        ToleranceConfig::new(self.precision_bits).with_tol(self.residual_tol)
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::new(256, 200, None, 1).expect("valid defaults")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: &'static str,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub residual: Option<f64>,
    pub ms: u64,
}

/// What a check reports before timing is attached.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub residual: Option<f64>,
}

impl Outcome {
    /// Pass iff `residual < tol`.
    pub fn residual(residual: f64, tol: f64, expected: impl Into<String>, computed: impl Into<String>) -> Self {
        let status = if residual < tol { Status::Pass } else { Status::Fail };
        Outcome { status, expected: expected.into(), computed: computed.into(), residual: Some(residual) }
    }

    /// Pass iff the two renderings are equal.
    pub fn exact(expected: impl Into<String>, computed: impl Into<String>) -> Self {
        let (expected, computed) = (expected.into(), computed.into());
        let status = if expected == computed { Status::Pass } else { Status::Fail };
        Outcome { status, expected, computed, residual: None }
    }

    pub fn skip(reason: impl Into<String>) -> Self {
        Outcome { status: Status::Skip, expected: String::new(), computed: reason.into(), residual: None }
    }
}

pub type CheckFn = Box<dyn Fn() -> Result<Outcome, String> + Send + Sync>;

pub struct Job {
    pub id: String,
    pub anchor: &'static str,
    pub run: CheckFn,
}

impl Job {
    pub fn new(id: impl Into<String>, anchor: &'static str, run: impl Fn() -> Result<Outcome, String> + Send + Sync + 'static) -> Self {
        Job { id: id.into(), anchor, run: Box::new(run) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
}

impl Report {
    /// Runs the jobs in parallel; the report keeps the job order.
    pub fn run(suite: &str, config: &RunConfig, jobs: Vec<Job>) -> Report {
        let checks = jobs
            .into_par_iter()
            .map(|job| {
                let start = Instant::now();
                let out = (job.run)().unwrap_or_else(|e| Outcome {
                    status: Status::Fail,
                    expected: "a value".into(),
                    computed: format!("error: {e}"),
                    residual: None,
                });
                Check {
                    id: job.id,
                    anchor: job.anchor,
                    status: out.status,
                    expected: out.expected,
                    computed: out.computed,
                    residual: out.residual,
                    ms: start.elapsed().as_millis() as u64,
                }
            })
            .collect();
        Report { suite: suite.to_string(), config: config.clone(), checks }
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {} (P = {}, tol = {:e}, seed = {})\n", self.suite, self.config.precision_bits, self.config.residual_tol, self.config.seed);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let r = c.residual.map(|r| format!("  residual {r:.3e}")).unwrap_or_default();
            let _ = writeln!(s, "{tag} {:<36} [{}]{r}  {} ms", c.id, c.anchor, c.ms);
            if c.status != Status::Pass {
                let _ = writeln!(s, "     expected {}\n     computed {}", c.expected, c.computed);
            }
        }
        let _ = writeln!(s, "{} passed, {} failed, {} skipped", self.count(Status::Pass), self.count(Status::Fail), self.count(Status::Skip));
        s
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}
