use std::process::ExitCode;

use burnside_cli::{eval, series, suites, Format, RunConfig};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "burnside", about = "Burnside's genus-2 uniformization: evaluation, exact series and verification suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, default_value_t = 256)]
    precision: u32,
    /// Truncation order of series (at least 8).
    #[arg(long, global = true, default_value_t = 200)]
    order: usize,
    /// Residual tolerance; defaults to 2^(-precision/2).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Json)]
    format: Fmt,
    /// Seed of the sample-point generator.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a function at a point.
    Eval {
        /// One of x, y, J, theta1, theta2, eta, alpha_plus, omega, omega_prime, aleph, wp, wp_prime, zeta, g2, g3.
        target: String,
        /// Point in the upper half-plane, e.g. 2i, 0.3+1.2i, sqrt2*i.
        #[arg(long)]
        tau: Option<String>,
        /// Argument of wp, wp_prime and zeta on Burnside's torus.
        #[arg(long)]
        z: Option<String>,
    },
    /// Export an exact series through q^order.
    Series { name: String },
    /// Run a verification suite; exits nonzero if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn run(cli: Cli) -> Result<bool, String> {
    let format = match cli.format {
        Fmt::Json => Format::Json,
        Fmt::Text => Format::Text,
    };
    let cfg = RunConfig::new(cli.precision, cli.order, cli.tol, cli.seed)?.with_format(format);
    match cli.cmd {
        Cmd::Eval { target, tau, z } => {
            let r = eval::eval(&target, tau.as_deref(), z.as_deref(), &cfg)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r).expect("serializes")),
                Format::Text => println!("{}", r.to_text()),
            }
            Ok(true)
        }
        Cmd::Series { name } => {
            let r = series::export(&name, &cfg)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r).expect("serializes")),
                Format::Text => print!("{}", series::to_text(&name, &r)),
            }
            Ok(true)
        }
        Cmd::Verify { suite } => {
            let report = suites::verify(&suite, &cfg)?;
            println!("{}", report.render());
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
