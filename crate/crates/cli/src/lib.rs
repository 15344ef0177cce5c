//! Command-line front end: named verification suites, point evaluation and
//! exact series export, with JSON or text reports.

pub mod eval;
pub mod report;
pub mod samples;
pub mod series;
pub mod suites;

pub use report::{Check, Format, Report, RunConfig, Status};
