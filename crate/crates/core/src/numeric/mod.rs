//! Exact number-field arithmetic and multiprecision numerics.

pub mod cyclo;
pub mod diff;
pub mod jet;
pub mod mp;
pub mod poly;
pub mod quad;

pub use cyclo::CycloQ;
pub use mp::{MpComplex, ToleranceConfig};
