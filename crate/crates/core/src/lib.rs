//! Uniformization toolkit for Burnside's curve `y^2 = x^5 - x`.
//!
//! Layers, bottom to top:
//!
//! * [`numeric`]: exact arithmetic in `Q(i, sqrt 2)` and multiprecision complex helpers.
//! * [`elliptic`]: Weierstrass functions, lattice invariants, eta, Klein `J`, `K`, inverse of `wp`.
//! * [`curve`]: the parametrization `x(tau)`, `y(tau)` and its Schwarz equation.
//! * [`series`]: exact q-series at cusps, eta products, reversion.
//! * [`torus`]: the degree-two cover of the torus with `J = 125/27`.
//! * [`whittaker`]: Whittaker's Q-function, hypergeometric reductions, conversion series.

pub mod curve;
pub mod elliptic;
mod error;
pub mod numeric;
pub mod series;
pub mod torus;
pub mod whittaker;

pub use error::{Error, Result};
