//! Multi-precision laboratory for the Báez-Duarte sequence
//!
//! ```text
//! c_k = Σ_{j=0}^{k} (-1)^j C(k, j) / ζ(2j + 2)
//! ```
//!
//! The crate evaluates `c_k` two ways: directly from the finite binomial sum,
//! and from the explicit formula that splits it into a trend carried by the
//! trivial zeros of ζ and an oscillating part carried by the nontrivial zeros.
//! Comparing the two at thousands of digits is the whole experiment.
//!
//! Layout, bottom-up:
//!
//! * [`precision`]: the numeric context and the digit-agreement metric.
//! * [`special`]: Bernoulli numbers, binomials, complex log-gamma, constants.
//! * [`accel`]: Cohen–Villegas–Zagier alternating-series acceleration.
//! * [`zeta`]: ζ and ζ′ on the critical strip, ζ at integers, trivial-zero
//!   derivatives, and the Maslanka representation.
//! * [`zeros`]: refinement, verification and bookkeeping for nontrivial zeros.
//! * [`baez_duarte`]: the generic sum, trend, oscillation, and diagnostics.
//!
//! All arithmetic is MPFR-backed through `rug`, rounding to nearest.

pub mod accel;
pub mod baez_duarte;
mod error;
pub mod precision;
pub mod special;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use precision::{digits_of_agreement, Agreement, NumericContext, Oversample};

/// Arbitrary-precision real.
pub type HpReal = rug::Float;
/// Arbitrary-precision complex value, a pair of [`HpReal`] components.
pub type HpComplex = rug::Complex;
