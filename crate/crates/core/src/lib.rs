//! Exact enumeration of 3-letter patterns (111, 112, 221, 123, peak, valley)
//! in integer compositions and k-ary words.
//!
//! - [`series`]: truncated power series in `x, z, y` with exact coefficients.
//! - [`patterns`]: compositions, words, occurrence counting and brute-force tables.
//! - [`genfun`]: closed-form and recursive generating functions over a part set.
//! - [`words`]: the `x = 1` specialization and the classical word formulas.
//! - [`asymptotics`]: dominant poles, growth constants and winding checks for
//!   the avoidance series over ℕ.
//!
//! The algebra is generic over the coefficient ring ([`series::Coefficient`])
//! and the numerics over the float type ([`asymptotics::Real`]); the aliases
//! below fix the usual choices.

pub mod asymptotics;
pub mod genfun;
pub mod patterns;
pub mod series;
pub mod words;

pub use patterns::{Composition, OccurrenceTable, PartSet, PatternId};
pub use series::{Exponents, GradingVar, SeriesError};

/// Arbitrary-precision integer series, the default for all counting.
pub type Series = series::TruncatedSeries<num_bigint::BigInt>;

/// Double-precision asymptotic estimate.
pub type Estimate = asymptotics::AsymptoticEstimate<f64>;

/// Double-precision point evaluation of `f`.
pub type Evaluation = asymptotics::Evaluation<f64>;
