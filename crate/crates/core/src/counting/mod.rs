//! Weighted lattice-point counts over the quadric pair and over four binary
//! linear forms, and the ratio diagnostics built on them.

mod diag;
mod engine;
mod linear;
mod weight;

pub use diag::{ratio_diagnostic, ratio_diagnostic_t, RatioRow};
pub use engine::{count_s, count_s_naive, count_t, CountOptions, CountResult, DEFAULT_COUNT_BUDGET};
pub use linear::{reduce_to_pair, LinearSystem};
pub use weight::{Bump, Role, WeightSpec};
