//! Complete exponential sums and weighted lattice-point counts attached to a
//! pair of diagonal quadratic forms in six variables.

pub mod arith;
pub mod counting;
mod error;
pub mod expsums;
pub mod forms;
pub mod par;
pub mod verify;

pub use error::{Error, Result};
