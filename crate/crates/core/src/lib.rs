//! Online edge coloring of the random graph process with `2 sigma` internal
//! colors, merged into `sigma` classes at the min-degree-`2 sigma` hitting
//! time, and extraction of one Hamilton cycle per class.

pub mod coloring;
pub mod error;
pub mod harness;
pub mod posa;
pub mod process;
pub mod thresholds;
pub mod validators;

pub use error::{Error, Result};
