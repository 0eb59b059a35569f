//! Exact scalar, series and polynomial arithmetic.

pub mod linalg;
pub mod mpoly;
pub mod qseries;
pub mod rat;

pub use linalg::{SparseRow, Solution};
pub use mpoly::{MPoly, Positivity};
pub use qseries::QSeries;
pub use rat::{binom, binom_int, factorial, parse_rat, poch, rat, ri, Rat};
