use thiserror::Error;

use crate::exactcore::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported Eisenstein weight {0} (expected 2, 4 or 6)")]
    UnsupportedWeight(u32),

    #[error("precision must be at least {min}, got {got}")]
    Precision { min: usize, got: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("pole in coefficient formula: {0}")]
    Pole(String),

    #[error("weight mismatch: expected {expected:?}, got {got:?}")]
    WeightMismatch { expected: Vec<u32>, got: Vec<u32> },

    #[error("weight-0 part not allowed here: {0}")]
    ZeroWeightPart(String),

    #[error("missing table entry A_{n}({x}, {y})")]
    MissingEntry { n: usize, x: u32, y: u32 },

    #[error("inconsistent linear system (row {row} reduces to 0 = {rhs})")]
    Inconsistent { row: usize, rhs: Rat },

    #[error("no isobaric representation of weight {weight}: {reason}")]
    NotIsobaric { weight: u32, reason: String },

    #[error("interpolation inconsistent at sample {0}")]
    Interpolation(Rat),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}
