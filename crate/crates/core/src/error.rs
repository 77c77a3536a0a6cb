use thiserror::Error;

use crate::algebra::DivisionByZero;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown group law preset `{0}`")]
    UnknownPreset(String),
    #[error("truncation degree must be at least 2, got {0}")]
    InvalidTruncation(u32),
    #[error("series are over different coefficient rings")]
    RingMismatch,
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("elements belong to different ring models")]
    ModelMismatch,
    #[error("element is not invertible: its scalar part is zero")]
    NotInvertible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes a denominator vanish")]
    VanishingDenominator,
    #[error("factor index {index} out of range 1..={factors}")]
    FactorIndex { index: usize, factors: usize },
    #[error("class index {index} out of range 1..={genus}")]
    ClassIndex { index: usize, genus: u32 },
    #[error("diagonal needs two distinct factors, got ({0}, {0})")]
    DegenerateDiagonal(usize),
    #[error("composition {parts:?} does not sum to {factors}")]
    Composition { parts: Vec<usize>, factors: usize },
    #[error("value is not symmetric under the symmetric group")]
    NotSymmetric,
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
    #[error("variable `{0}` is not pinned by the component")]
    UnpinnedVariable(String),
    #[error("two delta factors pin the same variable `{0}`")]
    DoublePin(String),
    #[error("out of domain: {0}")]
    Domain(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl From<DivisionByZero> for Error {
    fn from(_: DivisionByZero) -> Self {
        Error::DivisionByZero
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
