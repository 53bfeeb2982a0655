use thiserror::Error;

use crate::exactcore::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomials live in different rings ({left} vs {right} variables)")]
    DimensionMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// The dividend is not a multiple of the divisor. Raised by the pair
    /// terms of the raising operators when the input leaves their domain.
    #[error("polynomial is not exactly divisible by {divisor}")]
    NotDivisible { divisor: String },

    #[error("operator {op} is not defined for the {model} model")]
    ModelMismatch { op: &'static str, model: &'static str },

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid radial tower: {0}")]
    InvalidTower(String),

    #[error("singular representation: {0}")]
    SingularRepresentation(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("argument outside the domain of {function}: {detail}")]
    Domain { function: &'static str, detail: String },

    #[error("sample point {point:?} is within {separation:.3e} of a singular locus (need > {required:.3e})")]
    Proximity {
        point: Vec<f64>,
        separation: f64,
        required: f64,
    },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("series order {order} is too short at r = {r:.4}: first omitted term {omitted:.3e} vs partial sum {partial:.3e}")]
    TruncationTooShort {
        order: usize,
        r: f64,
        omitted: f64,
        partial: f64,
    },
}
