//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized: squared amplitudes sum to {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("matrix is not unitary: max entry of |U\u{2020}U - I| is {deviation}")]
    NotUnitary { deviation: f64 },

    #[error("probability out of range [0, 1]: {value}")]
    InvalidProbability { value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    NotADistribution { sum: f64 },

    #[error("payoff parameters must satisfy b > a > c > 0, got a={a}, b={b}, c={c}")]
    InvalidPayoffParams { a: f64, b: f64, c: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "game too large for support enumeration: {rows}x{cols} exceeds the 6x6 desk-scale limit"
    )]
    GameTooLarge { rows: usize, cols: usize },

    #[error("committed mode requires the mixing parameters (p, q)")]
    MissingRandomParams,

    #[error("unknown strategy label: {0}")]
    UnknownStrategy(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
