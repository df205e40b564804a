//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// `M(a, b, z)` is undefined when `b` is zero or a negative integer.
    #[error("kummer_m: b = {0} is zero or a negative integer (gamma pole)")]
    KummerPole(String),

    /// Optimal truncation of the algebraic expansion needs `x²/2 - a >= 1`.
    #[error("optimal truncation undefined: x\u{b2}/2 - a = {0} is below 1 (x too small)")]
    XTooSmall(String),

    /// The cancellation guard asked for more working precision than allowed.
    #[error("precision exhausted: {required} digits required, ceiling is {ceiling}")]
    PrecisionExhausted { required: u32, ceiling: u32 },

    /// A `G` polynomial beyond the generated table was requested.
    #[error("G_{requested} not generated (table holds G_0..G_{max})")]
    NotGenerated { requested: usize, max: usize },

    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
