//! High-precision evaluation of the even and odd solutions of
//!
//! ```text
//! w'' + x w' + (a + 1/2) w = 0
//! ```
//!
//! together with their large-`x` asymptotics on the positive real axis, where
//! the algebraic expansion is accompanied by an exponentially small term that
//! standard Poincaré asymptotics gets wrong by a factor of two.
//!
//! The crate is organised around four pieces:
//!
//! * [`exact_series`] — exact rational generation of the `G` coefficient
//!   polynomials by reverting the phase map `w²/2 = t - log t - 1` and
//!   expanding `t^(γ-1)/(1-t) · dt/dw + 1/w` as a formal series in `w`;
//! * [`coefficients`] — Pochhammer symbols, the `A_j`/`B_j` coefficient
//!   sequences, and the optimal truncation index of the algebraic expansion;
//! * [`oracle`] — ground-truth evaluation of the solutions through the
//!   Kummer function `M(a, b, z)` in extended precision, plus independent
//!   correctness probes (ODE residual, parity, the Kummer transformation);
//! * [`asymptotics`] — the optimally truncated algebraic sum, the refined
//!   exponentially small expansions `E₁`/`E₂`, the generic refined Kummer
//!   expansion, and the defective standard expansion for comparison.
//!
//! All coefficient generation is exact (arbitrary-precision rationals); all
//! numeric evaluation is done in MPFR floats at a precision chosen by a
//! [`PrecisionContext`] that compensates for the catastrophic cancellation in
//! the Kummer series at negative argument.

pub mod asymptotics;
pub mod coefficients;
pub mod error;
pub mod exact_series;
pub mod gamma_poly;
pub mod oracle;
pub mod rational;
pub mod series;

pub use asymptotics::{ExpansionReport, ExpansionValue};
pub use coefficients::{Kind, KummerParams, TruncationSpec, WeberParams};
pub use error::{Error, Result};
pub use exact_series::GTable;
pub use gamma_poly::GammaPolynomial;
pub use oracle::{BigReal, PrecisionContext};
pub use rational::Rational;
pub use series::FormalSeries;
