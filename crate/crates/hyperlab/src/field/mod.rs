//! Exact arithmetic on a totally ordered field of truncated asymptotic
//! series in one infinitesimal generator `e` (read: `e = 1/n` for an
//! unlimited index `n`).
//!
//! Every element is a finite sum `sum c_i * e^{q_i}` with rational
//! exponents plus an optional truncation order `O`: exponents above `O`
//! are unknown. Arithmetic propagates truncation orders so that every
//! stored coefficient is actually determined by the inputs.

mod number;
mod parse;
mod taylor;

pub use number::{AsymptoticNumber, Comparison, FieldError, Magnitude};
pub use parse::{parse_field_expr, EvalError, ParseError};
pub use taylor::{compose_analytic, TaylorModel};

/// Relative order used when inverting a multi-term element that carries no
/// truncation order of its own.
pub const DEFAULT_INVERSION_ORDER: i64 = 8;
