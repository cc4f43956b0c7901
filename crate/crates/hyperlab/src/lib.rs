//! Infinitesimal arithmetic and uniform-convergence diagnostics.
//!
//! The crate has three layers:
//!
//! * [`field`] — exact arithmetic on truncated asymptotic series in one
//!   infinitesimal generator, with Taylor-model composition of the
//!   elementary functions (over exact rationals or arbitrary-precision
//!   floats, see [`scalar`]);
//! * [`seq`] — a computable fragment of the sequence-ring construction
//!   of the hyperreals: window-checked eventual properties, index
//!   comparison, and a diagonal overspill witness;
//! * [`lab`] / [`families`] / [`studies`] — two equivalent
//!   uniform-convergence tests (the epsilon-quantifier test and the
//!   infinitesimal-probe test), a catalog of classical families, and
//!   scripted case studies around Cauchy's 1853 sum theorem and the
//!   sine-integral remainder `0.6247132...`.
//!
//! The `hyperlab` binary exposes the same functionality as `field eval`,
//! `check` and `cases` subcommands; see `examples/` for library usage.

pub mod cli;
pub mod expr;
pub mod families;
pub mod field;
pub mod lab;
pub mod numeric;
pub mod scalar;
pub mod seq;
pub mod studies;
