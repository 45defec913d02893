//! Exact arithmetic over ℚ extended by square roots of rationals, plus
//! half-integer quantum numbers.
//!
//! Coupling-coefficient identities (orthogonality, selection rules) are
//! tested by exact equality on [`SqrtRationalSum`] values, never by floating
//! tolerance.

mod complex;
pub(crate) mod half;
mod sqrt;

pub use complex::ExactComplex;
pub use half::HalfInt;
pub use sqrt::{canonicalize, SqrtRationalSum};
