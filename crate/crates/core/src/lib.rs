//! Exact Wigner-Racah algebra for `SU(2)` and `SU(2) ⊃ G*` chains.
//!
//! The crate is organized in layers:
//!
//! * [`exactnum`] — arithmetic over ℚ extended by square roots of rationals,
//!   plus half-integer quantum numbers.  Everything that can be exact is.
//! * [`wigner`] — Clebsch-Gordan, 1-jm, 3-jm, 6-j and 9-j symbols in exact
//!   arithmetic, memoized.
//! * [`groupdata`] — point-group character data: Kronecker and branching
//!   multiplicities, Frobenius-Schur coefficients, quasi angular momenta.
//! * [`chain`] — symmetry adaptation of `SU(2)` to a point subgroup:
//!   reduction tables, adapted coupling coefficients, f and f̄ symbols,
//!   finite-group V symbols obtained as renormalized f̄, and the
//!   factorization of f̄ into reduced coefficients times V symbols.
//! * [`crystalfield`] — weak-field energy matrices for `ℓ^N` ions (N ≤ 2):
//!   Coulomb, spin-orbit and crystal-field blocks, the generalized
//!   effective-Hamiltonian parameter sets, and parameter conversions.
//! * [`mub`] — cyclic-chain bases as mutually unbiased bases: the v_ra
//!   operator, Weyl pairs, generalized Pauli matrices, Gauss sums and the
//!   Cartan partition of sl(p, ℂ).

pub mod chain;
pub mod crystalfield;
pub mod exactnum;
pub mod groupdata;
pub mod mub;
pub mod wigner;

mod error;

pub use error::RacahError;
pub use exactnum::{ExactComplex, HalfInt, SqrtRationalSum};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, RacahError>;
