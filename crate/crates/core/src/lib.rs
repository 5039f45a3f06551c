//! Spectral analysis of structured matrix-sequences.
//!
//! The crate builds Toeplitz, circulant and tau-algebra matrices from their
//! generating functions, evaluates GLT symbols and GLT momentary symbols, and
//! compares both against spectra computed by dense reference solvers. Two
//! applications are covered in full:
//!
//! * [`spacetime`]: the all-at-once backward-Euler / periodic-FD matrix
//!   `A = (1/h_t) T(1 - e^{iθ}) ⊗ I + I ⊗ (1/h_x²) C(2 - 2cos ξ)`, with exact
//!   eigenvalues, exact singular values and tau-based two-norm bounds.
//! * [`fractional`]: distributed-order sums `Σ c_i h^{Δα(ℓ-i)} T_n(g_{α_i})`
//!   and the momentary asymptotic expansion (MAE) of their eigenvalues.
//!
//! [`numerics`] holds the dense kernels used as ground truth everywhere else.

pub mod distribution;
pub mod error;
pub mod fractional;
pub mod numerics;
pub mod spacetime;
pub mod structured;
pub mod symbols;
pub mod tau;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use numerics::DenseMatrix;
