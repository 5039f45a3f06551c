//! Dense linear algebra used as ground truth by the rest of the crate.

mod general;
mod matrix;
mod svd;
mod symmetric;
mod vandermonde;

pub use general::{general_eigenvalues, general_eigenvalues_with};
pub use matrix::DenseMatrix;
pub use svd::{singular_values, singular_values_with};
pub use symmetric::{
    symmetric_eigen, symmetric_eigen_with, symmetric_eigenvalues, symmetric_eigenvalues_with,
    tridiagonal_eigenvalues, SymmetricEigen,
};
pub use vandermonde::solve_vandermonde;

/// Fixed tolerances and iteration caps of the dense kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed `max|A - A*|` relative to `max|A|` before a matrix counts as Hermitian.
    pub hermitian: f64,
    /// QL sweeps per eigenvalue in the symmetric solver.
    pub ql_iterations: usize,
    /// QR iterations per eigenvalue in the general solver.
    pub qr_iterations: usize,
    /// Full sweeps of the one-sided Jacobi SVD.
    pub jacobi_sweeps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            ql_iterations: 60,
            qr_iterations: 30,
            jacobi_sweeps: 80,
        }
    }
}
