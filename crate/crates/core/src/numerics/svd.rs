use num_complex::Complex64;

use super::{DenseMatrix, Tolerances};
use crate::error::{Error, Result};

/// Singular values, ascending, by one-sided Jacobi rotations on the columns.
pub fn singular_values(m: &DenseMatrix) -> Result<Vec<f64>> {
    singular_values_with(m, &Tolerances::default())
}

pub fn singular_values_with(m: &DenseMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    let work = if m.rows() < m.cols() { m.adjoint() } else { m.clone() };
    let (rows, cols) = (work.rows(), work.cols());
    let mut col: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| (0..rows).map(|i| work[(i, j)]).collect())
        .collect();
    let threshold = 4.0 * f64::EPSILON;

    let mut converged = false;
    for _ in 0..tol.jacobi_sweeps {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = col[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = col[q].iter().map(|z| z.norm_sqr()).sum();
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: Complex64 = col[p].iter().zip(&col[q]).map(|(a, b)| a.conj() * b).sum();
                let g = gamma.norm();
                if g <= threshold * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = col.split_at_mut(q);
                for (a, b) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let bq = *b * phase.conj();
                    let new_a = *a * c - bq * s;
                    let new_b = *a * s + bq * c;
                    *a = new_a;
                    *b = new_b * phase;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            routine: "Jacobi SVD",
            iterations: tol.jacobi_sweeps,
        });
    }
    let mut sv: Vec<f64> = col
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(f64::total_cmp);
    Ok(sv)
}
