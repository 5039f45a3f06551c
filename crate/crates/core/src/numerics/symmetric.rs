use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{DenseMatrix, Tolerances};
use crate::error::{Error, Result};

/// Eigenpairs of a Hermitian matrix; column `j` of `vectors` belongs to `values[j]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Result<Vec<f64>> {
    symmetric_eigenvalues_with(m, &Tolerances::default())
}

pub fn symmetric_eigenvalues_with(m: &DenseMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    Ok(solve(m, tol, false)?.0)
}

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix.
pub fn symmetric_eigen(m: &DenseMatrix) -> Result<SymmetricEigen> {
    symmetric_eigen_with(m, &Tolerances::default())
}

pub fn symmetric_eigen_with(m: &DenseMatrix, tol: &Tolerances) -> Result<SymmetricEigen> {
    let (values, vectors) = solve(m, tol, true)?;
    Ok(SymmetricEigen {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

/// Eigenvalues of the real symmetric tridiagonal matrix with diagonal `diag`
/// and off-diagonal `off` (`off.len() + 1 == diag.len()`), ascending.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return Err(Error::LengthMismatch {
            left: diag.len(),
            right: off.len() + 1,
        });
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    tql2(&mut d, &mut e, None, Tolerances::default().ql_iterations)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

fn solve(
    m: &DenseMatrix,
    tol: &Tolerances,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<DenseMatrix>)> {
    let deviation = m.hermitian_deviation();
    let allowed = tol.hermitian * m.max_abs();
    if !(deviation <= allowed) {
        return Err(Error::NotHermitian { deviation, allowed });
    }
    let n = m.rows();
    if m.is_real() {
        let a: Vec<f64> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                0.5 * (m[(i, j)].re + m[(j, i)].re)
            })
            .collect();
        reduce_and_solve(a, n, tol, want_vectors)
    } else {
        let a: Vec<Complex64> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                0.5 * (m[(i, j)] + m[(j, i)].conj())
            })
            .collect();
        reduce_and_solve(a, n, tol, want_vectors)
    }
}

trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn conj(self) -> Self;
    fn abs(self) -> f64;
    fn re(self) -> f64;
    fn norm_sqr(self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn to_complex(self) -> Complex64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn conj(self) -> Self {
        self
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn re(self) -> f64 {
        self
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn abs(self) -> f64 {
        self.norm()
    }
    fn re(self) -> f64 {
        self.re
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// Householder reduction to a real tridiagonal matrix, then implicit QL.
fn reduce_and_solve<S: Scalar>(
    mut a: Vec<S>,
    n: usize,
    tol: &Tolerances,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<DenseMatrix>)> {
    let mut q: Option<Vec<S>> = want_vectors.then(|| {
        let mut id = vec![S::zero(); n * n];
        for i in 0..n {
            id[i * n + i] = S::one();
        }
        id
    });
    let mut diag = vec![0.0; n];
    let mut sub = vec![S::zero(); n];
    let mut v = vec![S::zero(); n];
    let mut p = vec![S::zero(); n];

    for k in 0..n.saturating_sub(1) {
        diag[k] = a[k * n + k].re();
        let lo = k + 1;
        let x0 = a[lo * n + k];
        let tail: f64 = (lo + 1..n).map(|i| a[i * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            sub[k] = x0;
            continue;
        }
        let alpha = (tail + x0.norm_sqr()).sqrt();
        let phase = if x0.abs() == 0.0 {
            S::one()
        } else {
            x0.scale(1.0 / x0.abs())
        };
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] = v[lo] + phase.scale(alpha);
        let vnorm: f64 = (lo..n).map(|i| v[i].norm_sqr()).sum();
        let beta = 2.0 / vnorm;

        // p = beta * B v on the trailing block
        for i in lo..n {
            let mut acc = S::zero();
            let row = &a[i * n..(i + 1) * n];
            for j in lo..n {
                acc = acc + row[j] * v[j];
            }
            p[i] = acc.scale(beta);
        }
        let mut vp = S::zero();
        for i in lo..n {
            vp = vp + v[i].conj() * p[i];
        }
        let kk = vp.scale(beta * 0.5);
        for i in lo..n {
            p[i] = p[i] - kk * v[i];
        }
        for i in lo..n {
            let (vi, qi) = (v[i], p[i]);
            let row = &mut a[i * n..(i + 1) * n];
            for j in lo..n {
                row[j] = row[j] - vi * p[j].conj() - qi * v[j].conj();
            }
        }
        sub[k] = -(phase.scale(alpha));

        if let Some(q) = q.as_mut() {
            for r in 0..n {
                let row = &mut q[r * n..(r + 1) * n];
                let mut acc = S::zero();
                for j in lo..n {
                    acc = acc + row[j] * v[j];
                }
                let acc = acc.scale(beta);
                for j in lo..n {
                    row[j] = row[j] - acc * v[j].conj();
                }
            }
        }
    }
    diag[n - 1] = a[(n - 1) * n + n - 1].re();

    // Unitary diagonal scaling that makes the off-diagonal real and nonnegative.
    let mut dph = vec![S::one(); n];
    let mut e = vec![0.0; n];
    for k in 0..n.saturating_sub(1) {
        let mag = sub[k].abs();
        e[k] = mag;
        dph[k + 1] = if mag == 0.0 {
            dph[k]
        } else {
            dph[k] * sub[k].scale(1.0 / mag)
        };
    }

    let mut z = want_vectors.then(|| {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    });
    tql2(&mut diag, &mut e, z.as_mut(), tol.ql_iterations)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();

    let vectors = match (q, z) {
        (Some(q), Some(z)) => {
            let w: Vec<Complex64> = (0..n * n)
                .map(|idx| (q[idx] * dph[idx % n]).to_complex())
                .collect();
            Some(DenseMatrix::from_fn(n, n, |r, c| {
                let col = order[c];
                (0..n).map(|k| w[r * n + k] * z[k * n + col]).sum()
            }))
        }
        _ => None,
    };
    Ok((values, vectors))
}

/// Implicit QL on a symmetric tridiagonal matrix. `e[i]` couples `i` and
/// `i + 1`; `e[n - 1]` must be zero. Rotations are accumulated into `z`
/// (row-major, `n × n`) when given.
fn tql2(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Vec<f64>>, cap: usize) -> Result<()> {
    let n = d.len();
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > cap {
                    return Err(Error::NoConvergence {
                        routine: "symmetric QL",
                        iterations: cap,
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = z.as_deref_mut() {
                        for k in 0..n {
                            let zi = z[k * n + i];
                            let zi1 = z[k * n + i + 1];
                            z[k * n + i + 1] = s * zi + c * zi1;
                            z[k * n + i] = c * zi - s * zi1;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
