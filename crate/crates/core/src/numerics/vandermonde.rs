use crate::error::{Error, Result};

/// Solves `rhs[k] = Σ_{t=1..ν} c_t · nodes[k]^t` for `c_1..c_ν`.
///
/// Dividing each equation by its node turns the system into polynomial
/// interpolation, solved with Newton divided differences followed by the
/// conversion to monomial coefficients.
pub fn solve_vandermonde(nodes: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = nodes.len();
    if n != rhs.len() {
        return Err(Error::LengthMismatch {
            left: n,
            right: rhs.len(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("empty Vandermonde system".into()));
    }
    for (i, &x) in nodes.iter().enumerate() {
        if x == 0.0 || !x.is_finite() {
            return Err(Error::SingularSystem(format!("node {i} is {x}")));
        }
        for (j, &y) in nodes.iter().enumerate().take(i) {
            if x == y {
                return Err(Error::SingularSystem(format!("nodes {j} and {i} coincide")));
            }
        }
    }
    let mut a: Vec<f64> = nodes.iter().zip(rhs).map(|(x, b)| b / x).collect();
    for k in 0..n - 1 {
        for i in (k + 1..n).rev() {
            a[i] = (a[i] - a[i - 1]) / (nodes[i] - nodes[i - k - 1]);
        }
    }
    for k in (0..n.saturating_sub(1)).rev() {
        for i in k..n - 1 {
            a[i] -= nodes[k] * a[i + 1];
        }
    }
    Ok(a)
}
