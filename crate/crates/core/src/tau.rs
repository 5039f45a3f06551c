//! Symmetric tridiagonal τ_{ε,φ} matrices and their exact eigenvalue grids.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;

/// Tridiagonal matrix with diagonal `a`, off-diagonals `b`, and corners
/// `a + εb` (top-left) and `a + φb` (bottom-right).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauSpec {
    pub a: f64,
    pub b: f64,
    pub eps: f64,
    pub phi: f64,
    pub n: usize,
}

impl TauSpec {
    pub fn new(a: f64, b: f64, eps: f64, phi: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("tau matrix needs n >= 1".into()));
        }
        Ok(Self { a, b, eps, phi, n })
    }

    /// `a + 2b cos θ`.
    pub fn symbol(&self, theta: f64) -> f64 {
        self.a + 2.0 * self.b * theta.cos()
    }
}

pub fn tau_matrix(s: &TauSpec) -> DenseMatrix {
    let n = s.n;
    let mut m = DenseMatrix::from_real_fn(n, n, |i, j| match i.abs_diff(j) {
        0 => s.a,
        1 => s.b,
        _ => 0.0,
    });
    m[(0, 0)] += Complex64::new(s.eps * s.b, 0.0);
    m[(n - 1, n - 1)] += Complex64::new(s.phi * s.b, 0.0);
    m
}

fn unit(x: f64) -> Option<i8> {
    [-1i8, 0, 1].into_iter().find(|&u| x == u as f64)
}

/// Exact eigenvalue grid `θ_{j,n}^{(ε,φ)}`, `j = 1..n`, ascending.
pub fn tau_grid(eps: f64, phi: f64, n: usize) -> Result<Vec<f64>> {
    let (e, p) = match (unit(eps), unit(phi)) {
        (Some(e), Some(p)) => (e, p),
        _ => return Err(Error::UnsupportedAlgebra { eps, phi }),
    };
    let nf = n as f64;
    let (shift, denom) = match (e, p) {
        (-1, -1) => (0.0, nf),
        (-1, 0) | (0, -1) => (0.0, nf + 0.5),
        (-1, 1) | (1, -1) => (0.5, nf),
        (0, 0) => (0.0, nf + 1.0),
        (0, 1) | (1, 0) => (0.5, nf + 0.5),
        _ => (1.0, nf),
    };
    Ok((1..=n)
        .map(|j| PI * ((j as f64 - shift) / denom))
        .collect())
}

/// `a + 2b cos θ_j` on the exact grid, in grid order.
pub fn tau_eigenvalues(s: &TauSpec) -> Result<Vec<f64>> {
    Ok(tau_grid(s.eps, s.phi, s.n)?
        .into_iter()
        .map(|t| s.symbol(t))
        .collect())
}

/// Orthonormal eigenvectors of the (0,0) algebra: column `j` has entries
/// `sqrt(2/(n+1)) sin(i θ_j)`.
pub fn sine_eigenvectors(n: usize) -> DenseMatrix {
    let scale = (2.0 / (n as f64 + 1.0)).sqrt();
    DenseMatrix::from_real_fn(n, n, |i, j| {
        scale * ((i + 1) as f64 * (j + 1) as f64 * PI / (n as f64 + 1.0)).sin()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Less,
    Equal,
}

/// One link `θ^{left} (< | =) θ^{right}` of the grid chain, checked per `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridLink {
    pub left: (i8, i8),
    pub right: (i8, i8),
    pub relation: Relation,
    /// `holds[j - 1]` for `j = 1..n`.
    pub holds: Vec<bool>,
}

impl GridLink {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }

    pub fn failing_indices(&self) -> Vec<usize> {
        (1..=self.holds.len()).filter(|&j| !self.holds[j - 1]).collect()
    }
}

/// Ordering of the top-index eigenvalues `g(θ_n)` induced by a strict link.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueLink {
    pub left: (i8, i8),
    pub right: (i8, i8),
    pub left_value: f64,
    pub right_value: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingReport {
    pub n: usize,
    pub grid_links: Vec<GridLink>,
    pub eigenvalue_links: Vec<EigenvalueLink>,
}

impl InterlacingReport {
    pub fn all_hold(&self) -> bool {
        self.grid_links.iter().all(GridLink::all_hold)
            && self.eigenvalue_links.iter().all(|l| l.holds)
    }
}

/// The chain
/// `(1,1) < (0,1) = (1,0) < (-1,1) = (1,-1) < (0,0) < (-1,0) = (0,-1) < (-1,-1)`.
pub const GRID_CHAIN: [((i8, i8), Relation, (i8, i8)); 8] = [
    ((1, 1), Relation::Less, (0, 1)),
    ((0, 1), Relation::Equal, (1, 0)),
    ((0, 1), Relation::Less, (-1, 1)),
    ((-1, 1), Relation::Equal, (1, -1)),
    ((-1, 1), Relation::Less, (0, 0)),
    ((0, 0), Relation::Less, (-1, 0)),
    ((-1, 0), Relation::Equal, (0, -1)),
    ((-1, 0), Relation::Less, (-1, -1)),
];

fn grid(pair: (i8, i8), n: usize) -> Vec<f64> {
    tau_grid(pair.0 as f64, pair.1 as f64, n).expect("tabulated pair")
}

/// Checks every link of the grid chain for `j = 1..n`, and for `b != 0` the
/// ordering it induces on `g(θ_n) = a + 2b cos θ_n` (increasing in θ when
/// `b < 0`, decreasing when `b > 0`).
pub fn tau_interlacing_check(a: f64, b: f64, n: usize) -> InterlacingReport {
    let g = |t: f64| a + 2.0 * b * t.cos();
    let mut grid_links = Vec::new();
    let mut eigenvalue_links = Vec::new();
    for &(left, relation, right) in GRID_CHAIN.iter() {
        let (l, r) = (grid(left, n), grid(right, n));
        let holds = l
            .iter()
            .zip(&r)
            .map(|(x, y)| match relation {
                Relation::Less => x < y,
                Relation::Equal => x == y,
            })
            .collect();
        grid_links.push(GridLink {
            left,
            right,
            relation,
            holds,
        });
        if relation == Relation::Less && b != 0.0 && n > 0 {
            let (lv, rv) = (g(l[n - 1]), g(r[n - 1]));
            eigenvalue_links.push(EigenvalueLink {
                left,
                right,
                left_value: lv,
                right_value: rv,
                holds: if b < 0.0 { lv < rv } else { lv > rv },
            });
        }
    }
    InterlacingReport {
        n,
        grid_links,
        eigenvalue_links,
    }
}
