//! Distributed-order fractional Toeplitz sums
//! `Σ_{i=1..ℓ} c_i h^{(ℓ-i)/ℓ} T_n(g_{α_i})` with `g_α(θ) = (2 - 2cos θ)^{α/2}`
//! and `α_i = 1 + (i - 1/2)/ℓ`, their momentary symbols and the momentary
//! asymptotic expansion (MAE) of their eigenvalues.

mod expansion;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;
use crate::structured::{FourierSymbol, Parity};
use crate::symbols::{momentary_evaluate, MomentarySymbol, ScalingSequence, SymbolTerm};

pub use expansion::{
    error_report, expansion_coefficients, expansion_coefficients_on, interior_range,
    interpolate_at, interpolate_expansion, mae_eigenvalues, ErrorReport, ErrorRow,
    ExpansionTable, MethodSummary,
};

fn check_order(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(alpha))
    }
}

/// `g_α(θ) = (2 - 2cos θ)^{α/2} = |2 sin(θ/2)|^α`.
pub fn fractional_value(alpha: f64, theta: f64) -> f64 {
    (2.0 * (0.5 * theta).sin()).abs().powf(alpha)
}

/// `g_α` as a symbol with closed-form coefficients; `α = 2` is the
/// trigonometric polynomial `2 - 2cos θ`.
pub fn fractional_symbol(alpha: f64) -> Result<FourierSymbol> {
    check_order(alpha)?;
    if alpha == 2.0 {
        return Ok(FourierSymbol::laplacian());
    }
    Ok(FourierSymbol::with_series(
        move |t| Complex64::new(fractional_value(alpha, t), 0.0),
        move |kmax| {
            let half = coefficient_list(alpha, kmax);
            (-(kmax as i64)..=kmax as i64)
                .map(|k| Complex64::new(half[k.unsigned_abs() as usize], 0.0))
                .collect()
        },
        Parity::REAL_EVEN,
    ))
}

/// `ĝ_0..ĝ_kmax` of `g_α`.
fn coefficient_list(alpha: f64, kmax: usize) -> Vec<f64> {
    let a2 = alpha / 2.0;
    let g1 = gamma(a2 + 1.0);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(gamma(alpha + 1.0) / (g1 * g1));
    for k in 0..kmax {
        let kf = k as f64;
        let next = out[k] * (kf - a2) / (kf + 1.0 + a2);
        out.push(next);
    }
    out
}

/// `ĝ_k = (-1)^k Γ(α+1) / (Γ(α/2-k+1) Γ(α/2+k+1))` for `|k| <= kmax`.
pub fn fractional_coefficients(alpha: f64, kmax: usize) -> Result<BTreeMap<i64, f64>> {
    check_order(alpha)?;
    let half = coefficient_list(alpha, kmax);
    Ok((-(kmax as i64)..=kmax as i64)
        .map(|k| (k, half[k.unsigned_abs() as usize]))
        .collect())
}

/// Number of orders `ℓ` and the positive weights `c_1..c_ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributedOrderSpec {
    ell: usize,
    coefficients: Vec<f64>,
}

impl DistributedOrderSpec {
    /// `ℓ` orders with unit weights.
    pub fn new(ell: usize) -> Result<Self> {
        Self::with_coefficients(vec![1.0; ell])
    }

    pub fn with_coefficients(coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidArgument("at least one order is needed".into()));
        }
        if let Some(c) = coefficients.iter().find(|c| !(**c > 0.0 && c.is_finite())) {
            return Err(Error::InvalidArgument(format!("weight {c} is not positive")));
        }
        Ok(Self {
            ell: coefficients.len(),
            coefficients,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `Δα = 1/ℓ`.
    pub fn step(&self) -> f64 {
        1.0 / self.ell as f64
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `α_i = 1 + (i - 1/2)/ℓ`, `i = 1..ℓ`.
    pub fn order(&self, i: usize) -> f64 {
        1.0 + (2 * i - 1) as f64 / (2 * self.ell) as f64
    }

    pub fn orders(&self) -> Vec<f64> {
        (1..=self.ell).map(|i| self.order(i)).collect()
    }

    /// `c_i`, 1-based.
    pub fn weight(&self, i: usize) -> f64 {
        self.coefficients[i - 1]
    }

    /// `h^{(ℓ-i)/ℓ + extra}` with `h = 1/n`, the exponent formed from integers.
    pub fn mesh_power(&self, i: usize, extra: usize, n: usize) -> f64 {
        let num = (self.ell - i) + extra * self.ell;
        (1.0 / n as f64).powf(num as f64 / self.ell as f64)
    }
}

/// Toeplitz coefficients `t_0..t_{n-1}` of the distributed sum at size `n`.
pub fn distributed_coefficients(spec: &DistributedOrderSpec, n: usize) -> Result<Vec<f64>> {
    let mut total = vec![0.0; n];
    for i in 1..=spec.ell {
        let w = spec.weight(i) * spec.mesh_power(i, 0, n);
        for (t, g) in total.iter_mut().zip(coefficient_list(spec.order(i), n - 1)) {
            *t += w * g;
        }
    }
    Ok(total)
}

/// `Σ_i c_i h^{(ℓ-i)/ℓ} T_n(g_{α_i})` with `h = 1/n`.
pub fn assemble_distributed(spec: &DistributedOrderSpec, n: usize) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("size {n} is below 2")));
    }
    let t = distributed_coefficients(spec, n)?;
    Ok(DenseMatrix::from_real_fn(n, n, |i, j| t[i.abs_diff(j)]))
}

/// Terms `(c_i h^{(ℓ-i)/ℓ}, g_{α_i})`, leading with `c_ℓ g_{α_ℓ}`.
pub fn distributed_momentary(spec: &DistributedOrderSpec) -> Result<MomentarySymbol> {
    let mut terms = Vec::with_capacity(spec.ell);
    for i in 1..=spec.ell {
        let ell = spec.ell;
        let c = spec.weight(i);
        let order = (ell - i) as f64 / ell as f64;
        let scaling = if i == ell {
            ScalingSequence::constant(format!("c_{i}"), c)
        } else {
            let s = spec.clone();
            ScalingSequence::new(format!("c_{i} h^({}/{ell})", ell - i), order, move |n| {
                c * s.mesh_power(i, 0, n)
            })
        };
        terms.push(SymbolTerm::univariate(scaling, fractional_symbol(spec.order(i))?));
    }
    MomentarySymbol::new(1, terms)
}

/// `θ_{j,n} = jπ/n`, `j = 1..n`.
pub fn eigen_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|j| j as f64 * PI / n as f64).collect()
}

/// The momentary symbol sampled on `θ_{j,n}`.
pub fn momentary_sampling(spec: &DistributedOrderSpec, n: usize) -> Result<Vec<f64>> {
    let sym = distributed_momentary(spec)?;
    eigen_grid(n)
        .into_iter()
        .map(|t| momentary_evaluate(&sym, n, &[t], None).map(|z| z.re))
        .collect()
}

/// `c_ℓ g_{α_ℓ}` sampled on `θ_{j,n}`.
pub fn glt_sampling(spec: &DistributedOrderSpec, n: usize) -> Vec<f64> {
    let (c, alpha) = (spec.weight(spec.ell), spec.order(spec.ell));
    eigen_grid(n)
        .into_iter()
        .map(|t| c * fractional_value(alpha, t))
        .collect()
}
