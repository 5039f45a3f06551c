//! All-at-once backward Euler in time with second-order differences in space:
//! `A = (1/h_t) T_{N_t}(1 - e^{iθ}) ⊗ I + I ⊗ (1/h_x²) S_{N_x}`, where `S` is
//! the circulant `C(2 - 2cos ξ)` (periodic) or the Toeplitz `T(2 - 2cos ξ)`
//! (Dirichlet).

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{tridiagonal_eigenvalues, DenseMatrix};
use crate::structured::{circulant, toeplitz, FourierSymbol, MultiIndexSymbol};
use crate::symbols::{momentary_evaluate, MomentarySymbol, ScalingSequence, SymbolTerm};
use crate::tau::{tau_eigenvalues, TauSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryCondition {
    #[default]
    Periodic,
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeSystem {
    pub nt: usize,
    pub nx: usize,
    pub ht: f64,
    pub hx: f64,
    /// `h_x² / h_t`.
    pub ch: f64,
    pub bc: BoundaryCondition,
}

fn check_counts(nt: usize, nx: usize) -> Result<()> {
    if nt == 0 || nx == 0 {
        return Err(Error::InvalidArgument(format!(
            "N_t = {nt} and N_x = {nx} must both be positive"
        )));
    }
    Ok(())
}

impl SpaceTimeSystem {
    pub fn new(nt: usize, nx: usize, ht: f64, hx: f64) -> Result<Self> {
        check_counts(nt, nx)?;
        if !(ht > 0.0 && hx > 0.0 && ht.is_finite() && hx.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "step sizes h_t = {ht}, h_x = {hx} must be positive"
            )));
        }
        Ok(Self {
            nt,
            nx,
            ht,
            hx,
            ch: hx * hx / ht,
            bc: BoundaryCondition::Periodic,
        })
    }

    /// Unit space interval (`h_x = 1/N_x`) and `h_t = h_x² / c_h`.
    pub fn with_ratio(nt: usize, nx: usize, ch: f64) -> Result<Self> {
        check_counts(nt, nx)?;
        if !(ch > 0.0 && ch.is_finite()) {
            return Err(Error::InvalidArgument(format!("c_h = {ch} must be positive")));
        }
        let hx = 1.0 / nx as f64;
        Ok(Self {
            nt,
            nx,
            ht: hx * hx / ch,
            hx,
            ch,
            bc: BoundaryCondition::Periodic,
        })
    }

    pub fn with_boundary(mut self, bc: BoundaryCondition) -> Self {
        self.bc = bc;
        self
    }

    pub fn size(&self) -> usize {
        self.nt * self.nx
    }

    /// Spatial frequencies: `2π(k-1)/N_x` (periodic) or `kπ/(N_x+1)` (Dirichlet).
    pub fn space_grid(&self) -> Vec<f64> {
        match self.bc {
            BoundaryCondition::Periodic => (0..self.nx)
                .map(|k| 2.0 * PI * k as f64 / self.nx as f64)
                .collect(),
            BoundaryCondition::Dirichlet => (1..=self.nx)
                .map(|k| k as f64 * PI / (self.nx as f64 + 1.0))
                .collect(),
        }
    }

    /// Eigenvalues of the unscaled spatial matrix `S`, in grid order.
    pub fn space_eigenvalues(&self) -> Vec<f64> {
        self.space_grid().into_iter().map(laplacian).collect()
    }

    /// `θ_j = jπ/(N_t+1)`, `j = 1..N_t`.
    pub fn time_grid(&self) -> Vec<f64> {
        (1..=self.nt)
            .map(|j| j as f64 * PI / (self.nt as f64 + 1.0))
            .collect()
    }

    fn space_matrix(&self) -> DenseMatrix {
        let q = FourierSymbol::laplacian();
        match self.bc {
            BoundaryCondition::Periodic => circulant(&q, self.nx),
            BoundaryCondition::Dirichlet => toeplitz(&q, self.nx),
        }
        .expect("polynomial symbol")
    }
}

fn laplacian(t: f64) -> f64 {
    2.0 - 2.0 * t.cos()
}

fn time_matrix(nt: usize) -> DenseMatrix {
    toeplitz(&FourierSymbol::backward_difference(), nt).expect("polynomial symbol")
}

/// The matrix `A`.
pub fn assemble_spacetime(s: &SpaceTimeSystem) -> DenseMatrix {
    let time = time_matrix(s.nt).kron(&DenseMatrix::identity(s.nx));
    let space = DenseMatrix::identity(s.nt).kron(&s.space_matrix());
    &time.scaled_real(1.0 / s.ht) + &space.scaled_real(1.0 / (s.hx * s.hx))
}

/// `h_x² A = c_h T(1 - e^{iθ}) ⊗ I + I ⊗ S`, assembled without rescaling.
pub fn assemble_scaled_spacetime(s: &SpaceTimeSystem) -> DenseMatrix {
    let time = time_matrix(s.nt).kron(&DenseMatrix::identity(s.nx));
    let space = DenseMatrix::identity(s.nt).kron(&s.space_matrix());
    &time.scaled_real(s.ch) + &space
}

/// Eigenvalues of `A`: `1/h_t + λ_k(S)/h_x²`, each `N_t` times, ascending.
pub fn exact_eigenvalues(s: &SpaceTimeSystem) -> Vec<f64> {
    let shift = 1.0 / s.ht;
    let scale = 1.0 / (s.hx * s.hx);
    repeat_sorted(s.space_eigenvalues().into_iter().map(|l| shift + l * scale), s.nt)
}

/// Eigenvalues of `h_x² A`: `c_h + λ_k(S)`, each `N_t` times, ascending.
pub fn exact_scaled_eigenvalues(s: &SpaceTimeSystem) -> Vec<f64> {
    repeat_sorted(s.space_eigenvalues().into_iter().map(|l| s.ch + l), s.nt)
}

fn repeat_sorted(values: impl Iterator<Item = f64>, times: usize) -> Vec<f64> {
    let mut out: Vec<f64> = values
        .flat_map(|v| std::iter::repeat_n(v, times))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// `ρ(h_x² A)`; exactly `4 + c_h` for periodic conditions and even `N_x`.
pub fn scaled_spectral_radius(s: &SpaceTimeSystem) -> f64 {
    if s.bc == BoundaryCondition::Periodic && s.nx.is_multiple_of(2) {
        return 4.0 + s.ch;
    }
    s.ch + s.space_eigenvalues().into_iter().fold(f64::MIN, f64::max)
}

/// Diagonal and off-diagonal of the `N_t × N_t` block of the permuted
/// `h_x⁴ A Aᵀ` at frequency value `C = λ_k(S) + c_h`.
pub fn frequency_block(c: f64, ch: f64, nt: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![c * c + ch * ch; nt];
    diag[0] = c * c;
    (diag, vec![-ch * c; nt - 1])
}

/// Singular values of `h_x² A` from the per-frequency blocks, ascending.
pub fn exact_singular_values(s: &SpaceTimeSystem) -> Result<Vec<f64>> {
    let blocks: Vec<Vec<f64>> = s
        .space_eigenvalues()
        .par_iter()
        .map(|&l| {
            let (d, e) = frequency_block(l + s.ch, s.ch, s.nt);
            tridiagonal_eigenvalues(&d, &e)
                .map(|ev| ev.into_iter().map(|x| x.max(0.0).sqrt()).collect())
        })
        .collect::<Result<_>>()?;
    let mut out: Vec<f64> = blocks.into_iter().flatten().collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Closed-form pair `(σ_-, σ_+)` of frequency `k` (0-based) when `N_t = 2`.
pub fn nt2_singular_values(k: usize, s: &SpaceTimeSystem) -> Result<(f64, f64)> {
    if s.nt != 2 {
        return Err(Error::WrongNt(s.nt));
    }
    let lambda = *s.space_eigenvalues().get(k).ok_or_else(|| {
        Error::InvalidArgument(format!("frequency index {k} out of range for N_x = {}", s.nx))
    })?;
    let c = lambda + s.ch;
    let ch = s.ch;
    let plus = ((2.0 * c * c + ch * ch) / 2.0 + 0.5 * ch * (4.0 * c * c + ch * ch).sqrt()).sqrt();
    // σ_- σ_+ = C²
    Ok((c * c / plus, plus))
}

/// GLT momentary symbols of the three mesh regimes in the variables `(θ, ξ)`:
/// 1 for `h_t A` with `h_t/h_x² → 0`, 2 for `h_x² A` with `c_h → 0`,
/// 3 for `h_x² A` with `c_h` fixed.
pub fn case_symbols(s: &SpaceTimeSystem, case: u8) -> Result<MomentarySymbol> {
    let time = || {
        MultiIndexSymbol::Separable(vec![
            FourierSymbol::backward_difference(),
            FourierSymbol::constant(1.0),
        ])
    };
    let space = || {
        MultiIndexSymbol::Separable(vec![FourierSymbol::constant(1.0), FourierSymbol::laplacian()])
    };
    let terms = match case {
        1 => vec![
            SymbolTerm::new(ScalingSequence::one(), time()),
            SymbolTerm::new(ScalingSequence::tagged("1/c_h", 1.0 / s.ch, 1.0), space()),
        ],
        2 => vec![
            SymbolTerm::new(ScalingSequence::one(), space()),
            SymbolTerm::new(ScalingSequence::tagged("c_h", s.ch, 1.0), time()),
        ],
        3 => vec![
            SymbolTerm::new(ScalingSequence::constant("c_h", s.ch), time()),
            SymbolTerm::new(ScalingSequence::one(), space()),
        ],
        other => return Err(Error::InvalidCase(other)),
    };
    MomentarySymbol::new(2, terms)
}

/// Eigenvalue symbol of `{h_t A}` in case 1, the constant 1; the other
/// cases have none beyond their singular value symbol.
pub fn case_eigenvalue_symbol(case: u8) -> Result<Option<f64>> {
    match case {
        1 => Ok(Some(1.0)),
        2 | 3 => Ok(None),
        other => Err(Error::InvalidCase(other)),
    }
}

/// `|c_h(1 - e^{iθ}) + (2 - 2cos ξ)|` over the time and space grids, ascending.
pub fn momentary_singular_approx(s: &SpaceTimeSystem) -> Vec<f64> {
    let sym = case_symbols(s, 2).expect("case 2 exists");
    let space = s.space_grid();
    let mut out: Vec<f64> = s
        .time_grid()
        .iter()
        .flat_map(|&t| space.iter().map(move |&x| (t, x)))
        .map(|(t, x)| {
            momentary_evaluate(&sym, s.nt, &[t, x], None)
                .expect("two angles, no x")
                .norm()
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// `2 - 2cos ξ` over the space grid, each value `N_t` times, ascending.
pub fn glt_singular_approx(s: &SpaceTimeSystem) -> Vec<f64> {
    repeat_sorted(s.space_eigenvalues().into_iter(), s.nt)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBounds {
    pub lower: f64,
    pub upper: f64,
    /// `4 + 2c_h`, the bound at `θ = π`.
    pub max_bound: f64,
}

/// The frequency block at `C = 4 + c_h` as a τ matrix, followed by its two
/// neighbouring algebras `(1, 0)` and `(0, 0)`.
pub fn bounding_tau_specs(s: &SpaceTimeSystem) -> Result<[TauSpec; 3]> {
    let c = 4.0 + s.ch;
    let a = c * c + s.ch * s.ch;
    let b = -s.ch * c;
    Ok([
        TauSpec::new(a, b, s.ch / c, 0.0, s.nt)?,
        TauSpec::new(a, b, 1.0, 0.0, s.nt)?,
        TauSpec::new(a, b, 0.0, 0.0, s.nt)?,
    ])
}

/// Lower and upper bounds on `‖h_x² A‖₂` from the largest eigenvalues of the
/// neighbouring τ matrices.
pub fn two_norm_bounds(s: &SpaceTimeSystem) -> Result<NormBounds> {
    if s.bc != BoundaryCondition::Periodic {
        return Err(Error::InvalidArgument(
            "two-norm bounds need periodic conditions".into(),
        ));
    }
    if !s.nx.is_multiple_of(2) {
        return Err(Error::OddNx(s.nx));
    }
    let [_, low, high] = bounding_tau_specs(s)?;
    let top = |spec: &TauSpec| -> Result<f64> {
        Ok(tau_eigenvalues(spec)?.into_iter().fold(f64::MIN, f64::max).sqrt())
    };
    Ok(NormBounds {
        lower: top(&low)?,
        upper: top(&high)?,
        max_bound: 4.0 + 2.0 * s.ch,
    })
}

/// `‖h_x² A‖₂` as the largest exact singular value.
pub fn two_norm(s: &SpaceTimeSystem) -> Result<f64> {
    Ok(*exact_singular_values(s)?.last().expect("nonempty"))
}

/// `|1 - e^{iθ}|`, the modulus of the time symbol.
pub fn time_symbol_modulus(theta: f64) -> f64 {
    (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, theta)).norm()
}
