//! CSV reports behind the `momentary` command-line tool.
//!
//! Every `cmd_*` function is a pure function of its [`RunConfig`] and returns a
//! [`Table`]; identical configurations give byte-identical CSV.

use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use momentary::fractional::{error_report, DistributedOrderSpec};
use momentary::numerics::{general_eigenvalues, singular_values, symmetric_eigenvalues};
use momentary::spacetime::{
    assemble_scaled_spacetime, exact_singular_values, glt_singular_approx,
    momentary_singular_approx, two_norm, two_norm_bounds, BoundaryCondition, SpaceTimeSystem,
};
use momentary::symbols::{
    assemble_dca, dca_momentary, glt_limit, momentary_evaluate, perturbed_shift,
    unperturbed_shift, DcaProblem, MomentarySymbol,
};
use momentary::tau::{tau_eigenvalues, tau_grid, tau_matrix, TauSpec};
use momentary::Complex64;

/// Largest `N_t · N_x` for which the norm table uses a dense SVD.
pub const DENSE_NORM_LIMIT: usize = 200;

/// Number of orders in the distributed sum: fixed, or tied to the size (`ℓ = n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ell {
    Fixed(usize),
    Coupled,
}

impl Ell {
    pub fn resolve(self, n: usize) -> usize {
        match self {
            Ell::Fixed(l) => l,
            Ell::Coupled => n,
        }
    }
}

impl FromStr for Ell {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "n" {
            return Ok(Ell::Coupled);
        }
        match s.parse::<usize>() {
            Ok(l) if l >= 1 => Ok(Ell::Fixed(l)),
            _ => Err(format!("expected a positive count or `n`, got `{s}`")),
        }
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ell::Fixed(l) => write!(f, "{l}"),
            Ell::Coupled => write!(f, "n"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub nt: Vec<usize>,
    pub nx: usize,
    pub ch: Vec<f64>,
    pub ell: Ell,
    pub nu: usize,
    pub n1: usize,
    pub n: usize,
    pub alpha: f64,
    pub bc: BoundaryCondition,
    /// Diagonal of a τ matrix, or the diffusion coefficient.
    pub a: f64,
    /// Off-diagonal of a τ matrix, or the convection coefficient.
    pub b: f64,
    /// Reaction coefficient.
    pub c: f64,
    pub eps: f64,
    pub phi: f64,
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            nt: vec![1, 10, 100, 1000],
            nx: 8,
            ch: vec![0.125, 1.0, 8.0],
            ell: Ell::Fixed(2),
            nu: 4,
            n1: 10,
            n: 100,
            alpha: 1.0,
            bc: BoundaryCondition::Periodic,
            a: 2.0,
            b: -1.0,
            c: 1.0,
            eps: 0.0,
            phi: 0.0,
            tol: 1e-10,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        ensure!(!self.nt.is_empty(), "--nt needs at least one value");
        ensure!(!self.ch.is_empty(), "--ch needs at least one value");
        ensure!(self.nt.iter().all(|&v| v >= 1), "--nt values must be at least 1");
        ensure!(self.nx >= 1 && self.n >= 1 && self.nu >= 1, "counts must be at least 1");
        ensure!(self.n1 >= 5, "--n1 must be at least 5");
        for &ch in &self.ch {
            ensure!(ch > 0.0 && ch.is_finite(), "--ch must be positive, got {ch}");
        }
        ensure!(self.alpha > 0.0 && self.alpha.is_finite(), "--alpha must be positive");
        ensure!(self.tol > 0.0, "--tol must be positive");
        Ok(())
    }
}

/// Header plus rows of preformatted cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// Writes the CSV to `path`, or to standard output.
    pub fn emit(&self, path: Option<&Path>) -> Result<()> {
        let text = self.to_csv()?;
        match path {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k].as_str()).collect())
    }
}

/// Fixed 8-decimal cell, with negative zero printed as zero.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.8}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// Scientific cell with 15 significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.14e}")
}

fn system(nt: usize, nx: usize, ch: f64, bc: BoundaryCondition) -> Result<SpaceTimeSystem> {
    Ok(SpaceTimeSystem::with_ratio(nt, nx, ch)?.with_boundary(bc))
}

/// `‖h_x² A‖₂` with its τ bounds over the `nt × ch` grid.
pub fn cmd_spacetime_norms(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let mut t = Table::new(&["N_t", "c_h", "lower", "norm2", "upper", "max_bound"]);
    for &nt in &cfg.nt {
        for &ch in &cfg.ch {
            let s = system(nt, cfg.nx, ch, cfg.bc)?;
            let bounds = two_norm_bounds(&s)?;
            let norm = if s.size() <= DENSE_NORM_LIMIT {
                *singular_values(&assemble_scaled_spacetime(&s))?
                    .last()
                    .expect("nonempty")
            } else {
                two_norm(&s)?
            };
            t.rows.push(vec![
                nt.to_string(),
                fixed(ch),
                fixed(bounds.lower),
                fixed(norm),
                fixed(bounds.upper),
                fixed(bounds.max_bound),
            ]);
        }
    }
    Ok(t)
}

/// Exact singular values of `h_x² A` next to the momentary and GLT samplings.
pub fn cmd_spacetime_singvals(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let s = system(cfg.nt[0], cfg.nx, cfg.ch[0], cfg.bc)?;
    let exact = exact_singular_values(&s)?;
    let mom = momentary_singular_approx(&s);
    let glt = glt_singular_approx(&s);
    let mut t = Table::new(&[
        "index",
        "exact",
        "momentary",
        "glt",
        "momentary_error",
        "glt_error",
    ]);
    for (j, ((e, m), g)) in exact.iter().zip(&mom).zip(&glt).enumerate() {
        t.rows.push(vec![
            (j + 1).to_string(),
            fixed(*e),
            fixed(*m),
            fixed(*g),
            sci((m - e).abs()),
            sci((g - e).abs()),
        ]);
    }
    Ok(t)
}

/// Exact eigenvalues of the distributed-order sum against the GLT, momentary
/// and MAE approximations.
pub fn cmd_fractional_mae(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let spec = DistributedOrderSpec::new(cfg.ell.resolve(cfg.n))?;
    let report = error_report(&spec, cfg.n, cfg.nu, cfg.n1)?;
    let mut t = Table::new(&[
        "index",
        "theta",
        "exact",
        "glt",
        "momentary",
        "mae",
        "glt_error",
        "momentary_error",
        "mae_error",
    ]);
    for r in &report.rows {
        t.rows.push(vec![
            r.index.to_string(),
            fixed(r.index as f64 * PI / cfg.n as f64),
            fixed(r.exact),
            fixed(r.glt),
            fixed(r.momentary),
            fixed(r.mae),
            sci(r.glt_error()),
            sci(r.momentary_error()),
            sci(r.mae_error()),
        ]);
    }
    Ok(t)
}

/// Tabulated τ grid and sampled eigenvalues against the dense solver. Fails
/// when the largest discrepancy exceeds the tolerance.
pub fn cmd_tau_bounds(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let spec = TauSpec::new(cfg.a, cfg.b, cfg.eps, cfg.phi, cfg.n)?;
    let grid = tau_grid(cfg.eps, cfg.phi, cfg.n)?;
    let sampled = tau_eigenvalues(&spec)?;
    let dense = symmetric_eigenvalues(&tau_matrix(&spec))?;
    let mut order: Vec<usize> = (0..cfg.n).collect();
    order.sort_by(|&i, &j| sampled[i].total_cmp(&sampled[j]));
    let mut t = Table::new(&["j", "theta", "sampled", "dense", "abs_error"]);
    let mut worst: f64 = 0.0;
    for (rank, &j) in order.iter().enumerate() {
        let err = (sampled[j] - dense[rank]).abs();
        worst = worst.max(err);
        t.rows.push(vec![
            (j + 1).to_string(),
            fixed(grid[j]),
            fixed(sampled[j]),
            fixed(dense[rank]),
            sci(err),
        ]);
    }
    if worst > cfg.tol {
        bail!("sampled and dense spectra differ by {worst:e}, above --tol {:e}", cfg.tol);
    }
    Ok(t)
}

fn real_samples(sym: &MomentarySymbol, n: usize) -> Result<Vec<f64>> {
    let mut v = (1..=n)
        .map(|j| {
            let theta = j as f64 * PI / (n as f64 + 1.0);
            Ok(momentary_evaluate(sym, n, &[theta], Some(0.5))?.re)
        })
        .collect::<Result<Vec<f64>>>()?;
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Spectrum of the constant-coefficient diffusion-convection-reaction matrix
/// against its momentary and GLT samplings on `jπ/(n+1)`.
pub fn cmd_dca(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    ensure!(cfg.a > 0.0, "diffusion coefficient --a must be positive");
    let (a, b, c) = (cfg.a, cfg.b, cfg.c);
    let p = DcaProblem::diffusion(move |_| a)
        .with_convection(move |_| b)
        .with_reaction(move |_| c);
    let (x, _) = assemble_dca(&p, cfg.n);
    let mut eig: Vec<f64> = general_eigenvalues(&x)?.iter().map(|z| z.re).collect();
    eig.sort_by(f64::total_cmp);
    let mom_sym = dca_momentary(&p);
    let mom = real_samples(&mom_sym, cfg.n)?;
    let glt = real_samples(&glt_limit(&mom_sym), cfg.n)?;
    let mut t = Table::new(&[
        "index",
        "eigenvalue",
        "momentary",
        "glt",
        "momentary_error",
        "glt_error",
    ]);
    for (j, ((e, m), g)) in eig.iter().zip(&mom).zip(&glt).enumerate() {
        t.rows.push(vec![
            (j + 1).to_string(),
            fixed(*e),
            fixed(*m),
            fixed(*g),
            sci((m - e).abs()),
            sci((g - e).abs()),
        ]);
    }
    Ok(t)
}

fn sorted_by_angle(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.arg().total_cmp(&b.arg()).then(a.norm().total_cmp(&b.norm())));
    v
}

/// Eigenvalues of the nilpotent shift, of the shift with corner weight
/// `n^{-α}`, and of its diagonally weighted variant with `a(x) = 1 + x`.
pub fn cmd_demos(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let n = cfg.n;
    let weight = |x: f64| 1.0 + x;
    let cases = [
        ("shift", unperturbed_shift(n)?, Some(0.0)),
        (
            "perturbed",
            perturbed_shift(n, cfg.alpha, None)?,
            Some((n as f64).powf(-cfg.alpha / n as f64)),
        ),
        ("weighted", perturbed_shift(n, cfg.alpha, Some(&weight))?, None),
    ];
    let mut t = Table::new(&["case", "index", "re", "im", "modulus", "expected_modulus"]);
    for (name, m, expected) in cases {
        for (j, z) in sorted_by_angle(general_eigenvalues(&m)?).iter().enumerate() {
            t.rows.push(vec![
                name.to_string(),
                (j + 1).to_string(),
                fixed(z.re),
                fixed(z.im),
                fixed(z.norm()),
                expected.map(fixed).unwrap_or_default(),
            ]);
        }
    }
    Ok(t)
}
