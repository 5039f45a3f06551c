use std::f64::consts::PI;
use std::ops::Range;

use rayon::prelude::*;

use super::{
    assemble_distributed, eigen_grid, fractional_symbol, glt_sampling, momentary_sampling,
    DistributedOrderSpec,
};
use crate::error::{Error, Result};
use crate::numerics::{solve_vandermonde, symmetric_eigenvalues};
use crate::structured::{toeplitz, FourierSymbol};

/// Samples of `w̃_0..w̃_ν` on the base grid `θ_j = jπ/n_1`, `j = 1..n_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTable {
    grid_sizes: Vec<usize>,
    base_grid: Vec<f64>,
    samples: Vec<Vec<f64>>,
}

impl ExpansionTable {
    pub fn depth(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn base_size(&self) -> usize {
        self.grid_sizes[0]
    }

    pub fn grid_sizes(&self) -> &[usize] {
        &self.grid_sizes
    }

    pub fn base_grid(&self) -> &[f64] {
        &self.base_grid
    }

    /// `w̃_t` on the base grid.
    pub fn samples(&self, t: usize) -> &[f64] {
        &self.samples[t]
    }
}

fn check_monotone(f: &FourierSymbol) -> Result<()> {
    let p = f.parity();
    if !(p.real && p.even) {
        return Err(Error::NotMonotone);
    }
    let values: Vec<_> = (0..=1000).map(|i| f.eval(PI * i as f64 / 1000.0)).collect();
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let slack = 1e-13 * scale;
    if values.iter().any(|z| z.im.abs() > slack) {
        return Err(Error::NotMonotone);
    }
    if values.windows(2).any(|w| w[1].re < w[0].re - slack) {
        return Err(Error::NotMonotone);
    }
    Ok(())
}

/// Expansion table of `f` on the nested grids `n_k = 2^{k-1} n_1`, `k = 1..ν`.
pub fn expansion_coefficients(f: &FourierSymbol, nu: usize, n1: usize) -> Result<ExpansionTable> {
    if nu == 0 {
        return Err(Error::InvalidArgument("expansion depth must be at least 1".into()));
    }
    let sizes: Vec<usize> = (0..nu).map(|k| n1 << k).collect();
    expansion_coefficients_on(f, &sizes)
}

/// Expansion table on explicitly given grid sizes, which must satisfy
/// `n_k = 2^{k-1} n_1` with `n_1 >= 5`.
pub fn expansion_coefficients_on(f: &FourierSymbol, sizes: &[usize]) -> Result<ExpansionTable> {
    let n1 = *sizes
        .first()
        .ok_or_else(|| Error::InvalidArgument("no grid sizes".into()))?;
    if n1 < 5 {
        return Err(Error::InvalidArgument(format!("base grid {n1} is below 5 points")));
    }
    if sizes.iter().enumerate().any(|(k, &n)| n != n1 << k) {
        return Err(Error::GridNotNested(sizes.to_vec()));
    }
    check_monotone(f)?;

    let spectra = sizes
        .iter()
        .map(|&n| symmetric_eigenvalues(&toeplitz(f, n)?))
        .collect::<Result<Vec<_>>>()?;
    let nodes: Vec<f64> = sizes.iter().map(|&n| 1.0 / n as f64).collect();
    let base_grid = eigen_grid(n1);
    let nu = sizes.len();

    let mut samples = vec![vec![0.0; n1]; nu + 1];
    for (j, &theta) in base_grid.iter().enumerate() {
        let f0 = f.eval(theta).re;
        samples[0][j] = f0;
        let rhs: Vec<f64> = spectra
            .iter()
            .enumerate()
            .map(|(k, ev)| ev[((j + 1) << k) - 1] - f0)
            .collect();
        let w = solve_vandermonde(&nodes, &rhs)?;
        for (t, wt) in w.into_iter().enumerate() {
            samples[t + 1][j] = wt;
        }
    }
    Ok(ExpansionTable {
        grid_sizes: sizes.to_vec(),
        base_grid,
        samples,
    })
}

/// `w̃_t(θ)` by local Lagrange interpolation of degree `min(ν, n_1 - 1)` on the
/// nearest consecutive base points; points past either end are extrapolated.
pub fn interpolate_at(table: &ExpansionTable, t: usize, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::ExtrapolationOutOfRange(theta));
    }
    let n1 = table.base_size();
    let y = &table.samples[t];
    let pos = theta * n1 as f64 / PI - 1.0;
    let nearest = pos.round();
    if (pos - nearest).abs() < 1e-12 && nearest >= 0.0 {
        return Ok(y[nearest as usize]);
    }
    let deg = table.depth().min(n1 - 1);
    let start = (pos - deg as f64 / 2.0).round().clamp(0.0, (n1 - 1 - deg) as f64) as usize;
    let x = &table.base_grid;
    let mut acc = 0.0;
    for i in start..=start + deg {
        let mut l = 1.0;
        for j in start..=start + deg {
            if j != i {
                l *= (theta - x[j]) / (x[i] - x[j]);
            }
        }
        acc += y[i] * l;
    }
    Ok(acc)
}

/// All `w̃_t`, `t = 0..ν`, on `θ_{j,n} = jπ/n`: `result[t][j - 1]`.
pub fn interpolate_expansion(table: &ExpansionTable, n: usize) -> Result<Vec<Vec<f64>>> {
    let grid = eigen_grid(n);
    (0..=table.depth())
        .map(|t| grid.iter().map(|&th| interpolate_at(table, t, th)).collect())
        .collect()
}

/// Momentary sampling plus the expansion corrections
/// `Σ_i Σ_{t=1..ν-1} h^{(ℓ-i)/ℓ + t} w̃_t^{(i)}(θ_{j,n})`, where `w̃^{(i)}` is the
/// table of `c_i g_{α_i}`. With `ν = 1` this is the momentary sampling itself.
pub fn mae_eigenvalues(
    spec: &DistributedOrderSpec,
    n: usize,
    nu: usize,
    n1: usize,
) -> Result<Vec<f64>> {
    if nu == 0 {
        return Err(Error::InvalidArgument("expansion depth must be at least 1".into()));
    }
    if n1 < 5 {
        return Err(Error::InvalidArgument(format!("base grid {n1} is below 5 points")));
    }
    let finest = n1 << (nu - 1);
    if n <= finest {
        return Err(Error::InvalidArgument(format!(
            "size {n} must exceed the finest expansion grid {finest}"
        )));
    }
    let mut out = momentary_sampling(spec, n)?;
    if nu == 1 {
        return Ok(out);
    }
    let corrections = (1..=spec.ell())
        .into_par_iter()
        .map(|i| -> Result<Vec<f64>> {
            let f = fractional_symbol(spec.order(i))?.scaled(spec.weight(i).into());
            let table = expansion_coefficients(&f, nu, n1)?;
            let w = interpolate_expansion(&table, n)?;
            let mut corr = vec![0.0; n];
            for (t, wt) in w.iter().enumerate().take(nu).skip(1) {
                let scale = spec.mesh_power(i, t, n);
                for (c, v) in corr.iter_mut().zip(wt) {
                    *c += scale * v;
                }
            }
            Ok(corr)
        })
        .collect::<Result<Vec<_>>>()?;
    for corr in corrections {
        for (o, c) in out.iter_mut().zip(corr) {
            *o += c;
        }
    }
    Ok(out)
}

/// Interior index band holding `round(0.95 n)` indices, with the dropped
/// indices split between the two ends (the extra one at the top).
pub fn interior_range(n: usize) -> Range<usize> {
    let keep = (0.95 * n as f64).round() as usize;
    let drop = n - keep.min(n);
    let lo = drop / 2;
    lo..n - (drop - lo)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub index: usize,
    pub exact: f64,
    pub glt: f64,
    pub momentary: f64,
    pub mae: f64,
}

impl ErrorRow {
    pub fn glt_error(&self) -> f64 {
        (self.glt - self.exact).abs()
    }
    pub fn momentary_error(&self) -> f64 {
        (self.momentary - self.exact).abs()
    }
    pub fn mae_error(&self) -> f64 {
        (self.mae - self.exact).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodSummary {
    pub max: f64,
    pub mean: f64,
    pub interior_mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
    pub glt: MethodSummary,
    pub momentary: MethodSummary,
    pub mae: MethodSummary,
}

fn summarize(errs: &[f64]) -> MethodSummary {
    let band = interior_range(errs.len());
    let inner = &errs[band];
    MethodSummary {
        max: errs.iter().copied().fold(0.0, f64::max),
        mean: errs.iter().sum::<f64>() / errs.len() as f64,
        interior_mean: inner.iter().sum::<f64>() / inner.len() as f64,
    }
}

/// Exact eigenvalues next to the GLT, momentary and MAE approximations.
pub fn error_report(
    spec: &DistributedOrderSpec,
    n: usize,
    nu: usize,
    n1: usize,
) -> Result<ErrorReport> {
    let exact = symmetric_eigenvalues(&assemble_distributed(spec, n)?)?;
    let glt = glt_sampling(spec, n);
    let momentary = momentary_sampling(spec, n)?;
    let mae = mae_eigenvalues(spec, n, nu, n1)?;
    let rows: Vec<ErrorRow> = (0..n)
        .map(|j| ErrorRow {
            index: j + 1,
            exact: exact[j],
            glt: glt[j],
            momentary: momentary[j],
            mae: mae[j],
        })
        .collect();
    let col = |f: fn(&ErrorRow) -> f64| rows.iter().map(f).collect::<Vec<_>>();
    Ok(ErrorReport {
        glt: summarize(&col(ErrorRow::glt_error)),
        momentary: summarize(&col(ErrorRow::momentary_error)),
        mae: summarize(&col(ErrorRow::mae_error)),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_symbol_has_no_corrections() {
        let table = expansion_coefficients(&FourierSymbol::constant(3.0), 3, 6).unwrap();
        for t in 1..=3 {
            assert!(table.samples(t).iter().all(|w| w.abs() < 1e-9), "t={t}");
        }
        assert!(table.samples(0).iter().all(|&w| w == 3.0));
    }

    #[test]
    fn laplacian_first_coefficient() {
        // λ_j(T_n) = f(jπ/(n+1)), so λ_j - f(jπ/n) ≈ -θ f'(θ) h with f' = 2 sin θ
        let table = expansion_coefficients(&FourierSymbol::laplacian(), 1, 40).unwrap();
        for (j, &t) in table.base_grid().iter().enumerate().take(30).skip(5) {
            let lead = -2.0 * t * t.sin();
            assert!((table.samples(1)[j] - lead).abs() < 0.2, "j={j}");
        }
    }

    #[test]
    fn nesting_enforced() {
        let f = FourierSymbol::laplacian();
        assert!(matches!(
            expansion_coefficients_on(&f, &[10, 30]),
            Err(Error::GridNotNested(_))
        ));
        assert!(expansion_coefficients_on(&f, &[4, 8]).is_err());
    }

    #[test]
    fn non_monotone_rejected() {
        let f = FourierSymbol::real_trigonometric(&[(-2, 1.0), (2, 1.0)]);
        assert!(matches!(
            expansion_coefficients(&f, 2, 10),
            Err(Error::NotMonotone)
        ));
        assert!(matches!(
            expansion_coefficients(&FourierSymbol::backward_difference(), 2, 10),
            Err(Error::NotMonotone)
        ));
    }

    #[test]
    fn interpolation_reproduces_nodes_and_lines() {
        let mut table = expansion_coefficients(&FourierSymbol::laplacian(), 2, 8).unwrap();
        let nodes = table.base_grid().to_vec();
        table.samples[1] = nodes.iter().map(|&x| 3.0 * x - 1.0).collect();
        for (j, &x) in nodes.iter().enumerate() {
            assert_eq!(interpolate_at(&table, 2, x).unwrap(), table.samples(2)[j]);
        }
        for th in [0.05, 0.5, 1.7, 3.1, PI] {
            let v = interpolate_at(&table, 1, th).unwrap();
            assert!((v - (3.0 * th - 1.0)).abs() < 1e-12);
        }
        assert!(matches!(
            interpolate_at(&table, 1, 0.0),
            Err(Error::ExtrapolationOutOfRange(_))
        ));
        assert!(interpolate_at(&table, 1, 3.2).is_err());
    }

    #[test]
    fn interior_band() {
        assert_eq!(interior_range(100), 2..97);
        assert_eq!(interior_range(500), 12..487);
        assert_eq!(interior_range(1), 0..1);
    }

    #[test]
    fn depth_one_is_momentary() {
        let s = DistributedOrderSpec::new(2).unwrap();
        assert_eq!(
            mae_eigenvalues(&s, 60, 1, 10).unwrap(),
            momentary_sampling(&s, 60).unwrap()
        );
    }

    #[test]
    fn size_must_exceed_finest_grid() {
        let s = DistributedOrderSpec::new(2).unwrap();
        assert!(mae_eigenvalues(&s, 80, 4, 10).is_err());
        assert!(mae_eigenvalues(&s, 81, 4, 10).is_ok());
    }
}
