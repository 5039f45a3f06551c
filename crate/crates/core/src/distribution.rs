//! Sorted-sample comparison between computed spectra and symbol samplings.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Eigen,
    Singular,
}

/// How complex data is reduced to reals before sorting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    Modulus,
    Real,
}

impl SamplingMode {
    fn project(self, z: Complex64) -> f64 {
        match self {
            Self::Modulus => z.norm(),
            Self::Real => z.re,
        }
    }
}

/// Computed eigenvalues or singular values, stored sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSample {
    values: Vec<f64>,
    kind: SampleKind,
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

impl SpectralSample {
    pub fn eigenvalues(values: Vec<f64>) -> Self {
        Self {
            values: sorted(values),
            kind: SampleKind::Eigen,
        }
    }

    /// Complex eigenvalues reduced by the given projection.
    pub fn complex_eigenvalues(values: &[Complex64], mode: SamplingMode) -> Self {
        Self::eigenvalues(values.iter().map(|&z| mode.project(z)).collect())
    }

    pub fn singular_values(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !(**v >= 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "singular value {bad} is not a nonnegative real"
            )));
        }
        Ok(Self {
            values: sorted(values),
            kind: SampleKind::Singular,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> SampleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Symbol values on a grid, projected and sorted ascending.
pub fn symbol_sampling(f: impl Fn(f64) -> Complex64, grid: &[f64], mode: SamplingMode) -> Vec<f64> {
    sorted(grid.iter().map(|&t| mode.project(f(t))).collect())
}

/// Bivariate symbol values on the Cartesian product of two grids, sorted.
pub fn symbol_sampling_2d(
    f: impl Fn(f64, f64) -> Complex64,
    first: &[f64],
    second: &[f64],
    mode: SamplingMode,
) -> Vec<f64> {
    sorted(
        first
            .iter()
            .flat_map(|&t| second.iter().map(move |&x| (t, x)))
            .map(|(t, x)| mode.project(f(t, x)))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSummary {
    pub max_abs: f64,
    pub mean_abs: f64,
}

/// Errors between the sorted sample and the sorted symbol values, after
/// dropping the `trim` smallest and `trim` largest pairs.
pub fn distribution_error(
    sample: &SpectralSample,
    symbol_values: &[f64],
    trim: usize,
) -> Result<ErrorSummary> {
    if sample.len() != symbol_values.len() {
        return Err(Error::LengthMismatch {
            left: sample.len(),
            right: symbol_values.len(),
        });
    }
    if 2 * trim >= sample.len() {
        return Err(Error::InvalidArgument(format!(
            "trimming {trim} from each end leaves nothing of {}",
            sample.len()
        )));
    }
    let reference = sorted(symbol_values.to_vec());
    let n = sample.len();
    let errs: Vec<f64> = sample.values[trim..n - trim]
        .iter()
        .zip(&reference[trim..n - trim])
        .map(|(a, b)| (a - b).abs())
        .collect();
    Ok(ErrorSummary {
        max_abs: errs.iter().copied().fold(0.0, f64::max),
        mean_abs: errs.iter().sum::<f64>() / errs.len() as f64,
    })
}

/// Symbol and domain of the integral side of [`weyl_functional`].
pub enum WeylSymbol<'a> {
    Univariate {
        f: &'a dyn Fn(f64) -> Complex64,
        domain: (f64, f64),
    },
    Bivariate {
        f: &'a dyn Fn(f64, f64) -> Complex64,
        first: (f64, f64),
        second: (f64, f64),
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylQuadrature {
    /// Starting number of trapezoid intervals per dimension.
    pub initial_points: usize,
    pub tolerance: f64,
    pub max_points: usize,
}

impl Default for WeylQuadrature {
    fn default() -> Self {
        Self {
            initial_points: 256,
            tolerance: 1e-10,
            max_points: 1 << 12,
        }
    }
}

fn trapezoid_weights(m: usize) -> impl Iterator<Item = (usize, f64)> {
    (0..=m).map(move |i| (i, if i == 0 || i == m { 0.5 } else { 1.0 }))
}

fn weyl_mean(symbol: &WeylSymbol<'_>, test: &dyn Fn(f64) -> f64, mode: SamplingMode, m: usize) -> f64 {
    match symbol {
        WeylSymbol::Univariate { f, domain: (a, b) } => {
            let h = (b - a) / m as f64;
            trapezoid_weights(m)
                .map(|(i, w)| w * test(mode.project(f(a + h * i as f64))))
                .sum::<f64>()
                / m as f64
        }
        WeylSymbol::Bivariate {
            f,
            first: (a1, b1),
            second: (a2, b2),
        } => {
            let (h1, h2) = ((b1 - a1) / m as f64, (b2 - a2) / m as f64);
            let mut acc = 0.0;
            for (i, wi) in trapezoid_weights(m) {
                let t = a1 + h1 * i as f64;
                for (j, wj) in trapezoid_weights(m) {
                    acc += wi * wj * test(mode.project(f(t, a2 + h2 * j as f64)));
                }
            }
            acc / (m * m) as f64
        }
    }
}

/// `(1/n) Σ F(value_j)` next to the normalized integral `(1/μ(G)) ∫_G F(f)`,
/// where `f` is projected by `mode`.
pub fn weyl_functional(
    sample: &SpectralSample,
    test: &dyn Fn(f64) -> f64,
    symbol: &WeylSymbol<'_>,
    mode: SamplingMode,
    quad: &WeylQuadrature,
) -> Result<(f64, f64)> {
    if sample.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    let lhs = sample.values.iter().map(|&v| test(v)).sum::<f64>() / sample.len() as f64;
    let mut m = quad.initial_points.max(1);
    let mut prev = weyl_mean(symbol, test, mode, m);
    loop {
        m *= 2;
        let next = weyl_mean(symbol, test, mode, m);
        let change = (next - prev).abs();
        if change <= quad.tolerance * next.abs().max(1.0) {
            return Ok((lhs, next));
        }
        if m * 2 > quad.max_points {
            return Err(Error::QuadratureUnderResolved { change, points: m });
        }
        prev = next;
    }
}
