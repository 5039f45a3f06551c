//! Toeplitz, circulant, multilevel and diagonal-sampling matrices built from symbols.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;

/// Fourier coefficients indexed by frequency `k`.
pub type CoefficientMap = BTreeMap<i64, Complex64>;

pub type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
/// Returns the coefficients for `k = -kmax..=kmax`, in that order.
pub type SeriesFn = Arc<dyn Fn(usize) -> Vec<Complex64> + Send + Sync>;
pub type BivariateEvaluator = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

/// Declared symmetry of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Parity {
    /// Real-valued on `[-π, π]`, equivalently `conj(ĥ_k) = ĥ_{-k}`.
    pub real: bool,
    /// Even, equivalently `ĥ_k = ĥ_{-k}`.
    pub even: bool,
}

impl Parity {
    pub const NONE: Parity = Parity { real: false, even: false };
    pub const REAL: Parity = Parity { real: true, even: false };
    pub const REAL_EVEN: Parity = Parity { real: true, even: true };
}

#[derive(Clone)]
enum Coefficients {
    Finite(CoefficientMap),
    Series(SeriesFn),
    Quadrature,
}

/// Univariate symbol on `[-π, π]`, evaluable pointwise and with a route to
/// its Fourier coefficients.
#[derive(Clone)]
pub struct FourierSymbol {
    coefficients: Coefficients,
    evaluator: Evaluator,
    parity: Parity,
}

impl fmt::Debug for FourierSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.coefficients {
            Coefficients::Finite(map) => format!("finite {map:?}"),
            Coefficients::Series(_) => "series".to_string(),
            Coefficients::Quadrature => "evaluator only".to_string(),
        };
        write!(f, "FourierSymbol({kind}, {:?})", self.parity)
    }
}

fn parity_of(map: &CoefficientMap) -> Parity {
    let zero = Complex64::new(0.0, 0.0);
    let get = |k: i64| map.get(&k).copied().unwrap_or(zero);
    let real = map.keys().all(|&k| get(k).conj() == get(-k));
    let even = map.keys().all(|&k| get(k) == get(-k));
    Parity { real, even }
}

fn sum_series(map: &CoefficientMap, theta: f64) -> Complex64 {
    map.iter()
        .map(|(&k, &c)| c * Complex64::from_polar(1.0, k as f64 * theta))
        .sum()
}

impl FourierSymbol {
    /// Trigonometric polynomial `Σ ĥ_k e^{ikθ}` with the given finite support.
    pub fn trigonometric(coefficients: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut map = CoefficientMap::new();
        for (k, c) in coefficients {
            *map.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        let parity = parity_of(&map);
        let eval_map = map.clone();
        Self {
            coefficients: Coefficients::Finite(map),
            evaluator: Arc::new(move |t| sum_series(&eval_map, t)),
            parity,
        }
    }

    pub fn real_trigonometric(coefficients: &[(i64, f64)]) -> Self {
        Self::trigonometric(coefficients.iter().map(|&(k, c)| (k, Complex64::new(c, 0.0))))
    }

    /// Symbol known only pointwise; coefficients come from quadrature.
    pub fn from_evaluator(
        f: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        parity: Parity,
    ) -> Self {
        Self {
            coefficients: Coefficients::Quadrature,
            evaluator: Arc::new(f),
            parity,
        }
    }

    pub fn from_real_evaluator(f: impl Fn(f64) -> f64 + Send + Sync + 'static, even: bool) -> Self {
        Self::from_evaluator(
            move |t| Complex64::new(f(t), 0.0),
            Parity { real: true, even },
        )
    }

    /// Non-polynomial symbol with a closed form for its coefficients.
    pub fn with_series(
        f: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        series: impl Fn(usize) -> Vec<Complex64> + Send + Sync + 'static,
        parity: Parity,
    ) -> Self {
        Self {
            coefficients: Coefficients::Series(Arc::new(series)),
            evaluator: Arc::new(f),
            parity,
        }
    }

    /// Assembles a symbol from optional parts; at least one must be present.
    pub fn from_parts(
        coefficients: Option<CoefficientMap>,
        evaluator: Option<Evaluator>,
        parity: Parity,
    ) -> Result<Self> {
        match (coefficients, evaluator) {
            (None, None) => Err(Error::MissingCoefficients),
            (Some(map), None) => Ok(Self::trigonometric(map)),
            (Some(map), Some(f)) => Ok(Self {
                coefficients: Coefficients::Finite(map),
                evaluator: f,
                parity,
            }),
            (None, Some(f)) => Ok(Self {
                coefficients: Coefficients::Quadrature,
                evaluator: f,
                parity,
            }),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::real_trigonometric(&[(0, c)])
    }

    /// `e^{ikθ}`.
    pub fn exponential(k: i64) -> Self {
        Self::real_trigonometric(&[(k, 1.0)])
    }

    /// `2 - 2cos θ`.
    pub fn laplacian() -> Self {
        Self::real_trigonometric(&[(-1, -1.0), (0, 2.0), (1, -1.0)])
    }

    /// `1 - e^{iθ}`.
    pub fn backward_difference() -> Self {
        Self::real_trigonometric(&[(0, 1.0), (1, -1.0)])
    }

    /// `i sin θ`.
    pub fn sine_i() -> Self {
        Self::real_trigonometric(&[(-1, -0.5), (1, 0.5)])
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        (self.evaluator)(theta)
    }

    pub fn evaluator(&self) -> Evaluator {
        self.evaluator.clone()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Degree of a trigonometric polynomial, `None` for other symbols.
    pub fn degree(&self) -> Option<usize> {
        match &self.coefficients {
            Coefficients::Finite(map) => Some(
                map.keys()
                    .map(|k| k.unsigned_abs() as usize)
                    .max()
                    .unwrap_or(0),
            ),
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.coefficients, Coefficients::Finite(_))
    }

    /// Full coefficient support of a trigonometric polynomial.
    pub fn finite_coefficients(&self) -> Option<&CoefficientMap> {
        match &self.coefficients {
            Coefficients::Finite(map) => Some(map),
            _ => None,
        }
    }

    /// Coefficients for `|k| <= kmax`.
    pub fn coefficients(&self, kmax: usize) -> Result<CoefficientMap> {
        self.coefficients_with(kmax, &QuadratureConfig::default())
    }

    pub fn coefficients_with(&self, kmax: usize, cfg: &QuadratureConfig) -> Result<CoefficientMap> {
        let bound = kmax as i64;
        match &self.coefficients {
            Coefficients::Finite(map) => Ok(map
                .range(-bound..=bound)
                .map(|(&k, &c)| (k, c))
                .collect()),
            Coefficients::Series(series) => {
                let v = series(kmax);
                if v.len() != 2 * kmax + 1 {
                    return Err(Error::LengthMismatch {
                        left: v.len(),
                        right: 2 * kmax + 1,
                    });
                }
                Ok((-bound..=bound).zip(v).collect())
            }
            Coefficients::Quadrature => {
                fourier_coefficients(self.evaluator.as_ref(), kmax, cfg)
            }
        }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let f = self.evaluator.clone();
        let real_scale = s.im == 0.0;
        let parity = Parity {
            real: self.parity.real && real_scale,
            even: self.parity.even,
        };
        let coefficients = match &self.coefficients {
            Coefficients::Finite(map) => {
                Coefficients::Finite(map.iter().map(|(&k, &c)| (k, c * s)).collect())
            }
            Coefficients::Series(series) => {
                let series = series.clone();
                Coefficients::Series(Arc::new(move |k| {
                    series(k).into_iter().map(|c| c * s).collect()
                }))
            }
            Coefficients::Quadrature => Coefficients::Quadrature,
        };
        Self {
            coefficients,
            evaluator: Arc::new(move |t| f(t) * s),
            parity,
        }
    }

    pub fn sum(&self, other: &Self) -> Self {
        let (f, g) = (self.evaluator.clone(), other.evaluator.clone());
        let parity = Parity {
            real: self.parity.real && other.parity.real,
            even: self.parity.even && other.parity.even,
        };
        let coefficients = match (&self.coefficients, &other.coefficients) {
            (Coefficients::Finite(a), Coefficients::Finite(b)) => {
                return Self::from_parts(
                    Some(merge(a, b)),
                    Some(Arc::new(move |t| f(t) + g(t))),
                    parity,
                )
                .expect("both parts present");
            }
            (Coefficients::Quadrature, _) | (_, Coefficients::Quadrature) => {
                Coefficients::Quadrature
            }
            _ => {
                let (a, b) = (self.clone(), other.clone());
                Coefficients::Series(Arc::new(move |k| {
                    let x = a.coefficients(k).expect("series coefficients");
                    let y = b.coefficients(k).expect("series coefficients");
                    let m = merge(&x, &y);
                    (-(k as i64)..=k as i64)
                        .map(|j| m.get(&j).copied().unwrap_or_default())
                        .collect()
                }))
            }
        };
        Self {
            coefficients,
            evaluator: Arc::new(move |t| f(t) + g(t)),
            parity,
        }
    }

    pub fn product(&self, other: &Self) -> Self {
        let (f, g) = (self.evaluator.clone(), other.evaluator.clone());
        let parity = Parity {
            real: self.parity.real && other.parity.real,
            even: self.parity.even && other.parity.even,
        };
        let evaluator: Evaluator = Arc::new(move |t| f(t) * g(t));
        match (&self.coefficients, &other.coefficients) {
            (Coefficients::Finite(a), Coefficients::Finite(b)) => {
                let mut m = CoefficientMap::new();
                for (&i, &x) in a {
                    for (&j, &y) in b {
                        *m.entry(i + j).or_default() += x * y;
                    }
                }
                Self {
                    coefficients: Coefficients::Finite(m),
                    evaluator,
                    parity,
                }
            }
            _ => Self {
                coefficients: Coefficients::Quadrature,
                evaluator,
                parity,
            },
        }
    }

    /// Largest gap between the evaluator and the Fourier sum truncated at
    /// `|k| <= kmax`, over 32 fixed points of `[-π, π]`.
    pub fn consistency_error(&self, kmax: usize) -> Result<f64> {
        let map = self.coefficients(kmax)?;
        Ok((0..32)
            .map(|i| -PI + 2.0 * PI * (i as f64 + 0.37) / 32.0)
            .map(|t| (self.eval(t) - sum_series(&map, t)).norm())
            .fold(0.0, f64::max))
    }
}

fn merge(a: &CoefficientMap, b: &CoefficientMap) -> CoefficientMap {
    let mut m = a.clone();
    for (&k, &c) in b {
        *m.entry(k).or_default() += c;
    }
    m
}

/// Symbol in `d` angular variables.
#[derive(Clone)]
pub enum MultiIndexSymbol {
    /// `f_1(θ_1) · … · f_d(θ_d)`.
    Separable(Vec<FourierSymbol>),
    /// A bivariate function of `(θ, ξ)`.
    Bivariate(BivariateEvaluator),
}

impl fmt::Debug for MultiIndexSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Separable(fs) => f.debug_tuple("Separable").field(fs).finish(),
            Self::Bivariate(_) => write!(f, "Bivariate(..)"),
        }
    }
}

impl MultiIndexSymbol {
    pub fn separable(factors: Vec<FourierSymbol>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("no factors".into()));
        }
        Ok(Self::Separable(factors))
    }

    pub fn bivariate(f: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self::Bivariate(Arc::new(f))
    }

    pub fn dims(&self) -> usize {
        match self {
            Self::Separable(fs) => fs.len(),
            Self::Bivariate(_) => 2,
        }
    }

    pub fn eval(&self, angles: &[f64]) -> Result<Complex64> {
        if angles.len() != self.dims() {
            return Err(Error::LengthMismatch {
                left: angles.len(),
                right: self.dims(),
            });
        }
        Ok(match self {
            Self::Separable(fs) => fs.iter().zip(angles).map(|(f, &t)| f.eval(t)).product(),
            Self::Bivariate(f) => f(angles[0], angles[1]),
        })
    }
}

/// Resolution control for [`fourier_coefficients`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Largest allowed change of any coefficient between two doublings.
    pub tolerance: f64,
    /// Starting number of points; `None` picks `max(512, 8·(2kmax+1))`.
    pub initial_points: Option<usize>,
    pub max_points: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-11,
            initial_points: None,
            max_points: 1 << 22,
        }
    }
}

fn trapezoid_coefficients(
    f: &dyn Fn(f64) -> Complex64,
    kmax: usize,
    points: usize,
    planner: &mut FftPlanner<f64>,
) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = (0..points)
        .map(|m| {
            let t = 2.0 * PI * m as f64 / points as f64;
            f(if t >= PI { t - 2.0 * PI } else { t })
        })
        .collect();
    planner.plan_fft_forward(points).process(&mut buf);
    let scale = 1.0 / points as f64;
    (-(kmax as i64)..=kmax as i64)
        .map(|k| buf[k.rem_euclid(points as i64) as usize] * scale)
        .collect()
}

/// Fourier coefficients `(1/2π)∫ f(θ) e^{-ikθ} dθ` for `|k| <= kmax` by the
/// periodic trapezoid rule, doubling the point count until two successive
/// estimates agree within the tolerance.
pub fn fourier_coefficients(
    f: &dyn Fn(f64) -> Complex64,
    kmax: usize,
    cfg: &QuadratureConfig,
) -> Result<CoefficientMap> {
    let mut points = cfg
        .initial_points
        .unwrap_or_else(|| 512.max(8 * (2 * kmax + 1)))
        .next_power_of_two();
    let mut planner = FftPlanner::new();
    let mut prev = trapezoid_coefficients(f, kmax, points, &mut planner);
    loop {
        if points * 2 > cfg.max_points {
            let change = f64::INFINITY;
            return Err(Error::QuadratureUnderResolved { change, points });
        }
        points *= 2;
        let next = trapezoid_coefficients(f, kmax, points, &mut planner);
        let change = prev
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if change <= cfg.tolerance {
            return Ok((-(kmax as i64)..=kmax as i64).zip(next).collect());
        }
        if points * 2 > cfg.max_points {
            return Err(Error::QuadratureUnderResolved { change, points });
        }
        prev = next;
    }
}

fn coefficient(map: &CoefficientMap, k: i64) -> Complex64 {
    map.get(&k).copied().unwrap_or_default()
}

/// `T_n(f)` with entry `(i, j) = ĥ_{i-j}`.
pub fn toeplitz(f: &FourierSymbol, n: usize) -> Result<DenseMatrix> {
    let map = f.coefficients(n.saturating_sub(1))?;
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        coefficient(&map, i as i64 - j as i64)
    }))
}

/// `C_n(f) = Σ_k ĥ_k Z_n^k` with `Z_n` the cyclic downshift. All coefficients
/// of a trigonometric polynomial are folded modulo `n`; other symbols are
/// truncated at `|k| <= n - 1`.
pub fn circulant(f: &FourierSymbol, n: usize) -> Result<DenseMatrix> {
    let map = match f.finite_coefficients() {
        Some(map) => map.clone(),
        None => f.coefficients(n.saturating_sub(1))?,
    };
    let mut first_col = vec![Complex64::new(0.0, 0.0); n];
    for (&k, &c) in &map {
        first_col[k.rem_euclid(n as i64) as usize] += c;
    }
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        first_col[(i as i64 - j as i64).rem_euclid(n as i64) as usize]
    }))
}

/// Circulant grid `θ_j = 2π(j-1)/n`, `j = 1..n`.
pub fn circulant_grid(n: usize) -> Vec<f64> {
    (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect()
}

/// `f(θ_j)` on the circulant grid; the spectrum of [`circulant`] for a
/// trigonometric polynomial.
pub fn circulant_eigenvalues(f: &FourierSymbol, n: usize) -> Result<Vec<Complex64>> {
    if !f.is_polynomial() {
        return Err(Error::DegreeTooHigh { n });
    }
    Ok(circulant_grid(n).into_iter().map(|t| f.eval(t)).collect())
}

/// Unitary Fourier matrix with entry `(r, c) = e^{i r θ_c} / √n`.
pub fn fourier_matrix(n: usize) -> DenseMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    DenseMatrix::from_fn(n, n, |r, c| {
        Complex64::from_polar(scale, r as f64 * 2.0 * PI * c as f64 / n as f64)
    })
}

/// `T_{n_1}(f_1) ⊗ … ⊗ T_{n_d}(f_d)`.
pub fn tensor_toeplitz(factors: &[FourierSymbol], sizes: &[usize]) -> Result<DenseMatrix> {
    if factors.len() != sizes.len() {
        return Err(Error::LengthMismatch {
            left: factors.len(),
            right: sizes.len(),
        });
    }
    if factors.is_empty() {
        return Err(Error::InvalidArgument("no factors".into()));
    }
    let mut acc = toeplitz(&factors[0], sizes[0])?;
    for (f, &n) in factors.iter().zip(sizes).skip(1) {
        acc = acc.kron(&toeplitz(f, n)?);
    }
    Ok(acc)
}

/// Multilevel Toeplitz matrix with entry `(i, j) = f̂_{i-j}` over
/// lexicographically ordered multi-indices.
pub fn multilevel_toeplitz(symbol: &MultiIndexSymbol, sizes: &[usize]) -> Result<DenseMatrix> {
    if sizes.len() != symbol.dims() {
        return Err(Error::LengthMismatch {
            left: sizes.len(),
            right: symbol.dims(),
        });
    }
    let total: usize = sizes.iter().product();
    let split = |mut idx: usize| {
        let mut out = vec![0usize; sizes.len()];
        for (slot, &n) in out.iter_mut().zip(sizes).rev() {
            *slot = idx % n;
            idx /= n;
        }
        out
    };
    match symbol {
        MultiIndexSymbol::Separable(fs) => {
            let maps = fs
                .iter()
                .zip(sizes)
                .map(|(f, &n)| f.coefficients(n - 1))
                .collect::<Result<Vec<_>>>()?;
            Ok(DenseMatrix::from_fn(total, total, |i, j| {
                let (a, b) = (split(i), split(j));
                maps.iter()
                    .enumerate()
                    .map(|(r, m)| coefficient(m, a[r] as i64 - b[r] as i64))
                    .product()
            }))
        }
        MultiIndexSymbol::Bivariate(f) => {
            let coeffs = bivariate_coefficients(f.as_ref(), sizes[0] - 1, sizes[1] - 1)?;
            Ok(DenseMatrix::from_fn(total, total, |i, j| {
                let (a, b) = (split(i), split(j));
                let k1 = a[0] as i64 - b[0] as i64;
                let k2 = a[1] as i64 - b[1] as i64;
                coeffs(k1, k2)
            }))
        }
    }
}

fn bivariate_coefficients(
    f: &(dyn Fn(f64, f64) -> Complex64 + Send + Sync),
    k1max: usize,
    k2max: usize,
) -> Result<impl Fn(i64, i64) -> Complex64> {
    let tolerance = QuadratureConfig::default().tolerance;
    let mut points = 64.max(8 * (2 * k1max.max(k2max) + 1)).next_power_of_two();
    let mut planner = FftPlanner::new();
    let mut sample = |m: usize| -> Vec<Complex64> {
        let wrap = |t: f64| if t >= PI { t - 2.0 * PI } else { t };
        let mut grid: Vec<Complex64> = (0..m * m)
            .map(|idx| {
                let t = wrap(2.0 * PI * (idx / m) as f64 / m as f64);
                let x = wrap(2.0 * PI * (idx % m) as f64 / m as f64);
                f(t, x)
            })
            .collect();
        let fft = planner.plan_fft_forward(m);
        for row in grid.chunks_mut(m) {
            fft.process(row);
        }
        let mut col = vec![Complex64::new(0.0, 0.0); m];
        for c in 0..m {
            for r in 0..m {
                col[r] = grid[r * m + c];
            }
            fft.process(&mut col);
            for r in 0..m {
                grid[r * m + c] = col[r] / (m * m) as f64;
            }
        }
        grid
    };
    let pick = |grid: &[Complex64], m: usize, k1: i64, k2: i64| {
        grid[k1.rem_euclid(m as i64) as usize * m + k2.rem_euclid(m as i64) as usize]
    };
    let mut prev = sample(points);
    loop {
        let next = sample(points * 2);
        let mut change = 0.0f64;
        for k1 in -(k1max as i64)..=k1max as i64 {
            for k2 in -(k2max as i64)..=k2max as i64 {
                change = change.max((pick(&prev, points, k1, k2) - pick(&next, points * 2, k1, k2)).norm());
            }
        }
        points *= 2;
        if change <= tolerance {
            let m = points;
            return Ok(move |k1: i64, k2: i64| pick(&next, m, k1, k2));
        }
        if points >= 4096 {
            return Err(Error::QuadratureUnderResolved { change, points });
        }
        prev = next;
    }
}

/// `diag(a(1/n), a(2/n), …, a(1))`.
pub fn diagonal_sampling(a: impl Fn(f64) -> f64, n: usize) -> DenseMatrix {
    let d: Vec<Complex64> = (1..=n)
        .map(|j| Complex64::new(a(j as f64 / n as f64), 0.0))
        .collect();
    DenseMatrix::from_diagonal(&d)
}
