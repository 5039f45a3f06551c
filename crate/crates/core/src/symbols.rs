//! GLT momentary symbols `f_n = f_0 + Σ c_n^{(j)} f_j` and their algebra.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;
use crate::structured::{toeplitz, FourierSymbol, MultiIndexSymbol};

pub type XFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

const ORDER_EPS: f64 = 1e-12;

/// Positive sequence `n ↦ c_n` with an order tag: a larger order means a
/// faster decay, and order 0 marks a sequence bounded away from 0 and ∞.
#[derive(Clone)]
pub struct ScalingSequence {
    label: String,
    order: f64,
    f: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
}

impl fmt::Debug for ScalingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalingSequence({}, order {})", self.label, self.order)
    }
}

impl ScalingSequence {
    pub fn new(
        label: impl Into<String>,
        order: f64,
        f: impl Fn(usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            order,
            f: Arc::new(f),
        }
    }

    pub fn one() -> Self {
        Self::constant("1", 1.0)
    }

    pub fn constant(label: impl Into<String>, value: f64) -> Self {
        Self::new(label, 0.0, move |_| value)
    }

    /// A fixed value that is nonetheless ranked with the given order, such
    /// as a mesh ratio held constant in one experiment.
    pub fn tagged(label: impl Into<String>, value: f64, order: f64) -> Self {
        Self::new(label, order, move |_| value)
    }

    /// `h(n)^exponent`, ordered by the exponent.
    pub fn power(
        label: impl Into<String>,
        h: impl Fn(usize) -> f64 + Send + Sync + 'static,
        exponent: f64,
    ) -> Self {
        Self::new(label, exponent, move |n| h(n).powf(exponent))
    }

    pub fn value(&self, n: usize) -> f64 {
        (self.f)(n)
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn product(&self, other: &Self) -> Self {
        let (f, g) = (self.f.clone(), other.f.clone());
        let label = match (self.label.as_str(), other.label.as_str()) {
            ("1", l) | (l, "1") => l.to_string(),
            (a, b) => format!("{a}*{b}"),
        };
        Self {
            label,
            order: self.order + other.order,
            f: Arc::new(move |n| f(n) * g(n)),
        }
    }
}

/// One term `c_n · f(θ) · a(x)` of a momentary symbol.
#[derive(Clone)]
pub struct SymbolTerm {
    pub scaling: ScalingSequence,
    pub symbol: MultiIndexSymbol,
    pub x_factor: Option<XFn>,
    placeholder: bool,
}

impl fmt::Debug for SymbolTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolTerm")
            .field("scaling", &self.scaling)
            .field("symbol", &self.symbol)
            .field("x_dependent", &self.x_factor.is_some())
            .finish()
    }
}

impl SymbolTerm {
    pub fn new(scaling: ScalingSequence, symbol: MultiIndexSymbol) -> Self {
        Self {
            scaling,
            symbol,
            x_factor: None,
            placeholder: false,
        }
    }

    pub fn univariate(scaling: ScalingSequence, f: FourierSymbol) -> Self {
        Self::new(scaling, MultiIndexSymbol::Separable(vec![f]))
    }

    pub fn with_x(mut self, a: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.x_factor = Some(Arc::new(a));
        self
    }

    fn zero(dims: usize) -> Self {
        let mut t = Self::new(
            ScalingSequence::one(),
            MultiIndexSymbol::Separable(vec![FourierSymbol::constant(0.0); dims]),
        );
        t.placeholder = true;
        t
    }

    pub fn eval(&self, n: usize, angles: &[f64], x: Option<f64>) -> Result<Complex64> {
        let base = self.symbol.eval(angles)? * self.scaling.value(n);
        match (&self.x_factor, x) {
            (None, _) => Ok(base),
            (Some(a), Some(x)) => Ok(base * a(x)),
            (Some(_), None) => Err(Error::MissingVariable),
        }
    }
}

/// Terms sorted by increasing scaling order; the first has order 0.
#[derive(Clone, Debug)]
pub struct MomentarySymbol {
    dims: usize,
    terms: Vec<SymbolTerm>,
}

impl MomentarySymbol {
    pub fn new(dims: usize, terms: Vec<SymbolTerm>) -> Result<Self> {
        if dims == 0 {
            return Err(Error::InvalidArgument("symbol needs at least one angle".into()));
        }
        if let Some(t) = terms.iter().find(|t| t.symbol.dims() != dims) {
            return Err(Error::IncompatibleDomains(format!(
                "term in {} angles inside a {dims}-angle symbol",
                t.symbol.dims()
            )));
        }
        let mut terms: Vec<SymbolTerm> = terms.into_iter().filter(|t| !t.placeholder).collect();
        terms.sort_by(|a, b| a.scaling.order.total_cmp(&b.scaling.order));
        match terms.first().map(|t| t.scaling.order) {
            Some(o) if o < -ORDER_EPS => return Err(Error::DivergentScaling(o)),
            Some(o) if o <= ORDER_EPS => {}
            _ => terms.insert(0, SymbolTerm::zero(dims)),
        }
        Ok(Self { dims, terms })
    }

    /// Single univariate term with scaling 1.
    pub fn from_symbol(f: FourierSymbol) -> Self {
        Self::new(1, vec![SymbolTerm::univariate(ScalingSequence::one(), f)])
            .expect("single order-0 term")
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn terms(&self) -> &[SymbolTerm] {
        &self.terms
    }

    pub fn needs_x(&self) -> bool {
        self.terms.iter().any(|t| t.x_factor.is_some())
    }
}

/// `Σ_j c_n^{(j)} f_j(angles) a_j(x)`.
pub fn momentary_evaluate(
    s: &MomentarySymbol,
    n: usize,
    angles: &[f64],
    x: Option<f64>,
) -> Result<Complex64> {
    if angles.len() != s.dims {
        return Err(Error::LengthMismatch {
            left: angles.len(),
            right: s.dims,
        });
    }
    s.terms.iter().map(|t| t.eval(n, angles, x)).sum()
}

/// The order-0 part of the symbol, i.e. its GLT symbol.
pub fn glt_limit(s: &MomentarySymbol) -> MomentarySymbol {
    let terms = s
        .terms
        .iter()
        .filter(|t| t.scaling.order.abs() <= ORDER_EPS)
        .cloned()
        .collect();
    MomentarySymbol::new(s.dims, terms).expect("order-0 terms are valid")
}

pub enum Combine<'a> {
    Add(&'a MomentarySymbol),
    Multiply(&'a MomentarySymbol),
    Scale(ScalingSequence),
}

fn multiply_symbols(a: &MultiIndexSymbol, b: &MultiIndexSymbol) -> Result<MultiIndexSymbol> {
    if a.dims() != b.dims() {
        return Err(Error::IncompatibleDomains(format!(
            "{} vs {} angles",
            a.dims(),
            b.dims()
        )));
    }
    match (a, b) {
        (MultiIndexSymbol::Separable(x), MultiIndexSymbol::Separable(y)) => Ok(
            MultiIndexSymbol::Separable(x.iter().zip(y).map(|(f, g)| f.product(g)).collect()),
        ),
        _ if a.dims() == 2 => {
            let (a, b) = (a.clone(), b.clone());
            Ok(MultiIndexSymbol::bivariate(move |t, x| {
                a.eval(&[t, x]).expect("two angles") * b.eval(&[t, x]).expect("two angles")
            }))
        }
        _ => Err(Error::IncompatibleDomains(
            "products of non-separable symbols need exactly two angles".into(),
        )),
    }
}

fn multiply_x(a: &Option<XFn>, b: &Option<XFn>) -> Option<XFn> {
    match (a, b) {
        (None, None) => None,
        (Some(f), None) | (None, Some(f)) => Some(f.clone()),
        (Some(f), Some(g)) => {
            let (f, g) = (f.clone(), g.clone());
            Some(Arc::new(move |x| f(x) * g(x)))
        }
    }
}

/// Sum, product or rescaling of momentary symbols, re-sorted by order.
pub fn momentary_combine(a: &MomentarySymbol, op: Combine<'_>) -> Result<MomentarySymbol> {
    let live = |s: &MomentarySymbol| -> Vec<SymbolTerm> {
        s.terms.iter().filter(|t| !t.placeholder).cloned().collect()
    };
    match op {
        Combine::Add(b) => {
            if a.dims != b.dims {
                return Err(Error::IncompatibleDomains(format!(
                    "{} vs {} angles",
                    a.dims, b.dims
                )));
            }
            let mut terms = live(a);
            terms.extend(live(b));
            MomentarySymbol::new(a.dims, terms)
        }
        Combine::Multiply(b) => {
            if a.dims != b.dims {
                return Err(Error::IncompatibleDomains(format!(
                    "{} vs {} angles",
                    a.dims, b.dims
                )));
            }
            let mut terms = Vec::new();
            for s in live(a) {
                for t in live(b) {
                    let mut term = SymbolTerm::new(
                        s.scaling.product(&t.scaling),
                        multiply_symbols(&s.symbol, &t.symbol)?,
                    );
                    term.x_factor = multiply_x(&s.x_factor, &t.x_factor);
                    terms.push(term);
                }
            }
            MomentarySymbol::new(a.dims, terms)
        }
        Combine::Scale(c) => {
            let terms = live(a)
                .into_iter()
                .map(|mut t| {
                    t.scaling = t.scaling.product(&c);
                    t
                })
                .collect();
            MomentarySymbol::new(a.dims, terms)
        }
    }
}

/// Ratio sequence `c_n^{(s)} / c_n^{(r)}` for consecutive orders `r < s`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingCheck {
    pub lower: String,
    pub higher: String,
    pub ratios: Vec<f64>,
    pub decreasing: bool,
}

/// Checks that each term decays faster than the previous one along `ns`.
pub fn verify_term_ordering(s: &MomentarySymbol, ns: &[usize]) -> Vec<OrderingCheck> {
    let live: Vec<&SymbolTerm> = s.terms.iter().filter(|t| !t.placeholder).collect();
    live.windows(2)
        .filter(|w| w[1].scaling.order > w[0].scaling.order + ORDER_EPS)
        .map(|w| {
            let ratios: Vec<f64> = ns
                .iter()
                .map(|&n| w[1].scaling.value(n) / w[0].scaling.value(n))
                .collect();
            let decreasing = ratios.windows(2).all(|r| r[1] < r[0]);
            OrderingCheck {
                lower: w[0].scaling.label.clone(),
                higher: w[1].scaling.label.clone(),
                ratios,
                decreasing,
            }
        })
        .collect()
}

/// Data of `-(a u')' + b u' + c u = f` on `(0, 1)` with `u(0) = α`, `u(1) = β`.
#[derive(Clone)]
pub struct DcaProblem {
    pub a: XFn,
    pub b: Option<XFn>,
    pub c: Option<XFn>,
    pub f: Option<XFn>,
    pub alpha: f64,
    pub beta: f64,
}

impl DcaProblem {
    pub fn diffusion(a: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            a: Arc::new(a),
            b: None,
            c: None,
            f: None,
            alpha: 0.0,
            beta: 0.0,
        }
    }

    pub fn with_convection(mut self, b: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.b = Some(Arc::new(b));
        self
    }

    pub fn with_reaction(mut self, c: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.c = Some(Arc::new(c));
        self
    }

    pub fn with_source(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.f = Some(Arc::new(f));
        self
    }

    pub fn with_boundary(mut self, alpha: f64, beta: f64) -> Self {
        self.alpha = alpha;
        self.beta = beta;
        self
    }
}

/// Mesh width of the `n` interior points: `1/(n+1)`.
pub fn dca_mesh(n: usize) -> f64 {
    1.0 / (n as f64 + 1.0)
}

/// Second-order finite differences, scaled by `h²`: returns `X_n` and the
/// right-hand side including the boundary values.
pub fn assemble_dca(p: &DcaProblem, n: usize) -> (DenseMatrix, Vec<f64>) {
    let h = dca_mesh(n);
    let half = |k: usize| (p.a)(k as f64 * h / 2.0);
    let node = |g: &Option<XFn>, j: usize| g.as_ref().map_or(0.0, |g| g(j as f64 * h));
    let mut x = DenseMatrix::zeros(n, n);
    let mut rhs = vec![0.0; n];
    for r in 0..n {
        let j = r + 1;
        let (left, right) = (half(2 * j - 1), half(2 * j + 1));
        let bj = node(&p.b, j);
        x[(r, r)] = Complex64::new(left + right + h * h * node(&p.c, j), 0.0);
        if r > 0 {
            x[(r, r - 1)] = Complex64::new(-left - 0.5 * h * bj, 0.0);
        }
        if r + 1 < n {
            x[(r, r + 1)] = Complex64::new(-right + 0.5 * h * bj, 0.0);
        }
        rhs[r] = h * h * node(&p.f, j);
    }
    rhs[0] += half(1) * p.alpha + 0.5 * h * node(&p.b, 1) * p.alpha;
    rhs[n - 1] += half(2 * n + 1) * p.beta - 0.5 * h * node(&p.b, n) * p.beta;
    (x, rhs)
}

/// `a(x)(2 - 2cos θ) + h·b(x)·i sin θ + h²·c(x)` with `h = 1/(n+1)`.
pub fn dca_momentary(p: &DcaProblem) -> MomentarySymbol {
    let a = p.a.clone();
    let mut terms = vec![SymbolTerm::univariate(ScalingSequence::one(), FourierSymbol::laplacian())
        .with_x(move |x| a(x))];
    if let Some(b) = p.b.clone() {
        terms.push(
            SymbolTerm::univariate(
                ScalingSequence::power("h", dca_mesh, 1.0),
                FourierSymbol::sine_i(),
            )
            .with_x(move |x| b(x)),
        );
    }
    if let Some(c) = p.c.clone() {
        terms.push(
            SymbolTerm::univariate(
                ScalingSequence::power("h^2", dca_mesh, 2.0),
                FourierSymbol::constant(1.0),
            )
            .with_x(move |x| c(x)),
        );
    }
    MomentarySymbol::new(1, terms).expect("leading term has order 0")
}

/// `D_n(a) T_n(e^{iθ}) + n^{-α} e_1 e_nᵀ`, without the weighting when `a` is `None`.
pub fn perturbed_shift(n: usize, alpha: f64, weight: Option<&dyn Fn(f64) -> f64>) -> Result<DenseMatrix> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} must be positive")));
    }
    let mut m = unperturbed_shift(n)?;
    if let Some(a) = weight {
        for i in 0..n {
            let w = a((i + 1) as f64 / n as f64);
            for j in 0..n {
                m[(i, j)] *= w;
            }
        }
    }
    m[(0, n - 1)] += (n as f64).powf(-alpha);
    Ok(m)
}

/// `T_n(e^{iθ})`, the nilpotent downshift.
pub fn unperturbed_shift(n: usize) -> Result<DenseMatrix> {
    toeplitz(&FourierSymbol::exponential(1), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_dca() -> DcaProblem {
        DcaProblem::diffusion(|_| 1.0)
            .with_convection(|_| 1.0)
            .with_reaction(|_| 1.0)
    }

    #[test]
    fn dca_symbol_direct_sum() {
        let s = dca_momentary(&unit_dca());
        let v = momentary_evaluate(&s, 9, &[PI / 2.0], Some(0.3)).unwrap();
        assert!((v - Complex64::new(2.01, 0.1)).norm() < 1e-14);
        let v = momentary_evaluate(&s, 99, &[PI], Some(0.5)).unwrap();
        assert!((v - Complex64::new(4.0 + 1e-4, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn x_required_when_present() {
        let s = dca_momentary(&unit_dca());
        assert!(matches!(
            momentary_evaluate(&s, 9, &[1.0], None),
            Err(Error::MissingVariable)
        ));
    }

    #[test]
    fn pure_diffusion_symbol_has_one_term() {
        let s = dca_momentary(&DcaProblem::diffusion(|x| 1.0 + x));
        assert_eq!(s.terms().len(), 1);
        let g = glt_limit(&dca_momentary(&unit_dca()));
        assert_eq!(g.terms().len(), 1);
        let v = momentary_evaluate(&g, 20, &[PI], Some(0.2)).unwrap();
        assert!((v - 4.0).norm() < 1e-14);
    }

    #[test]
    fn dca_assembly_laplacian() {
        let (x, rhs) = assemble_dca(&DcaProblem::diffusion(|_| 1.0).with_source(|_| 1.0), 3);
        let k = toeplitz(&FourierSymbol::laplacian(), 3).unwrap();
        assert_eq!(x, k);
        let h2 = 1.0 / 16.0;
        assert!(rhs.iter().all(|&r| (r - h2).abs() < 1e-16));
    }

    #[test]
    fn dca_assembly_convection() {
        let p = DcaProblem::diffusion(|_| 1.0).with_convection(|_| 1.0);
        let (x, _) = assemble_dca(&p, 3);
        let h = 0.25;
        for i in 0..3 {
            assert_eq!(x[(i, i)].re, 2.0);
        }
        for i in 0..2 {
            assert!((x[(i, i + 1)].re - (-1.0 + h / 2.0)).abs() < 1e-15);
            assert!((x[(i + 1, i)].re - (-1.0 - h / 2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn dca_boundary_corrections() {
        let p = DcaProblem::diffusion(|x| 1.0 + x)
            .with_convection(|x| 2.0 * x)
            .with_boundary(1.5, -0.5);
        let n = 4;
        let h = 0.2;
        let (_, rhs) = assemble_dca(&p, n);
        let a1 = 1.0 + h / 2.0;
        let a_last = 1.0 + (2 * n + 1) as f64 * h / 2.0;
        assert!((rhs[0] - (a1 * 1.5 + h / 2.0 * 2.0 * h * 1.5)).abs() < 1e-14);
        assert!((rhs[n - 1] - (a_last * -0.5 - h / 2.0 * 2.0 * n as f64 * h * -0.5)).abs() < 1e-14);
    }

    #[test]
    fn add_and_multiply() {
        let h = ScalingSequence::power("h", |n| 1.0 / n as f64, 1.0);
        let f0 = MomentarySymbol::from_symbol(FourierSymbol::laplacian());
        let f1 = MomentarySymbol::new(
            1,
            vec![SymbolTerm::univariate(h.clone(), FourierSymbol::backward_difference())],
        )
        .unwrap();
        let sum = momentary_combine(&f0, Combine::Add(&f1)).unwrap();
        let (n, t) = (10, 0.4);
        let expect = FourierSymbol::laplacian().eval(t) + 0.1 * FourierSymbol::backward_difference().eval(t);
        assert!((momentary_evaluate(&sum, n, &[t], None).unwrap() - expect).norm() < 1e-14);

        let sq = momentary_combine(&f1, Combine::Multiply(&f1)).unwrap();
        let live: Vec<_> = sq.terms().iter().filter(|t| !t.placeholder).collect();
        assert_eq!(live.len(), 1);
        assert_eq!(live[0].scaling.order(), 2.0);
        let fj = FourierSymbol::backward_difference().eval(t);
        assert!((momentary_evaluate(&sq, n, &[t], None).unwrap() - 0.01 * fj * fj).norm() < 1e-14);
    }

    #[test]
    fn scaling_out_the_mesh() {
        let reaction = MomentarySymbol::new(
            1,
            vec![SymbolTerm::univariate(
                ScalingSequence::power("h^2", dca_mesh, 2.0),
                FourierSymbol::constant(1.0),
            )
            .with_x(|x| 3.0 + x)],
        )
        .unwrap();
        let inv = ScalingSequence::power("1/h^2", dca_mesh, -2.0);
        let scaled = momentary_combine(&reaction, Combine::Scale(inv)).unwrap();
        let g = glt_limit(&scaled);
        let v = momentary_evaluate(&g, 50, &[0.3], Some(0.5)).unwrap();
        assert!((v - 3.5).norm() < 1e-12);

        let whole = dca_momentary(&unit_dca());
        let inv = ScalingSequence::power("1/h^2", dca_mesh, -2.0);
        assert!(matches!(
            momentary_combine(&whole, Combine::Scale(inv)),
            Err(Error::DivergentScaling(_))
        ));
    }

    #[test]
    fn ordering_of_dca_terms() {
        let s = dca_momentary(&unit_dca());
        let checks = verify_term_ordering(&s, &[100, 1000, 10000]);
        assert_eq!(checks.len(), 2);
        assert!(checks.iter().all(|c| c.decreasing));
    }

    #[test]
    fn incompatible_domains() {
        let one = MomentarySymbol::from_symbol(FourierSymbol::laplacian());
        let two = MomentarySymbol::new(
            2,
            vec![SymbolTerm::new(
                ScalingSequence::one(),
                MultiIndexSymbol::Separable(vec![FourierSymbol::laplacian(), FourierSymbol::laplacian()]),
            )],
        )
        .unwrap();
        assert!(matches!(
            momentary_combine(&one, Combine::Add(&two)),
            Err(Error::IncompatibleDomains(_))
        ));
    }

    #[test]
    fn shift_perturbation_entries() {
        let m = perturbed_shift(4, 1.0, None).unwrap();
        assert_eq!(m[(0, 3)].re, 0.25);
        assert_eq!(m[(1, 0)].re, 1.0);
        assert!(perturbed_shift(4, 0.0, None).is_err());
        let w = perturbed_shift(2, 1.0, Some(&|x: f64| 2.0 * x)).unwrap();
        assert_eq!(w[(1, 0)].re, 2.0);
        assert_eq!(w[(0, 1)].re, 0.5);
    }
}
