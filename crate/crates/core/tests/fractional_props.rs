use std::f64::consts::PI;

use momentary::fractional::{
    assemble_distributed, distributed_momentary, error_report, expansion_coefficients,
    expansion_coefficients_on, fractional_coefficients, fractional_symbol, fractional_value,
    glt_sampling, interpolate_at, interpolate_expansion, mae_eigenvalues,
    momentary_sampling, DistributedOrderSpec,
};
use momentary::numerics::symmetric_eigenvalues;
use momentary::structured::{fourier_coefficients, toeplitz, FourierSymbol, QuadratureConfig};
use momentary::symbols::{glt_limit, momentary_evaluate};
use momentary::{Complex64, Error};
use proptest::prelude::*;

#[test]
fn closed_form_coefficients_match_quadrature() {
    for alpha in [1.25, 1.5, 1.75, 2.0] {
        let g = move |t: f64| Complex64::new(fractional_value(alpha, t), 0.0);
        let quad = fourier_coefficients(&g, 64, &QuadratureConfig::default()).unwrap();
        let closed = fractional_coefficients(alpha, 64).unwrap();
        for k in -64..=64i64 {
            let err = (quad[&k].re - closed[&k]).abs().max(quad[&k].im.abs());
            assert!(err <= 1e-10, "alpha={alpha} k={k} err={err}");
        }
    }
}

#[test]
fn integer_order_is_the_laplacian() {
    let c = fractional_coefficients(2.0, 3).unwrap();
    assert!((c[&0] - 2.0).abs() < 1e-14 && (c[&1] + 1.0).abs() < 1e-14);
    assert!(c[&2].abs() < 1e-15 && c[&-3].abs() < 1e-15);
    assert!(fractional_symbol(2.0).unwrap().is_polynomial());
}

#[test]
fn symbol_shape() {
    let g = fractional_symbol(1.75).unwrap();
    assert!((g.eval(PI).re - 2f64.powf(1.75)).abs() < 1e-14);
    assert_eq!(g.eval(0.0).re, 0.0);
    let v: Vec<f64> = (0..=1000).map(|i| g.eval(PI * i as f64 / 1000.0).re).collect();
    assert!(v.windows(2).all(|w| w[1] >= w[0]));
    for alpha in [1.0, 0.5, 2.5] {
        assert!(matches!(fractional_symbol(alpha), Err(Error::OrderOutOfRange(_))));
    }
}

#[test]
fn two_order_assembly() {
    let spec = DistributedOrderSpec::new(2).unwrap();
    let m = assemble_distributed(&spec, 100).unwrap();
    let g7 = fractional_coefficients(1.75, 99).unwrap();
    let g5 = fractional_coefficients(1.25, 99).unwrap();
    for (i, j) in [(0, 0), (3, 0), (0, 17), (50, 99)] {
        let k = (i as i64 - j as i64).abs();
        let want = g7[&k] + 0.1 * g5[&k];
        assert!((m[(i, j)].re - want).abs() < 1e-14, "({i},{j})");
    }
    let top = momentary_evaluate(&distributed_momentary(&spec).unwrap(), 100, &[PI], None).unwrap();
    assert!((top.re - (2f64.powf(1.75) + 0.1 * 2f64.powf(1.25))).abs() < 1e-13);
}

#[test]
fn single_order_needs_no_mesh_scaling() {
    let spec = DistributedOrderSpec::new(1).unwrap();
    let m = assemble_distributed(&spec, 12).unwrap();
    let t = toeplitz(&fractional_symbol(1.5).unwrap(), 12).unwrap();
    assert!(m.max_abs_diff(&t) < 1e-14);
}

#[test]
fn glt_limit_is_the_top_order() {
    let spec = DistributedOrderSpec::with_coefficients(vec![2.0, 0.5, 3.0]).unwrap();
    let glt = glt_limit(&distributed_momentary(&spec).unwrap());
    for t in [0.3, 1.0, 2.9] {
        let v = momentary_evaluate(&glt, 1000, &[t], None).unwrap().re;
        assert!((v - 3.0 * fractional_value(spec.order(3), t)).abs() < 1e-14);
    }
}

#[test]
fn coupled_order_scalings_follow_rational_exponents() {
    let n = 100;
    let spec = DistributedOrderSpec::new(n).unwrap();
    let sym = distributed_momentary(&spec).unwrap();
    for t in sym.terms() {
        let label = t.scaling.label().to_string();
        let v = t.scaling.value(n);
        assert!(v > 0.0 && v <= 1.0, "{label}");
    }
    assert_eq!(spec.mesh_power(n, 0, n), 1.0);
    assert!((spec.mesh_power(1, 0, n) - 100f64.powf(-0.99)).abs() < 1e-15);
}

#[test]
fn distributed_spectrum_is_bounded_by_the_symbol_maximum() {
    for (ell, n) in [(1, 20), (2, 64), (5, 50), (30, 30)] {
        let spec = DistributedOrderSpec::new(ell).unwrap();
        let m = assemble_distributed(&spec, n).unwrap();
        assert_eq!(m.hermitian_deviation(), 0.0);
        let ev = symmetric_eigenvalues(&m).unwrap();
        let bound: f64 = (1..=ell)
            .map(|i| spec.weight(i) * spec.mesh_power(i, 0, n) * 2f64.powf(spec.order(i)))
            .sum();
        assert!(ev[0] >= -1e-9 && ev[n - 1] <= bound + 1e-9, "ell={ell}");
    }
}

#[test]
fn single_level_expansion_is_the_momentary_sampling() {
    for ell in [1, 2, 5] {
        let spec = DistributedOrderSpec::new(ell).unwrap();
        assert_eq!(
            mae_eigenvalues(&spec, 100, 1, 10).unwrap(),
            momentary_sampling(&spec, 100).unwrap()
        );
    }
}

#[test]
fn mae_beats_momentary_beats_glt_on_the_interior() {
    for (ell, n) in [(2, 100), (5, 100), (100, 100), (5, 500)] {
        let spec = DistributedOrderSpec::new(ell).unwrap();
        let r = error_report(&spec, n, 4, 10).unwrap();
        assert!(
            r.mae.interior_mean < r.momentary.interior_mean
                && r.momentary.interior_mean < r.glt.interior_mean,
            "ell={ell} n={n}: {:?} {:?} {:?}",
            r.mae,
            r.momentary,
            r.glt
        );
    }
}

#[test]
fn single_order_expansion_improves_on_the_symbol() {
    let spec = DistributedOrderSpec::new(1).unwrap();
    let r = error_report(&spec, 200, 3, 10).unwrap();
    assert!(r.mae.interior_mean < 0.1 * r.glt.interior_mean);
    assert_eq!(glt_sampling(&spec, 200), momentary_sampling(&spec, 200).unwrap());
}

#[test]
fn laplacian_first_coefficient_is_stable_under_base_doubling() {
    let f = FourierSymbol::laplacian();
    for n1 in [10usize, 20, 40] {
        let coarse = expansion_coefficients(&f, 1, n1).unwrap();
        let fine = expansion_coefficients(&f, 1, 2 * n1).unwrap();
        // shared points are the odd-numbered fine points
        let diff = (0..n1)
            .map(|j| (coarse.samples(1)[j] - fine.samples(1)[2 * j + 1]).abs())
            .fold(0.0, f64::max);
        assert!(diff < 6.0 / n1 as f64, "n1={n1} diff={diff}");
        // w̃_1 = -θ f'(θ) + O(h) with f' = 2 sin θ
        for (j, &t) in fine.base_grid().iter().enumerate() {
            let err = (fine.samples(1)[j] + 2.0 * t * t.sin()).abs();
            assert!(err < 6.0 / n1 as f64, "n1={n1} j={j} err={err}");
        }
    }
}

// residual of the fitted model on the next nested grid, at the shared base
// points away from the cusp and the far end
fn next_grid_residual(f: &FourierSymbol, nu: usize, n1: usize, points: &[f64]) -> f64 {
    let table = expansion_coefficients(f, nu, n1).unwrap();
    let n = n1 << nu;
    let h = 1.0 / n as f64;
    let ev = symmetric_eigenvalues(&toeplitz(f, n).unwrap()).unwrap();
    points
        .iter()
        .map(|&t| {
            let j = (t * n as f64 / PI).round() as usize;
            let model: f64 = (0..=nu)
                .map(|k| h.powi(k as i32) * interpolate_at(&table, k, t).unwrap())
                .sum();
            (ev[j - 1] - model).abs()
        })
        .sum::<f64>()
        / points.len() as f64
}

#[test]
fn expansion_residual_decays_faster_than_the_model() {
    let points: Vec<f64> = (2..=8).map(|j| j as f64 * PI / 10.0).collect();
    for f in [FourierSymbol::laplacian(), fractional_symbol(1.75).unwrap()] {
        let r: Vec<f64> = [10, 20, 40].iter().map(|&n1| next_grid_residual(&f, 2, n1, &points)).collect();
        assert!(r[0] / r[1] >= 1.5 && r[1] / r[2] >= 1.5, "{r:?}");
    }
}

#[test]
fn interpolated_coefficient_agrees_with_a_finer_base() {
    let f = FourierSymbol::laplacian();
    let mut diffs = Vec::new();
    for n1 in [10usize, 20, 40] {
        let coarse = expansion_coefficients(&f, 3, n1).unwrap();
        let fine = expansion_coefficients(&f, 3, 2 * n1).unwrap();
        let w = interpolate_expansion(&coarse, 10 * n1).unwrap();
        let diff = (1..=2 * n1)
            .map(|j| (w[1][5 * j - 1] - fine.samples(1)[j - 1]).abs())
            .fold(0.0, f64::max);
        assert!(diff < 2.0 / (n1 * n1) as f64, "n1={n1} diff={diff}");
        diffs.push(diff);
    }
    assert!(diffs[0] / diffs[1] > 4.0 && diffs[1] / diffs[2] > 4.0, "{diffs:?}");
}

#[test]
fn interpolation_reproduces_nodes_and_linear_data() {
    let table = expansion_coefficients(&fractional_symbol(1.5).unwrap(), 3, 12).unwrap();
    for (j, &t) in table.base_grid().iter().enumerate() {
        for k in 0..=3 {
            assert_eq!(interpolate_at(&table, k, t).unwrap(), table.samples(k)[j]);
        }
    }
    assert!(interpolate_at(&table, 0, 0.0).is_err());
    assert!(interpolate_at(&table, 0, 3.2).is_err());
    let flat = expansion_coefficients(&FourierSymbol::constant(2.5), 2, 8).unwrap();
    for t in [0.05, 1.3, 3.0] {
        assert!((interpolate_at(&flat, 0, t).unwrap() - 2.5).abs() < 1e-14);
    }
}

#[test]
fn non_nested_or_non_monotone_inputs_are_rejected() {
    let f = FourierSymbol::laplacian();
    assert!(matches!(
        expansion_coefficients_on(&f, &[10, 21]),
        Err(Error::GridNotNested(_))
    ));
    let wavy = FourierSymbol::real_trigonometric(&[(0, 3.0), (2, -1.0), (-2, -1.0)]);
    assert!(matches!(expansion_coefficients(&wavy, 2, 10), Err(Error::NotMonotone)));
    let spec = DistributedOrderSpec::new(2).unwrap();
    assert!(mae_eigenvalues(&spec, 80, 4, 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficients_are_even_with_negative_tail(alpha in 1.01f64..=2.0) {
        let c = fractional_coefficients(alpha, 40).unwrap();
        for k in 1..=40i64 {
            prop_assert_eq!(c[&k], c[&-k]);
        }
        // ĝ_0 > 0 and all other coefficients are negative
        prop_assert!(c[&0] > 0.0);
        prop_assert!((1..=40i64).all(|k| c[&k] <= 0.0));
    }

    #[test]
    fn interpolation_of_a_constant_symbol_is_flat(c in -3.0f64..3.0, t in 0.01f64..PI) {
        let table = expansion_coefficients(&FourierSymbol::constant(c), 2, 9).unwrap();
        prop_assert!((interpolate_at(&table, 0, t).unwrap() - c).abs() < 1e-12 * (1.0 + c.abs()));
        prop_assert!(interpolate_at(&table, 1, t).unwrap().abs() < 1e-8);
    }
}
