use std::f64::consts::PI;

use momentary::numerics::general_eigenvalues;
use momentary::structured::{
    circulant, circulant_eigenvalues, fourier_coefficients, fourier_matrix, tensor_toeplitz,
    toeplitz, FourierSymbol, QuadratureConfig,
};
use momentary::fractional::fractional_coefficients;
use momentary::{Complex64, DenseMatrix};
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn reconstruct(f: &FourierSymbol, n: usize) -> DenseMatrix {
    let d = DenseMatrix::from_diagonal(&circulant_eigenvalues(f, n).unwrap());
    let fm = fourier_matrix(n);
    &(&fm * &d) * &fm.adjoint()
}

#[test]
fn laplacian_circulant_reconstructs_from_fourier_matrix() {
    let f = FourierSymbol::laplacian();
    for n in [4, 16, 64] {
        let err = circulant(&f, n).unwrap().max_abs_diff(&reconstruct(&f, n));
        assert!(err <= 1e-10, "n={n} err={err}");
    }
}

#[test]
fn backward_difference_circulant_spectrum_matches_dense() {
    let f = FourierSymbol::backward_difference();
    let mut dense = general_eigenvalues(&circulant(&f, 8).unwrap()).unwrap();
    for g in circulant_eigenvalues(&f, 8).unwrap() {
        let (pos, dist) = dense
            .iter()
            .enumerate()
            .map(|(i, d)| (i, (d - g).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert!(dist < 1e-10, "{g} unmatched");
        dense.swap_remove(pos);
    }
}

#[test]
fn kronecker_of_difference_factors_matches_naive_loop() {
    let fj = FourierSymbol::backward_difference();
    let fq = FourierSymbol::laplacian();
    let m = tensor_toeplitz(&[fj.clone(), fq.clone()], &[2, 2]).unwrap();
    let a = toeplitz(&fj, 2).unwrap();
    let b = toeplitz(&fq, 2).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let want = a[(i / 2, j / 2)] * b[(i % 2, j % 2)];
            assert_eq!(m[(i, j)], want, "({i},{j})");
        }
    }
}

#[test]
fn fractional_order_quadrature_matches_closed_form() {
    let g = |t: f64| c((2.0 - 2.0 * t.cos()).powf(7.0 / 8.0));
    let quad = fourier_coefficients(&g, 32, &QuadratureConfig::default()).unwrap();
    let closed = fractional_coefficients(1.75, 32).unwrap();
    for k in -32..=32 {
        assert!((quad[&k].re - closed[&k]).abs() < 1e-10, "k={k}");
    }
}

#[test]
fn quadrature_recovers_trigonometric_coefficients() {
    let f = |t: f64| c(2.0 - 2.0 * t.cos());
    let map = fourier_coefficients(&f, 4, &QuadratureConfig::default()).unwrap();
    for k in -4..=4i64 {
        let want = match k {
            0 => 2.0,
            1 | -1 => -1.0,
            _ => 0.0,
        };
        assert!((map[&k] - c(want)).norm() < 1e-12, "k={k}");
    }
}

fn trig_symbol(coefs: &[(f64, f64)]) -> FourierSymbol {
    let deg = coefs.len() as i64 / 2;
    FourierSymbol::trigonometric(
        coefs
            .iter()
            .enumerate()
            .map(|(i, &(re, im))| (i as i64 - deg, Complex64::new(re, im))),
    )
}

proptest! {
    #[test]
    fn toeplitz_and_circulant_differ_only_in_corners(
        coefs in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..=7),
        extra in 1usize..12,
    ) {
        let f = trig_symbol(&coefs);
        let d = f.degree().unwrap();
        let n = 2 * d + extra;
        let diff = &circulant(&f, n).unwrap() - &toeplitz(&f, n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let corner = (i < d && j >= n - d) || (i >= n - d && j < d);
                if !corner {
                    prop_assert!(diff[(i, j)].norm() < 1e-15, "({}, {})", i, j);
                }
            }
        }
    }

    #[test]
    fn tensor_products_associate(
        n1 in 1usize..4, n2 in 1usize..4, n3 in 1usize..4,
        a in -2.0f64..2.0, b in -2.0f64..2.0,
    ) {
        let f = FourierSymbol::real_trigonometric(&[(0, a), (1, b)]);
        let g = FourierSymbol::laplacian();
        let h = FourierSymbol::backward_difference();
        let (tf, tg, th) = (toeplitz(&f, n1).unwrap(), toeplitz(&g, n2).unwrap(), toeplitz(&h, n3).unwrap());
        let left = tf.kron(&tg).kron(&th);
        let right = tf.kron(&tg.kron(&th));
        prop_assert!(left.max_abs_diff(&right) == 0.0);
        let direct = tensor_toeplitz(&[f, g, h], &[n1, n2, n3]).unwrap();
        prop_assert!(direct.max_abs_diff(&left) == 0.0);
    }

    #[test]
    fn toeplitz_is_hermitian_exactly_for_real_symbols(
        re in prop::collection::vec(-3.0f64..3.0, 3),
        im in -3.0f64..3.0,
        n in 2usize..9,
    ) {
        let real = FourierSymbol::real_trigonometric(&[(-1, re[0]), (0, re[1]), (1, re[0])]);
        prop_assert!(real.parity().real);
        prop_assert!(toeplitz(&real, n).unwrap().hermitian_deviation() == 0.0);
        prop_assume!(im.abs() > 1e-3);
        let complex = FourierSymbol::trigonometric([
            (-1, Complex64::new(re[0], im)),
            (0, c(re[1])),
            (1, Complex64::new(re[2], im)),
        ]);
        prop_assert!(!complex.parity().real);
        prop_assert!(toeplitz(&complex, n).unwrap().hermitian_deviation() > 1e-3);
    }

    #[test]
    fn circulant_reconstruction_for_even_real_symbols(
        a in -3.0f64..3.0, b in -3.0f64..3.0, d in -3.0f64..3.0, n in 5usize..20,
    ) {
        let f = FourierSymbol::real_trigonometric(&[(-2, d), (-1, b), (0, a), (1, b), (2, d)]);
        prop_assert!(circulant(&f, n).unwrap().max_abs_diff(&reconstruct(&f, n)) <= 1e-10);
    }

    #[test]
    fn evaluator_agrees_with_coefficients(
        coefs in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..=9),
        theta in -PI..PI,
    ) {
        let f = trig_symbol(&coefs);
        let deg = coefs.len() as i64 / 2;
        let direct: Complex64 = coefs
            .iter()
            .enumerate()
            .map(|(i, &(re, im))| Complex64::new(re, im) * Complex64::from_polar(1.0, (i as i64 - deg) as f64 * theta))
            .sum();
        prop_assert!((f.eval(theta) - direct).norm() < 1e-12);
        prop_assert!(f.consistency_error(deg as usize).unwrap() < 1e-10);
    }
}
