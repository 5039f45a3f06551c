use std::f64::consts::PI;

use momentary::numerics::{general_eigenvalues, singular_values, symmetric_eigenvalues};
use momentary::spacetime::{
    assemble_scaled_spacetime, assemble_spacetime, exact_eigenvalues, exact_scaled_eigenvalues,
    exact_singular_values, frequency_block, nt2_singular_values, two_norm, two_norm_bounds,
    BoundaryCondition, SpaceTimeSystem,
};
use momentary::structured::{circulant, FourierSymbol};
use momentary::{Complex64, DenseMatrix};

const SIZES: [usize; 5] = [1, 2, 3, 5, 10];
const RATIOS: [f64; 3] = [0.125, 1.0, 8.0];

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn sorted_re(v: &[Complex64]) -> Vec<f64> {
    let mut out: Vec<f64> = v.iter().map(|z| z.re).collect();
    out.sort_by(f64::total_cmp);
    out
}

#[test]
fn eigenvalues_match_dense_solver_over_the_box() {
    for nt in SIZES {
        for nx in SIZES {
            for ch in RATIOS {
                let s = SpaceTimeSystem::with_ratio(nt, nx, ch).unwrap();
                let dense = general_eigenvalues(&assemble_spacetime(&s)).unwrap();
                assert!(dense.iter().all(|z| z.im.abs() <= 1e-9));
                let err = max_diff(&sorted_re(&dense), &exact_eigenvalues(&s));
                assert!(err <= 1e-9, "({nt},{nx},{ch}) err={err}");
            }
        }
    }
}

#[test]
fn singular_values_match_dense_svd_over_the_box() {
    for nt in SIZES {
        for nx in SIZES {
            for ch in RATIOS {
                let s = SpaceTimeSystem::with_ratio(nt, nx, ch).unwrap();
                let dense = singular_values(&assemble_scaled_spacetime(&s)).unwrap();
                let err = max_diff(&dense, &exact_singular_values(&s).unwrap());
                assert!(err <= 1e-10, "({nt},{nx},{ch}) err={err}");
            }
        }
    }
}

#[test]
fn two_step_closed_form_matches_block_solver() {
    for nx in SIZES {
        for ch in RATIOS {
            let s = SpaceTimeSystem::with_ratio(2, nx, ch).unwrap();
            for (k, l) in s.space_eigenvalues().into_iter().enumerate() {
                let (d, e) = frequency_block(l + ch, ch, 2);
                let block = DenseMatrix::from_real_rows(&[vec![d[0], e[0]], vec![e[0], d[1]]]);
                let ev = symmetric_eigenvalues(&block).unwrap();
                let (lo, hi) = nt2_singular_values(k, &s).unwrap();
                assert!((lo - ev[0].sqrt()).abs() <= 1e-12, "k={k} ch={ch}");
                assert!((hi - ev[1].sqrt()).abs() <= 1e-12, "k={k} ch={ch}");
            }
        }
    }
}

#[test]
fn unscaled_and_scaled_spectra_differ_by_the_space_step() {
    let s = SpaceTimeSystem::new(3, 4, 0.01, 0.25).unwrap();
    let h2 = s.hx * s.hx;
    let scaled: Vec<f64> = exact_eigenvalues(&s).iter().map(|l| l * h2).collect();
    assert!(max_diff(&scaled, &exact_scaled_eigenvalues(&s)) < 1e-12);
    assert!((s.ch - h2 / s.ht).abs() < 1e-14);
}

#[test]
fn bound_gap_shrinks_as_time_steps_grow() {
    for ch in RATIOS {
        let gaps: Vec<f64> = [1, 2, 5, 10, 100, 1000]
            .iter()
            .map(|&nt| {
                let b = two_norm_bounds(&SpaceTimeSystem::with_ratio(nt, 8, ch).unwrap()).unwrap();
                b.upper - b.lower
            })
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "ch={ch} {gaps:?}");
    }
}

#[test]
fn bounds_sandwich_the_norm_over_the_table_grid() {
    for nt in [1, 10, 100, 1000] {
        for ch in RATIOS {
            let s = SpaceTimeSystem::with_ratio(nt, 8, ch).unwrap();
            let b = two_norm_bounds(&s).unwrap();
            let norm = two_norm(&s).unwrap();
            assert!(b.lower < norm && norm < b.upper && b.upper <= b.max_bound, "({nt},{ch})");
        }
    }
}

// With a circulant in time as well the matrix is normal and its singular
// values are exactly the moduli of the symbol on the two circulant grids.
#[test]
fn time_periodic_variant_is_sampled_exactly() {
    for (nt, nx, ch) in [(4, 6, 1.0), (5, 3, 0.125), (3, 8, 8.0)] {
        let time = circulant(&FourierSymbol::backward_difference(), nt).unwrap();
        let space = circulant(&FourierSymbol::laplacian(), nx).unwrap();
        let m = &time.kron(&DenseMatrix::identity(nx)).scaled_real(ch)
            + &DenseMatrix::identity(nt).kron(&space);
        let sv = singular_values(&m).unwrap();
        let mut samples: Vec<f64> = (0..nt)
            .flat_map(|j| (0..nx).map(move |k| (j, k)))
            .map(|(j, k)| {
                let t = 2.0 * PI * j as f64 / nt as f64;
                let x = 2.0 * PI * k as f64 / nx as f64;
                (Complex64::new(ch, 0.0) * (1.0 - Complex64::from_polar(1.0, t))
                    + (2.0 - 2.0 * x.cos()))
                .norm()
            })
            .collect();
        samples.sort_by(f64::total_cmp);
        assert!(max_diff(&sv, &samples) < 1e-10, "({nt},{nx},{ch})");
    }
}

#[test]
fn dirichlet_space_uses_the_sine_grid() {
    let s = SpaceTimeSystem::with_ratio(4, 6, 1.0)
        .unwrap()
        .with_boundary(BoundaryCondition::Dirichlet);
    let m = assemble_scaled_spacetime(&s);
    let dense = general_eigenvalues(&m).unwrap();
    let mut want: Vec<f64> = (1..=6)
        .map(|k| 1.0 + 2.0 - 2.0 * (k as f64 * PI / 7.0).cos())
        .flat_map(|v| std::iter::repeat_n(v, 4))
        .collect();
    want.sort_by(f64::total_cmp);
    assert!(max_diff(&sorted_re(&dense), &want) < 1e-9);
    assert_eq!(exact_scaled_eigenvalues(&s), want);
    let sv = singular_values(&m).unwrap();
    assert!(max_diff(&sv, &exact_singular_values(&s).unwrap()) < 1e-10);
    assert!(two_norm_bounds(&s).is_err());
}
