mod common;

use common::*;
use hecke_baxter::{borel_character, cartan_decompose, iwasawa_decompose, RealSquareMatrix};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn reconstruction_on_random_matrices() {
    let mut rng = rng(1);
    for trial in 0..1000 {
        let n = 1 + trial % 4;
        let g = well_conditioned(n, &mut rng);
        let norm = g.frobenius_norm();
        let iw = iwasawa_decompose(&g).unwrap();
        assert!(iw.reconstruct().sub(&g).frobenius_norm() <= 1e-12 * norm, "iwasawa {g:?}");
        assert!(iw.k.orthogonality_defect() <= 1e-12);
        assert!(iw.a.iter().all(|&x| x > 0.0));
        let ca = cartan_decompose(&g).unwrap();
        assert!(ca.reconstruct().sub(&g).frobenius_norm() <= 1e-12 * norm, "cartan {g:?}");
        assert!(ca.k1.orthogonality_defect() <= 1e-12 && ca.k2.orthogonality_defect() <= 1e-12);
        assert!(ca.a.windows(2).all(|w| w[0] >= w[1]) && ca.a[n - 1] > 0.0);
    }
}

#[test]
fn iwasawa_round_trip() {
    let mut rng = rng(2);
    for trial in 0..200 {
        let n = 1 + trial % 4;
        let k = random_orthogonal(n, &mut rng);
        let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.3..3.0)).collect();
        let mut unip = RealSquareMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                unip.set(i, j, rng.random_range(-1.5..1.5));
            }
        }
        let g = k.mul(&unip.scale_rows(&a));
        let f = iwasawa_decompose(&g).unwrap();
        assert!(f.k.max_abs_diff(&k) <= 1e-10);
        assert!(f.n_factor.max_abs_diff(&unip) <= 1e-10);
        for (x, y) in f.a.iter().zip(&a) {
            assert!((x - y).abs() <= 1e-10);
        }
    }
}

#[test]
fn torus_part_is_left_orthogonal_invariant() {
    let mut rng = rng(3);
    for trial in 0..200 {
        let n = 1 + trial % 4;
        let g = well_conditioned(n, &mut rng);
        let q = random_orthogonal(n, &mut rng);
        let a = iwasawa_decompose(&g).unwrap().a;
        let qa = iwasawa_decompose(&q.mul(&g)).unwrap().a;
        for (x, y) in a.iter().zip(&qa) {
            assert!((x - y).abs() <= 1e-10 * x.max(1.0));
        }
    }
}

#[test]
fn borel_character_multiplicative() {
    let mut rng = rng(4);
    for trial in 0..200 {
        let n = 1 + trial % 4;
        let gamma = random_gamma(n, &mut rng);
        let eps = random_signature(n, &mut rng);
        let p = hecke_baxter::SpectralParams::new(Complex64::new(2.0, 0.0), 1.0, gamma, eps).unwrap();
        let b1 = random_borel(n, &mut rng);
        let b2 = random_borel(n, &mut rng);
        let lhs = borel_character(&p, &b1.mul(&b2)).unwrap();
        let rhs = borel_character(&p, &b1).unwrap() * borel_character(&p, &b2).unwrap();
        assert!(rel_err(lhs, rhs) <= 1e-12, "{lhs} vs {rhs}");
    }
}

#[test]
fn singular_and_non_finite_inputs() {
    let z = RealSquareMatrix::zeros(3);
    assert!(iwasawa_decompose(&z).is_err());
    assert!(cartan_decompose(&z).is_err());
    let mut g = RealSquareMatrix::identity(2);
    g.set(1, 0, f64::NAN);
    assert!(iwasawa_decompose(&g).is_err());
    assert!(cartan_decompose(&g).is_err());
}

fn matrix_strategy() -> impl Strategy<Value = RealSquareMatrix> {
    (1usize..=4)
        .prop_flat_map(|n| prop::collection::vec(-3.0f64..3.0, n * n))
        .prop_map(|v| RealSquareMatrix::from_flat(&v).unwrap())
        .prop_filter("well conditioned", |g| g.det().abs() > 1e-2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cartan_values_are_singular_values(g in matrix_strategy()) {
        let f = cartan_decompose(&g).unwrap();
        // Σσ² = ‖g‖²_F and ∏σ = |det g|.
        let sum_sq: f64 = f.a.iter().map(|x| x * x).sum();
        prop_assert!((sum_sq - g.trace_gram()).abs() <= 1e-10 * g.trace_gram());
        let prod: f64 = f.a.iter().product();
        prop_assert!((prod - g.det().abs()).abs() <= 1e-10 * prod.max(1.0));
    }

    #[test]
    fn iwasawa_torus_determines_determinant(g in matrix_strategy()) {
        let f = iwasawa_decompose(&g).unwrap();
        let prod: f64 = f.a.iter().product();
        prop_assert!((prod - g.det().abs()).abs() <= 1e-10 * prod.max(1.0));
        for i in 0..g.dim() {
            prop_assert_eq!(f.n_factor.get(i, i), 1.0);
            for j in i + 1..g.dim() {
                prop_assert_eq!(f.n_factor.get(i, j), 0.0);
            }
        }
    }
}
