mod common;

use common::*;
use hecke_baxter::exterior::minor_expansion;
use hecke_baxter::fourier::{
    extrapolate_eps, feynman_phase_check, fourier_monomial_gaussian, fourier_numeric_1d, verify_modified_gaussian_identity,
    Regularization, TestFunction,
};
use hecke_baxter::{delta_w_polynomial, MultilinearPolynomial, RealSquareMatrix};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn i() -> Complex64 {
    Complex64::i()
}

/// A random squarefree polynomial in the entries of an n×n matrix.
fn random_polynomial(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> MultilinearPolynomial {
    let terms: Vec<(Vec<(usize, usize)>, Complex64)> = (0..6)
        .map(|_| {
            let mask: u64 = rng.random_range(0..(1u64 << (n * n)));
            let entries = (0..n * n).filter(|b| mask >> b & 1 == 1).map(|b| (b / n, b % n)).collect();
            (entries, Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
        })
        .collect();
    MultilinearPolynomial::from_monomials(n, terms).unwrap()
}

#[test]
fn transform_is_evaluation_at_i_times_argument() {
    let mut rng = rng(30);
    for trial in 0..100 {
        let n = 1 + trial % 4;
        let p = random_polynomial(n, &mut rng);
        let fp = fourier_monomial_gaussian(&p, n).unwrap();
        let g = well_conditioned(n, &mut rng);
        let a = fp.evaluate(&g).unwrap();
        let b = p.evaluate_scaled(&g, i()).unwrap();
        assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0), "{a} vs {b}");
    }
}

#[test]
fn double_transform_is_parity() {
    let mut rng = rng(31);
    for n in 1..=4 {
        let p = random_polynomial(n, &mut rng);
        let twice = fourier_monomial_gaussian(&fourier_monomial_gaussian(&p, n).unwrap(), n).unwrap();
        let parity = p.map_by_degree(|d, c| if d % 2 == 0 { c } else { -c });
        assert_eq!(twice.max_coefficient_diff(&parity), 0.0);
    }
}

#[test]
fn modified_gaussian_identity_exact() {
    for n in 1..=4 {
        assert!(verify_modified_gaussian_identity(n).unwrap() <= 1e-12, "n = {n}");
    }
    // n = 1: 1 + x ↦ 1 + i·y.
    let t = fourier_monomial_gaussian(&delta_w_polynomial(1).unwrap(), 1).unwrap();
    assert_eq!(t.max_coefficient_diff(&minor_expansion(1, i()).unwrap()), 0.0);
}

#[test]
fn numeric_gaussians_match_rule() {
    for y in [-1.7, -0.4, 0.0, 0.25, 0.9, 1.5] {
        for f in [TestFunction::Gaussian, TestFunction::XGaussian] {
            let num = fourier_numeric_1d(f, y, 0.0).unwrap();
            // The rule: 1 ↦ e^{−πy²}, x ↦ i·y·e^{−πy²}.
            let rule = match f {
                TestFunction::Gaussian => Complex64::new((-std::f64::consts::PI * y * y).exp(), 0.0),
                _ => i() * y * (-std::f64::consts::PI * y * y).exp(),
            };
            assert!((num.value - rule).norm() <= 1e-6, "{f:?} at {y}");
            assert!(num.tail_bound <= 1e-20);
        }
    }
}

#[test]
fn regularized_feynman_matches_closed_form() {
    for eps in [1e-1, 1e-2, 1e-3] {
        for y in [-1.0, 0.0, 0.45] {
            for f in [TestFunction::Feynman, TestFunction::XFeynman] {
                let num = fourier_numeric_1d(f, y, eps).unwrap().value;
                let exact = f.exact_regularized(y, eps);
                assert!((num - exact).norm() <= 1e-8, "{f:?} eps={eps} y={y}");
            }
        }
    }
}

#[test]
fn extrapolation_converges_to_limit() {
    for y in [-0.7, 0.2] {
        for f in [TestFunction::Feynman, TestFunction::XFeynman] {
            let v = extrapolate_eps(f, y, 1e-2, 1e-3).unwrap();
            assert!((v - f.exact(y)).norm() <= 1e-4, "{f:?} at {y}");
        }
    }
}

#[test]
fn feynman_phase_small_n() {
    let pts1: Vec<RealSquareMatrix> = [0.0, 0.3, -0.6].iter().map(|&y| RealSquareMatrix::from_flat(&[y]).unwrap()).collect();
    let r = feynman_phase_check(1, Regularization::Fixed(1e-3), &pts1, 1e-2).unwrap();
    assert!(r.pass, "{r:?}");
    assert!((r.expected_phase + std::f64::consts::PI / 4.0).abs() < 1e-15);
    // At y = 0 the measured phase is the global phase itself.
    assert!((r.points[0].measured_phase - r.expected_phase).abs() < 1e-2);

    let pts2 = vec![RealSquareMatrix::zeros(2), RealSquareMatrix::from_flat(&[0.2, -0.1, 0.4, 0.3]).unwrap()];
    let r = feynman_phase_check(2, Regularization::Fixed(1e-3), &pts2, 1e-2).unwrap();
    assert!(r.pass, "{r:?}");
    // e^{−iπ·4/4} = −1.
    assert!((r.expected_phase.abs() - std::f64::consts::PI).abs() < 1e-15);
}

#[test]
fn feynman_regularization_is_the_dominant_error() {
    let pts = vec![RealSquareMatrix::from_flat(&[0.2, -0.1, 0.4, 0.3]).unwrap()];
    let fixed = feynman_phase_check(2, Regularization::Fixed(1e-3), &pts, 1e-2).unwrap();
    let extrapolated = feynman_phase_check(2, Regularization::Extrapolated, &pts, 1e-2).unwrap();
    assert!(extrapolated.points[0].abs_error < fixed.points[0].abs_error / 10.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_is_linear(seed in any::<u64>(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let mut rng = rng(seed);
        let n = 2;
        let p = random_polynomial(n, &mut rng);
        let q = random_polynomial(n, &mut rng);
        let combo = p.map_by_degree(|_, c| c * a);
        let combo_terms: Vec<(Vec<(usize, usize)>, Complex64)> = combo
            .terms()
            .chain(q.map_by_degree(|_, c| c * b).terms())
            .map(|(m, c)| (combo.entries_of(m), c))
            .collect();
        let sum = MultilinearPolynomial::from_monomials(n, combo_terms).unwrap();
        let lhs = fourier_monomial_gaussian(&sum, n).unwrap();
        let fp = fourier_monomial_gaussian(&p, n).unwrap();
        let fq = fourier_monomial_gaussian(&q, n).unwrap();
        let g = well_conditioned(n, &mut rng);
        let l = lhs.evaluate(&g).unwrap();
        let r = fp.evaluate(&g).unwrap() * a + fq.evaluate(&g).unwrap() * b;
        prop_assert!((l - r).norm() <= 1e-10 * r.norm().max(1.0));
    }
}
