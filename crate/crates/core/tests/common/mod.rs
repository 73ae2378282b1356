#![allow(dead_code)]

use hecke_baxter::mc::{sample_orthogonal, RandomStream};
use hecke_baxter::{RealSquareMatrix, Signature, SpectralParams};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    RandomStream::new(seed, 77).rng()
}

pub fn sig(s: &str) -> Signature {
    s.parse().unwrap()
}

pub fn params(s: Complex64, c: f64, gamma: &[f64], eps: &str) -> SpectralParams {
    SpectralParams::new(s, c, gamma.to_vec(), sig(eps)).unwrap()
}

/// Entries uniform in [−2, 2], redrawn until |det| ≥ 10⁻³.
pub fn well_conditioned(n: usize, rng: &mut ChaCha8Rng) -> RealSquareMatrix {
    loop {
        let mut g = RealSquareMatrix::zeros(n);
        for x in g.as_mut_slice() {
            *x = rng.random_range(-2.0..2.0);
        }
        if g.det().abs() >= 1e-3 {
            return g;
        }
    }
}

/// Invertible lower-triangular matrix with diagonal entries of random sign
/// and modulus in [0.3, 3].
pub fn random_borel(n: usize, rng: &mut ChaCha8Rng) -> RealSquareMatrix {
    let mut b = RealSquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..i {
            b.set(i, j, rng.random_range(-1.5..1.5));
        }
        let d: f64 = rng.random_range(0.3..3.0);
        b.set(i, i, if rng.random::<bool>() { d } else { -d });
    }
    b
}

pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> RealSquareMatrix {
    sample_orthogonal(n, rng)
}

pub fn random_gamma(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.5..1.5)).collect()
}

pub fn random_signature(n: usize, rng: &mut ChaCha8Rng) -> Signature {
    Signature::from_mask(rng.random_range(0..(1u16 << n)), n)
}

pub fn sign_matrix(mask: u16, n: usize) -> RealSquareMatrix {
    let d: Vec<f64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 }).collect();
    RealSquareMatrix::from_diagonal(&d)
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
