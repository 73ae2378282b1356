//! Principal-series data and the character of the lower-triangular Borel
//! subgroup.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{RealSquareMatrix, MAX_DIM};
use crate::signature::Signature;

/// `(s, c, γ, ε)`: a principal series representation together with the
/// auxiliary L-factor variable `s` and Gaussian rate `c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralParams {
    pub s: Complex64,
    pub c: f64,
    pub gamma: Vec<f64>,
    pub epsilon: Signature,
}

impl SpectralParams {
    pub fn new(s: Complex64, c: f64, gamma: Vec<f64>, epsilon: Signature) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::invalid("c", format!("must be a positive real, got {c}")));
        }
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::invalid("s", "must be finite"));
        }
        if gamma.len() != epsilon.len() {
            return Err(Error::invalid(
                "gamma",
                format!(
                    "length {} differs from epsilon length {}",
                    gamma.len(),
                    epsilon.len()
                ),
            ));
        }
        if gamma.len() > MAX_DIM {
            return Err(Error::DimensionTooLarge {
                n: gamma.len(),
                max: MAX_DIM,
            });
        }
        if gamma.iter().any(|g| !g.is_finite()) {
            return Err(Error::invalid("gamma", "entries must be finite"));
        }
        Ok(Self {
            s,
            c,
            gamma,
            epsilon,
        })
    }

    /// Spherical data `ε = 0`, `γ = 0`, `c = 1`, real `s`.
    pub fn trivial(n: usize, s: f64) -> Self {
        Self::new(Complex64::new(s, 0.0), 1.0, vec![0.0; n], Signature::zero(n)).unwrap()
    }

    pub fn with_epsilon(&self, epsilon: Signature) -> Result<Self> {
        Self::new(self.s, self.c, self.gamma.clone(), epsilon)
    }

    pub fn with_s(&self, s: Complex64) -> Result<Self> {
        Self::new(s, self.c, self.gamma.clone(), self.epsilon)
    }

    /// Matrix dimension `n = ℓ + 1`.
    #[inline]
    pub fn dim(&self) -> usize {
        self.gamma.len()
    }

    /// ℓ = n − 1.
    #[inline]
    pub fn ell(&self) -> usize {
        self.dim() - 1
    }

    pub fn rho(&self) -> Vec<f64> {
        rho(self.dim())
    }
}

/// ρ_j = ℓ/2 + 1 − j for j = 1..n.
pub fn rho(n: usize) -> Vec<f64> {
    let ell = (n - 1) as f64;
    (1..=n).map(|j| ell / 2.0 + 1.0 - j as f64).collect()
}

/// χ^B_{ε,γ}(b) = ∏ sign(b_jj)^{ε_j} |b_jj|^{iγ_j + ρ_j} for lower-triangular `b`.
pub fn borel_character(p: &SpectralParams, b: &RealSquareMatrix) -> Result<Complex64> {
    if b.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: b.dim(),
        });
    }
    if !b.is_finite() {
        return Err(Error::NonFinite {
            what: "Borel element",
        });
    }
    b.check_lower_triangular()?;
    let rho = p.rho();
    let mut log = Complex64::new(0.0, 0.0);
    let mut sign = 1.0;
    for j in 0..p.dim() {
        let d = b.get(j, j);
        if d == 0.0 {
            return Err(Error::ZeroDiagonal { index: j });
        }
        if d < 0.0 && p.epsilon.bit(j) == 1 {
            sign = -sign;
        }
        log += Complex64::new(rho[j], p.gamma[j]) * d.abs().ln();
    }
    Ok(sign * log.exp())
}

/// χ^B_γ on a positive diagonal: ∏ a_j^{iγ_j + ρ_j}.
#[inline]
pub(crate) fn torus_character(gamma: &[f64], rho: &[f64], a: &[f64]) -> Complex64 {
    let mut log = Complex64::new(0.0, 0.0);
    for j in 0..a.len() {
        log += Complex64::new(rho[j], gamma[j]) * a[j].ln();
    }
    log.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(gamma: &[f64], eps: &str) -> SpectralParams {
        SpectralParams::new(
            Complex64::new(2.0, 0.0),
            1.0,
            gamma.to_vec(),
            eps.parse().unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(1), vec![0.0]);
        assert_eq!(rho(2), vec![0.5, -0.5]);
        assert_eq!(rho(3), vec![1.0, 0.0, -1.0]);
        for n in 1..=8 {
            let r = rho(n);
            assert!(r.windows(2).all(|w| w[0] - w[1] == 1.0));
            assert!(r.iter().sum::<f64>().abs() < 1e-15);
        }
    }

    #[test]
    fn identity_gives_one() {
        let p = params(&[0.3, -1.1, 0.4], "101");
        let v = borel_character(&p, &RealSquareMatrix::identity(3)).unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn sign_factor() {
        let p = params(&[0.0, 0.0], "10");
        let b = RealSquareMatrix::from_diagonal(&[-1.0, 1.0]);
        assert_eq!(borel_character(&p, &b).unwrap(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn spherical_diagonal() {
        let (g1, g2) = (0.7, -0.2);
        let (a1, a2) = (1.7, 0.4);
        let p = params(&[g1, g2], "00");
        let b = RealSquareMatrix::from_diagonal(&[a1, a2]);
        let v = borel_character(&p, &b).unwrap();
        let expected = Complex64::new(0.5, g1).expf(a1) * Complex64::new(-0.5, g2).expf(a2);
        assert!((v - expected).norm() < 1e-15);
    }

    #[test]
    fn errors() {
        let p = params(&[0.0, 0.0], "00");
        let mut b = RealSquareMatrix::from_diagonal(&[1.0, 0.0]);
        assert_eq!(borel_character(&p, &b), Err(Error::ZeroDiagonal { index: 1 }));
        b.set(1, 1, 1.0);
        b.set(0, 1, 0.3);
        assert!(matches!(
            borel_character(&p, &b),
            Err(Error::NotLowerTriangular { .. })
        ));
        assert!(SpectralParams::new(Complex64::new(1.0, 0.0), -1.0, vec![0.0], Signature::zero(1)).is_err());
        assert!(SpectralParams::new(Complex64::new(1.0, 0.0), 1.0, vec![0.0], Signature::zero(2)).is_err());
    }
}
