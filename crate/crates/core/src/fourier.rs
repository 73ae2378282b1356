//! Fourier transforms of Gaussian and imaginary-Gaussian (Feynman) measures
//! on matrix space, with `(Ff)(y) = ∫ e^{2πi·tr(xᵀy)} f(x) dx`.
//!
//! For a multilinear polynomial `P`, the transform of `P(x)·e^{−π tr xᵀx}`
//! is `P(iy)·e^{−π tr yᵀy}`: the integral factorizes over entries and each
//! entry contributes either `e^{−πy²}` or `iy·e^{−πy²}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{delta_w, delta_w_polynomial, minor_expansion, MultilinearPolynomial};
use crate::matrix::RealSquareMatrix;
use crate::quadrature::{integrate_panels, QuadratureOptions};

/// Largest n for the exact coefficient identity.
pub const MAX_EXACT_DIM: usize = 4;
/// Largest n for the numeric imaginary-Gaussian check.
pub const MAX_NUMERIC_DIM: usize = 2;
/// Truncation `|x| ≤ √(64/d)` for an envelope `e^{−d x²}`.
const ENVELOPE_EXPONENT: f64 = 64.0;

/// Transform of `poly · e^{−π tr xᵀx}`, returned as the polynomial that
/// multiplies `e^{−π tr yᵀy}`: each degree-d term is scaled by `iᵈ`.
pub fn fourier_monomial_gaussian(poly: &MultilinearPolynomial, n: usize) -> Result<MultilinearPolynomial> {
    if poly.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: poly.dim(),
        });
    }
    Ok(poly.map_by_degree(|d, c| c * Complex64::i().powu(d)))
}

/// Max coefficient difference between the transform of the Δ_W-modified
/// Gaussian and the expansion of `Δ_W(i·y)`, built independently by
/// scaling each matrix entry by `i` inside the minors.
pub fn verify_modified_gaussian_identity(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if n > MAX_EXACT_DIM {
        return Err(Error::DimensionTooLarge { n, max: MAX_EXACT_DIM });
    }
    let transformed = fourier_monomial_gaussian(&delta_w_polynomial(n)?, n)?;
    let expected = minor_expansion(n, Complex64::i())?;
    Ok(transformed.max_coefficient_diff(&expected))
}

/// One-dimensional test functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFunction {
    /// e^{−πx²}
    Gaussian,
    /// x·e^{−πx²}
    XGaussian,
    /// e^{−iπx²}
    Feynman,
    /// x·e^{−iπx²}
    XFeynman,
}

impl TestFunction {
    fn quadratic(self) -> Complex64 {
        match self {
            TestFunction::Gaussian | TestFunction::XGaussian => Complex64::new(PI, 0.0),
            TestFunction::Feynman | TestFunction::XFeynman => Complex64::new(0.0, PI),
        }
    }

    fn has_x(self) -> bool {
        matches!(self, TestFunction::XGaussian | TestFunction::XFeynman)
    }

    fn oscillatory(self) -> bool {
        matches!(self, TestFunction::Feynman | TestFunction::XFeynman)
    }

    /// Closed-form transform of `f(x)·e^{−ε x²}`: with `q = a + ε`,
    /// `√(π/q)·e^{−π²y²/q}`, times `iπy/q` for the `x·` variants.
    pub fn exact_regularized(self, y: f64, eps_reg: f64) -> Complex64 {
        let q = self.quadratic() + eps_reg;
        let base = (PI / q).sqrt() * (-(PI * PI * y * y) / q).exp();
        if self.has_x() {
            base * Complex64::new(0.0, PI * y) / q
        } else {
            base
        }
    }

    /// The ε → 0 limit of [`TestFunction::exact_regularized`].
    pub fn exact(self, y: f64) -> Complex64 {
        self.exact_regularized(y, 0.0)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct NumericTransform {
    pub value: Complex64,
    pub quadrature_error: f64,
    /// Bound on the two discarded tails `|x| > cutoff`.
    pub tail_bound: f64,
    pub cutoff: f64,
}

/// ∫ e^{2πixy} f(x) e^{−ε x²} dx over `|x| ≤ 8/√(Re a + ε)`, where `a` is
/// the quadratic coefficient of `f`.
pub fn fourier_numeric_1d(f: TestFunction, y: f64, eps_reg: f64) -> Result<NumericTransform> {
    if !y.is_finite() {
        return Err(Error::invalid("y", "must be finite"));
    }
    if !(eps_reg.is_finite() && eps_reg >= 0.0) {
        return Err(Error::invalid("eps_reg", format!("must be non-negative, got {eps_reg}")));
    }
    if f.oscillatory() && eps_reg == 0.0 {
        return Err(Error::invalid("eps_reg", "oscillatory integrands need eps_reg > 0"));
    }
    let q = f.quadratic() + eps_reg;
    let decay = q.re;
    let cutoff = (ENVELOPE_EXPONENT / decay).sqrt();
    // ∫_X^∞ x^m e^{−d x²} dx ≤ e^{−dX²}/(2d) · X^{m−1}, both tails.
    let power = if f.has_x() { 1.0 } else { 1.0 / cutoff };
    let tail_bound = (-ENVELOPE_EXPONENT).exp() / decay * power;

    // Panels of about half a period of the total phase πx²·[Feynman] + 2π|y|x.
    let quad_phase = if f.oscillatory() { PI } else { 0.0 };
    let mut breaks = vec![0.0];
    let max_step = cutoff / 16.0;
    let mut x: f64 = 0.0;
    while x < cutoff {
        let rate = 2.0 * quad_phase * x + 2.0 * PI * y.abs();
        let step = if rate > 0.0 { (PI / rate).min(max_step) } else { max_step };
        x = (x + step).min(cutoff);
        breaks.push(x);
    }
    let opts = QuadratureOptions {
        abs_tol: 1e-10,
        rel_tol: 1e-10,
        initial_panels: 1,
        max_intervals: 4 * breaks.len() + 10_000,
    };
    let sign = if f.has_x() { -1.0 } else { 1.0 };
    let r = integrate_panels(
        |x| {
            // h(x) + h(−x) with h(x) = x^m e^{−q x²} e^{2πixy}
            let envelope = (-q * x * x).exp();
            let plus = Complex64::new(0.0, 2.0 * PI * x * y).exp();
            let weight = if f.has_x() { x } else { 1.0 };
            envelope * weight * (plus + sign * plus.conj())
        },
        &breaks,
        opts,
    )?;
    Ok(NumericTransform {
        value: r.value,
        quadrature_error: r.error_estimate,
        tail_bound,
        cutoff,
    })
}

/// Richardson extrapolation to ε → 0 from two regularizations, assuming an
/// error linear in ε.
pub fn extrapolate_eps(f: TestFunction, y: f64, eps_coarse: f64, eps_fine: f64) -> Result<Complex64> {
    if !(eps_coarse > eps_fine && eps_fine > 0.0) {
        return Err(Error::invalid("eps_reg", "need eps_coarse > eps_fine > 0"));
    }
    let coarse = fourier_numeric_1d(f, y, eps_coarse)?.value;
    let fine = fourier_numeric_1d(f, y, eps_fine)?.value;
    Ok((fine * eps_coarse - coarse * eps_fine) / (eps_coarse - eps_fine))
}

/// How the ε → 0 limit of the imaginary-Gaussian transforms is taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "eps")]
pub enum Regularization {
    /// A single regularization ε.
    Fixed(f64),
    /// Linear extrapolation from ε ∈ {10⁻², 10⁻³}.
    Extrapolated,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeynmanPoint {
    pub point: RealSquareMatrix,
    pub numeric: Complex64,
    /// e^{−iπn²/4} · Δ_W(y) · e^{iπ tr yᵀy}.
    pub expected: Complex64,
    pub abs_error: f64,
    /// |numeric − expected| / max(1, |expected|).
    pub rel_error: f64,
    /// arg(numeric / conj(G̃_W(y))), wrapped to (−π, π].
    pub measured_phase: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeynmanReport {
    pub n: usize,
    pub regularization: Regularization,
    /// −πn²/4 wrapped to (−π, π].
    pub expected_phase: f64,
    pub tolerance: f64,
    pub points: Vec<FeynmanPoint>,
    pub pass: bool,
}

fn wrap_phase(t: f64) -> f64 {
    let mut t = t.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Transform of `G̃_W(x) = Δ_W(x)·e^{−iπ tr xᵀx}` at each point `y`,
/// computed entrywise from one-dimensional quadratures and compared with
/// `e^{−iπn²/4}·conj(G̃_W(y))`.
pub fn feynman_phase_check(
    n: usize,
    regularization: Regularization,
    points: &[RealSquareMatrix],
    tolerance: f64,
) -> Result<FeynmanReport> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if n > MAX_NUMERIC_DIM {
        return Err(Error::DimensionTooLarge { n, max: MAX_NUMERIC_DIM });
    }
    if let Regularization::Fixed(eps) = regularization {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::invalid("eps_reg", format!("must be positive, got {eps}")));
        }
    }
    let transform = |f: TestFunction, y: f64| -> Result<Complex64> {
        match regularization {
            Regularization::Fixed(eps) => Ok(fourier_numeric_1d(f, y, eps)?.value),
            Regularization::Extrapolated => extrapolate_eps(f, y, 1e-2, 1e-3),
        }
    };
    let poly = delta_w_polynomial(n)?;
    let expected_phase = wrap_phase(-PI * (n * n) as f64 / 4.0);
    let global = Complex64::from_polar(1.0, expected_phase);
    let mut out = Vec::with_capacity(points.len());
    for y in points {
        if y.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: y.dim(),
            });
        }
        let entries = y.as_slice();
        let mut t0 = Vec::with_capacity(n * n);
        let mut t1 = Vec::with_capacity(n * n);
        for &v in entries {
            t0.push(transform(TestFunction::Feynman, v)?);
            t1.push(transform(TestFunction::XFeynman, v)?);
        }
        let mut numeric = Complex64::new(0.0, 0.0);
        for (mask, coeff) in poly.terms() {
            let mut prod = coeff;
            for b in 0..n * n {
                prod *= if mask >> b & 1 == 1 { t1[b] } else { t0[b] };
            }
            numeric += prod;
        }
        let conj_g = delta_w(y) * Complex64::new(0.0, PI * y.trace_gram()).exp();
        let expected = global * conj_g;
        let abs_error = (numeric - expected).norm();
        let rel_error = abs_error / expected.norm().max(1.0);
        let measured_phase = if conj_g.norm() > 0.0 { (numeric / conj_g).arg() } else { f64::NAN };
        out.push(FeynmanPoint {
            point: y.clone(),
            numeric,
            expected,
            abs_error,
            rel_error,
            measured_phase,
            pass: rel_error <= tolerance,
        });
    }
    let pass = out.iter().all(|p| p.pass);
    Ok(FeynmanReport {
        n,
        regularization,
        expected_phase,
        tolerance,
        points: out,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rule_examples() {
        let one = MultilinearPolynomial::from_monomials(1, vec![(vec![], cx(1.0, 0.0))]).unwrap();
        assert_eq!(fourier_monomial_gaussian(&one, 1).unwrap(), one);
        let x = MultilinearPolynomial::from_monomials(2, vec![(vec![(0, 0)], cx(1.0, 0.0))]).unwrap();
        let ix = MultilinearPolynomial::from_monomials(2, vec![(vec![(0, 0)], cx(0.0, 1.0))]).unwrap();
        assert_eq!(fourier_monomial_gaussian(&x, 2).unwrap(), ix);
        let p = delta_w_polynomial(1).unwrap();
        let t = fourier_monomial_gaussian(&p, 1).unwrap();
        assert_eq!(t.coefficient(&[]), cx(1.0, 0.0));
        assert_eq!(t.coefficient(&[(0, 0)]), cx(0.0, 1.0));
        assert!(fourier_monomial_gaussian(&p, 2).is_err());
    }

    #[test]
    fn exact_identity_small_n() {
        assert_eq!(verify_modified_gaussian_identity(1).unwrap(), 0.0);
        assert_eq!(verify_modified_gaussian_identity(2).unwrap(), 0.0);
        assert!(verify_modified_gaussian_identity(3).unwrap() <= 1e-12);
        assert!(matches!(verify_modified_gaussian_identity(5), Err(Error::DimensionTooLarge { .. })));
    }

    #[test]
    fn gaussian_transforms() {
        let y = 0.7;
        let g = fourier_numeric_1d(TestFunction::Gaussian, y, 0.0).unwrap();
        assert!((g.value - cx((-PI * 0.49).exp(), 0.0)).norm() < 1e-6);
        let xg = fourier_numeric_1d(TestFunction::XGaussian, y, 0.0).unwrap();
        assert!((xg.value - cx(0.0, 0.7 * (-PI * 0.49).exp())).norm() < 1e-6);
        assert!(g.tail_bound < 1e-20);
    }

    #[test]
    fn feynman_at_zero() {
        let r = fourier_numeric_1d(TestFunction::Feynman, 0.0, 1e-3).unwrap();
        let expected = Complex64::from_polar(1.0, -PI / 4.0);
        assert!((r.value - expected).norm() < 1e-2);
        let exact = TestFunction::Feynman.exact_regularized(0.0, 1e-3);
        assert!((r.value - exact).norm() < 1e-8);
    }

    #[test]
    fn regularized_closed_forms() {
        for f in [TestFunction::Feynman, TestFunction::XFeynman] {
            for y in [-0.8, 0.3, 1.1] {
                let r = fourier_numeric_1d(f, y, 1e-2).unwrap();
                assert!((r.value - f.exact_regularized(y, 1e-2)).norm() < 1e-8, "{f:?} {y}");
            }
        }
    }

    #[test]
    fn extrapolation_improves() {
        let y = 0.6;
        let exact = TestFunction::XFeynman.exact(y);
        let fine = fourier_numeric_1d(TestFunction::XFeynman, y, 1e-3).unwrap().value;
        let extrapolated = extrapolate_eps(TestFunction::XFeynman, y, 1e-2, 1e-3).unwrap();
        assert!((extrapolated - exact).norm() < (fine - exact).norm());
    }

    #[test]
    fn rejects_bad_regularization() {
        assert!(fourier_numeric_1d(TestFunction::Feynman, 0.0, 0.0).is_err());
        assert!(fourier_numeric_1d(TestFunction::Gaussian, 0.0, -1.0).is_err());
        assert!(feynman_phase_check(3, Regularization::Fixed(1e-3), &[], 1e-2).is_err());
    }

    #[test]
    fn phase_wrapping() {
        assert!((wrap_phase(-PI / 4.0) + PI / 4.0).abs() < 1e-15);
        assert!((wrap_phase(-PI).abs() - PI).abs() < 1e-15);
        assert!((wrap_phase(-9.0 * PI / 4.0) + PI / 4.0).abs() < 1e-14);
    }
}
