//! Hecke-Baxter kernels and their convolution action on ε-spherical vectors.
//!
//! Haar measure on GL(n, ℝ) is `dμ(g) = |det g|^{−n} dg / κ_n` with
//! `κ_n = π^{n(n+1)/4} / ∏_{i≤n} Γ(i/2)`. With this normalization the
//! eigenvalue of `Q̂_s` on φ_ε is exactly `L(s, c | ε, γ)`; with plain
//! Lebesgue `dg` it is `κ_n · L`. See [`HaarMeasure`].

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::character::{torus_character, SpectralParams};
use crate::decompose::orthogonal_borel_split;
use crate::error::{Error, Result};
use crate::exterior::{delta_w, minor_unchecked, principal_minor, SphericalVector};
use crate::matrix::{RealSquareMatrix, MAX_DIM};
use crate::mc::{mc_expectation_multi, sample_gaussian_matrix, sample_orthogonal, z_score, Draw, MCEstimate, RandomStream};
use crate::signature::{binomial, Signature};
use crate::special::{log_gamma, l_factor, LFactorValue};

/// Draws with `|det g|` below this get weight zero.
pub const SINGULAR_DET: f64 = 1e-12;
/// A run fails when more than this fraction of draws is rejected.
pub const MAX_REJECTED_FRACTION: f64 = 1e-3;
/// Evaluation points with `|φ_ε(g̃)|` at or below this are refused.
pub const DEGENERATE_PHI: f64 = 1e-6;
pub const DEFAULT_TOL_SIGMA: f64 = 4.0;

/// κ_n = π^{n(n+1)/4} / ∏_{i=1}^{n} Γ(i/2) = Vol(O(n)) / 2ⁿ.
pub fn haar_normalization(n: usize) -> f64 {
    let log_gammas: f64 = (1..=n)
        .map(|i| log_gamma(Complex64::new(i as f64 / 2.0, 0.0)).expect("positive argument").re)
        .sum();
    ((n * (n + 1)) as f64 / 4.0 * PI.ln() - log_gammas).exp()
}

/// |W^M| = 2ⁿ·n!, the order of the fiber of the polar covering.
pub fn weyl_fiber_order(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() << n
}

/// Factor by which the polar-coordinate integral with unit-mass `dk` and
/// `da = ∏ da_i/a_i` over unordered `a ∈ (0,∞)ⁿ` falls short of the Haar
/// integral: `4ⁿ κ_n = Vol(O(n))² / κ_n`.
pub fn cartan_lift_constant(n: usize) -> f64 {
    4f64.powi(n as i32) * haar_normalization(n)
}

/// Normalization of the Haar measure used by [`convolve_vector_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HaarMeasure {
    /// `|det g|^{−n} dg / κ_n`; eigenvalue `L(s | ε, γ)`.
    #[default]
    Normalized,
    /// `|det g|^{−n} dg`; eigenvalue `κ_n · L(s | ε, γ)`.
    Lebesgue,
}

/// Convolution kernel.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    /// Q̂_s = Δ_W · Q_s.
    #[default]
    Full,
    /// Q_s alone; reproduces the eigenvalue on the spherical vector only.
    Spherical,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ConvolutionOptions {
    pub kernel: Kernel,
    pub measure: HaarMeasure,
}

fn log_q_prefactor(n: usize, c: f64) -> f64 {
    let ell = (n - 1) as f64;
    ell * (ell + 1.0) / 4.0 * (c / PI).ln()
}

/// Q_s(g) = (c/π)^{ℓ(ℓ+1)/4} |det g|^{s+ℓ/2} e^{−c·tr(gᵀg)}.
pub fn q_s(g: &RealSquareMatrix, s: Complex64, c: f64) -> Complex64 {
    let n = g.dim();
    let ell = (n - 1) as f64;
    let det = g.det().abs();
    if det == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    ((s + ell / 2.0) * det.ln() + log_q_prefactor(n, c) - c * g.trace_gram()).exp()
}

/// Q̂_s(g) = Δ_W(g) · Q_s(g).
pub fn q_hat(g: &RealSquareMatrix, s: Complex64, c: f64) -> Complex64 {
    delta_w(g) * q_s(g, s, c)
}

/// Square-integrability of the importance weights needs Re s > (ℓ+1)/2.
pub fn check_variance_guard(p: &SpectralParams) -> Result<()> {
    let bound = p.dim() as f64 / 2.0;
    if p.s.re > bound {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "Re(s) = {} must exceed (ℓ+1)/2 = {bound} for finite Monte-Carlo variance",
            p.s.re
        )))
    }
}

fn check_rejections(est: &MCEstimate) -> Result<()> {
    if est.rejected as f64 > MAX_REJECTED_FRACTION * est.samples as f64 {
        return Err(Error::TooManyRejected {
            rejected: est.rejected,
            samples: est.samples,
        });
    }
    Ok(())
}

fn check_point(p: &SpectralParams, g: &RealSquareMatrix) -> Result<()> {
    if g.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: g.dim(),
        });
    }
    g.check_invertible().map(|_| ())
}

/// (Q̂_s ∗ φ_ε)(g̃) = ∫ dμ(g) Q̂_s(g) φ_ε(g⁻¹g̃).
pub fn convolve_vector(
    p: &SpectralParams,
    g_tilde: &RealSquareMatrix,
    samples: u64,
    stream: &RandomStream,
) -> Result<MCEstimate> {
    convolve_vector_with(p, g_tilde, samples, stream, ConvolutionOptions::default())
}

/// As [`convolve_vector`] with a choice of kernel and Haar normalization.
///
/// `g` is drawn from the matrix Gaussian at the kernel's own rate `c`; the
/// weight is `Δ_W(g)·(c/π)^{ℓ(ℓ+1)/4}·|det g|^{s+ℓ/2−n}·φ_ε(g⁻¹g̃)·(π/c)^{n²/2}/κ_n`.
pub fn convolve_vector_with(
    p: &SpectralParams,
    g_tilde: &RealSquareMatrix,
    samples: u64,
    stream: &RandomStream,
    opts: ConvolutionOptions,
) -> Result<MCEstimate> {
    check_variance_guard(p)?;
    check_point(p, g_tilde)?;
    let n = p.dim();
    let ell = (n - 1) as f64;
    let c = p.c;
    let vector = SphericalVector::new(p);
    let mut log_const = log_q_prefactor(n, c) + (n * n) as f64 / 2.0 * (PI / c).ln();
    if opts.measure == HaarMeasure::Normalized {
        log_const -= haar_normalization(n).ln();
    }
    let weight_const = log_const.exp();
    let det_power = p.s + ell / 2.0 - n as f64;
    let [est] = mc_expectation_multi::<1, _>(samples, stream, |rng, out| {
        let g = sample_gaussian_matrix(n, c, rng);
        let det = g.det();
        if det.abs() < SINGULAR_DET {
            return Ok(Draw::Rejected);
        }
        let x = match g.solve(g_tilde) {
            Ok(x) => x,
            Err(Error::SingularMatrix { .. }) => return Ok(Draw::Rejected),
            Err(e) => return Err(e),
        };
        let phi = match vector.eval_invertible(&x) {
            Ok(v) => v,
            Err(Error::SingularMatrix { .. }) => return Ok(Draw::Rejected),
            Err(e) => return Err(e),
        };
        let dw = match opts.kernel {
            Kernel::Full => delta_w(&g),
            Kernel::Spherical => 1.0,
        };
        out[0] = weight_const * dw * (det_power * det.abs().ln()).exp() * phi;
        Ok(Draw::Accepted)
    })?;
    check_rejections(&est)?;
    Ok(est)
}

/// Outcome at one evaluation point of [`eigenvalue_check`].
#[derive(Debug, Clone, Serialize)]
pub struct PointResult {
    pub point: RealSquareMatrix,
    pub phi: Complex64,
    pub convolution: MCEstimate,
    /// convolution / φ_ε(g̃).
    pub ratio: MCEstimate,
    pub z_score: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigencheckReport {
    pub params: SpectralParams,
    pub reference: LFactorValue,
    pub tol_sigma: f64,
    pub points: Vec<PointResult>,
    pub pass: bool,
}

impl EigencheckReport {
    /// Largest pairwise z-score between the per-point ratios.
    pub fn max_pairwise_z(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                let d = a.ratio.minus_independent(&b.ratio);
                worst = worst.max(d.z_score(Complex64::new(0.0, 0.0)));
            }
        }
        worst
    }
}

/// Ratio (Q̂_s ∗ φ_ε)(g̃) / φ_ε(g̃) at each point, compared with L(s | ε, γ).
/// Point `i` samples on stream id `stream.stream_id + i`.
pub fn eigenvalue_check(
    p: &SpectralParams,
    points: &[RealSquareMatrix],
    samples: u64,
    stream: &RandomStream,
    tol_sigma: f64,
) -> Result<EigencheckReport> {
    eigenvalue_check_with(p, points, samples, stream, tol_sigma, ConvolutionOptions::default())
}

pub fn eigenvalue_check_with(
    p: &SpectralParams,
    points: &[RealSquareMatrix],
    samples: u64,
    stream: &RandomStream,
    tol_sigma: f64,
    opts: ConvolutionOptions,
) -> Result<EigencheckReport> {
    if points.is_empty() {
        return Err(Error::invalid("points", "need at least one evaluation point"));
    }
    if !(tol_sigma > 0.0) {
        return Err(Error::invalid("tol_sigma", format!("must be positive, got {tol_sigma}")));
    }
    let reference = l_factor(p)?;
    let expected = expected_eigenvalue(p, reference.value, opts);
    let vector = SphericalVector::new(p);
    let mut phis = Vec::with_capacity(points.len());
    for g in points {
        check_point(p, g)?;
        let phi = vector.eval(g)?;
        if phi.norm() <= DEGENERATE_PHI {
            return Err(Error::DegenerateVector { value: phi.norm() });
        }
        phis.push(phi);
    }
    let mut results = Vec::with_capacity(points.len());
    for (i, (g, phi)) in points.iter().zip(phis).enumerate() {
        let sub = stream.with_stream(stream.stream_id.wrapping_add(i as u32));
        let convolution = convolve_vector_with(p, g, samples, &sub, opts)?;
        let ratio = convolution.scaled(1.0 / phi);
        let z = ratio.z_score(expected);
        results.push(PointResult {
            point: g.clone(),
            phi,
            convolution,
            ratio,
            z_score: z,
            pass: z <= tol_sigma,
        });
    }
    let pass = results.iter().all(|r| r.pass);
    Ok(EigencheckReport {
        params: p.clone(),
        reference,
        tol_sigma,
        points: results,
        pass,
    })
}

/// Eigenvalue on φ_ε of the chosen kernel and measure. Q_s alone is
/// bi-O(n)-invariant and so annihilates φ_ε for ε ≠ 0.
pub fn expected_eigenvalue(p: &SpectralParams, l_value: Complex64, opts: ConvolutionOptions) -> Complex64 {
    if opts.kernel == Kernel::Spherical && p.epsilon.weight() != 0 {
        return Complex64::new(0.0, 0.0);
    }
    match opts.measure {
        HaarMeasure::Normalized => l_value,
        HaarMeasure::Lebesgue => l_value * haar_normalization(p.dim()),
    }
}

/// The eigenvalue Λ_{ε,ε}(s | γ) through polar coordinates `g = k₁·a·k₂`:
///
/// `Λ = C/|W^M| ∫ dk₁ da |Δ(a)| Q_s(a) χ_γ(a') (v_ε, π_W(k₁·a·k') v_ε)`
///
/// where `(k₁a)⁻¹ = k'·a'·n'`, `Δ(a) = ∏_{i<j}(a_i/a_j − a_j/a_i)` and
/// `C` is [`cartan_lift_constant`]. Samples `k₁` from Haar measure and
/// `log a_i` from independent standard normals.
pub fn cartan_eigenvalue_estimate(p: &SpectralParams, samples: u64, stream: &RandomStream) -> Result<MCEstimate> {
    check_variance_guard(p)?;
    let n = p.dim();
    let ell = (n - 1) as f64;
    let c = p.c;
    let eps = p.epsilon;
    let gamma = p.gamma.clone();
    let rho = p.rho();
    let log_const = cartan_lift_constant(n).ln() - (weyl_fiber_order(n) as f64).ln() + log_q_prefactor(n, c)
        + n as f64 * 0.5 * (2.0 * PI).ln();
    let s_shift = p.s + ell / 2.0;
    let [est] = mc_expectation_multi::<1, _>(samples, stream, |rng: &mut ChaCha8Rng, out| {
        let k1 = sample_orthogonal(n, rng);
        let mut u = [0.0; MAX_DIM];
        let mut a = [0.0; MAX_DIM];
        let mut inv_a = [0.0; MAX_DIM];
        let (mut sum_u, mut sum_a2, mut sum_u2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let z: f64 = rng.sample(StandardNormal);
            u[i] = z;
            a[i] = z.exp();
            inv_a[i] = (-z).exp();
            sum_u += z;
            sum_u2 += z * z;
            sum_a2 += a[i] * a[i];
        }
        let mut vandermonde = 1.0;
        for i in 0..n {
            for j in i + 1..n {
                vandermonde *= (a[i] * inv_a[j] - a[j] * inv_a[i]).abs();
            }
        }
        let h = k1.scale_columns(&a[..n]);
        let h_inv = k1.transpose().scale_rows(&inv_a[..n]);
        let (k_prime, b_prime) = match orthogonal_borel_split(&h_inv) {
            Ok(f) => f,
            Err(Error::SingularMatrix { .. }) => return Ok(Draw::Rejected),
            Err(e) => return Err(e),
        };
        let mut a_prime = [0.0; MAX_DIM];
        for (i, x) in a_prime.iter_mut().take(n).enumerate() {
            *x = b_prime.get(i, i);
        }
        let chi = torus_character(&gamma, &rho, &a_prime[..n]);
        let minor = principal_minor(&eps, &h.mul(&k_prime));
        // Q_s(a) / (normal density of u), in log form.
        let log_w = log_const + s_shift * sum_u - c * sum_a2 + 0.5 * sum_u2;
        out[0] = log_w.exp() * vandermonde * minor * chi;
        Ok(Draw::Accepted)
    })?;
    check_rejections(&est)?;
    Ok(est)
}

/// Φ_{ε,γ}(g) = ∫ dk conj(φ_ε(k)) φ_ε(g⁻¹k) over normalized Haar measure.
pub fn spherical_function(
    p: &SpectralParams,
    g: &RealSquareMatrix,
    samples: u64,
    stream: &RandomStream,
) -> Result<MCEstimate> {
    check_point(p, g)?;
    let n = p.dim();
    let vector = SphericalVector::new(p);
    let eps = p.epsilon;
    let [est] = mc_expectation_multi::<1, _>(samples, stream, |rng, out| {
        let k = sample_orthogonal(n, rng);
        let x = g.solve(&k)?;
        out[0] = principal_minor(&eps, &k) * vector.eval_invertible(&x)?;
        Ok(Draw::Accepted)
    })?;
    Ok(est)
}

/// An O-bi-invariant function `F(g) = |det g|^t · e^{−c·tr(gᵀg)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialProfile {
    pub t: f64,
    pub c: f64,
}

impl RadialProfile {
    pub fn new(t: f64, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::invalid("c", format!("profile rate must be positive, got {c}")));
        }
        if !t.is_finite() {
            return Err(Error::invalid("t", "exponent must be finite"));
        }
        Ok(Self { t, c })
    }

    pub fn eval(&self, g: &RealSquareMatrix) -> f64 {
        let det = g.det().abs();
        if det == 0.0 {
            return if self.t > 0.0 { 0.0 } else { f64::INFINITY };
        }
        (self.t * det.ln() - self.c * g.trace_gram()).exp()
    }
}

/// Left side, scalar convolution and their paired difference for the
/// convolution law of graded matrix elements:
///
/// `(F_{e1,e1p} ∗ G_{e2,e2p})(g̃) = δ_{e1p,e2}/d · (v_{e1}, π_W(g̃) v_{e2p}) · (F∗G)(g̃)`
///
/// with `F_{v,w}(g) = F(g)·(v, π_W(g) w)`.
#[derive(Debug, Clone, Serialize)]
pub struct RamifiedReport {
    pub left: MCEstimate,
    pub scalar: MCEstimate,
    /// δ_{e1p,e2}/d · (v_{e1}, π_W(g̃) v_{e2p}).
    pub factor: f64,
    pub prediction: Complex64,
    /// left − factor·scalar over common draws.
    pub difference: MCEstimate,
    /// left / prediction, when the prediction is nonzero.
    pub ratio: Option<Complex64>,
    pub z_score: f64,
    pub pass: bool,
}

/// The prediction factor `δ_{e1p,e2}/d_{|e1p|} · (v_{e1}, π_W(g̃) v_{e2p})`.
pub fn ramified_factor(e1: &Signature, e1p: &Signature, e2: &Signature, e2p: &Signature, g_tilde: &RealSquareMatrix) -> f64 {
    if e1p != e2 {
        return 0.0;
    }
    minor_unchecked(e1, e2p, g_tilde) / binomial(e1p.len(), e1p.weight()) as f64
}

#[allow(clippy::too_many_arguments)]
pub fn ramified_convolution_check(
    f: &RadialProfile,
    g_profile: &RadialProfile,
    e1: &Signature,
    e1p: &Signature,
    e2: &Signature,
    e2p: &Signature,
    g_tilde: &RealSquareMatrix,
    samples: u64,
    stream: &RandomStream,
    tol_sigma: f64,
) -> Result<RamifiedReport> {
    let n = g_tilde.dim();
    for s in [e1, e1p, e2, e2p] {
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
    }
    if e1.weight() != e1p.weight() || e2.weight() != e2p.weight() {
        return Err(Error::Precondition(format!(
            "weights must pair up: |{e1}| = |{e1p}| and |{e2}| = |{e2p}|"
        )));
    }
    g_tilde.check_invertible()?;
    let factor = ramified_factor(e1, e1p, e2, e2p, g_tilde);
    let (e1, e1p, e2, e2p) = (*e1, *e1p, *e2, *e2p);
    let (cf, tf) = (f.c, f.t);
    let g_profile = *g_profile;
    let log_const = (n * n) as f64 / 2.0 * (PI / cf).ln() - haar_normalization(n).ln();
    let est = mc_expectation_multi::<3, _>(samples, stream, |rng, out| {
        let g = sample_gaussian_matrix(n, cf, rng);
        let det = g.det();
        if det.abs() < SINGULAR_DET {
            return Ok(Draw::Rejected);
        }
        let x = match g.solve(g_tilde) {
            Ok(x) => x,
            Err(Error::SingularMatrix { .. }) => return Ok(Draw::Rejected),
            Err(e) => return Err(e),
        };
        // F(g)·|det g|^{−n}/κ_n divided by the sampling density.
        let w = (log_const + (tf - n as f64) * det.abs().ln()).exp();
        let scalar = w * g_profile.eval(&x);
        let left = scalar * minor_unchecked(&e1, &e1p, &g) * minor_unchecked(&e2, &e2p, &x);
        out[0] = Complex64::new(left, 0.0);
        out[1] = Complex64::new(scalar, 0.0);
        out[2] = Complex64::new(left - factor * scalar, 0.0);
        Ok(Draw::Accepted)
    })?;
    let [left, scalar, difference] = est;
    check_rejections(&left)?;
    let prediction = scalar.mean * factor;
    let ratio = (factor != 0.0).then(|| left.mean / prediction);
    let z = z_score(difference.mean, difference.stderr);
    Ok(RamifiedReport {
        left,
        scalar,
        factor,
        prediction,
        difference,
        ratio,
        z_score: z,
        pass: z <= tol_sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalization_constants() {
        assert!((haar_normalization(1) - 1.0).abs() < 1e-14);
        assert!((haar_normalization(2) - PI).abs() < 1e-13);
        assert!((haar_normalization(3) - 2.0 * PI * PI).abs() < 1e-12);
        assert_eq!(weyl_fiber_order(1), 2);
        assert_eq!(weyl_fiber_order(2), 8);
        assert_eq!(weyl_fiber_order(3), 48);
        assert!((cartan_lift_constant(2) - 16.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn kernel_examples() {
        let one = RealSquareMatrix::identity(1);
        assert!((q_s(&one, cx(2.0, 0.0), 1.0) - cx((-1.0f64).exp(), 0.0)).norm() < 1e-15);
        let id = RealSquareMatrix::identity(2);
        let v = q_s(&id, cx(0.0, 0.0), PI);
        assert!((v - cx((-2.0 * PI).exp(), 0.0)).norm() < 1e-15);
        let v = q_hat(&id, cx(0.0, 0.0), PI);
        assert!((v - cx(6.0 * (-2.0 * PI).exp(), 0.0)).norm() < 1e-15);
        let x = RealSquareMatrix::from_flat(&[-0.7]).unwrap();
        let (s, c) = (cx(1.3, 0.4), 0.8);
        let expected = (1.0 - 0.7) * (s * 0.7f64.ln()).exp() * (-c * 0.49f64).exp();
        assert!((q_hat(&x, s, c) - expected).norm() < 1e-15);
    }

    #[test]
    fn guard() {
        let p = SpectralParams::trivial(2, 1.0);
        assert!(matches!(
            convolve_vector(&p, &RealSquareMatrix::identity(2), 100, &RandomStream::new(0, 0)),
            Err(Error::Precondition(_))
        ));
        let p = SpectralParams::trivial(2, 1.01);
        assert!(check_variance_guard(&p).is_ok());
    }

    #[test]
    fn degenerate_point() {
        let p = SpectralParams::new(cx(3.0, 0.0), 1.0, vec![0.0, 0.0], "10".parse().unwrap()).unwrap();
        // φ_(1,0) at a rotation by π/2 is cos(π/2) = 0.
        let k = RealSquareMatrix::from_flat(&[0.0, -1.0, 1.0, 0.0]).unwrap();
        let r = eigenvalue_check(&p, &[k], 100, &RandomStream::new(0, 0), 4.0);
        assert!(matches!(r, Err(Error::DegenerateVector { .. })));
    }

    #[test]
    fn radial_profile_is_bi_invariant() {
        let f = RadialProfile::new(2.5, 0.7).unwrap();
        let g = RealSquareMatrix::from_flat(&[1.0, 0.3, -0.2, 0.8]).unwrap();
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let k = RealSquareMatrix::from_flat(&[c, -s, s, c]).unwrap();
        let m = RealSquareMatrix::from_flat(&[1.0, 0.0, 0.0, -1.0]).unwrap();
        let moved = k.mul(&g).mul(&m);
        assert!((f.eval(&g) - f.eval(&moved)).abs() < 1e-14);
        assert!(RadialProfile::new(1.0, 0.0).is_err());
    }

    #[test]
    fn ramified_factor_values() {
        let s = |x: &str| -> Signature { x.parse().unwrap() };
        let g = RealSquareMatrix::from_flat(&[1.5, -0.3, 0.7, 2.2]).unwrap();
        assert_eq!(ramified_factor(&s("10"), &s("01"), &s("10"), &s("01"), &g), 0.0);
        assert_eq!(ramified_factor(&s("10"), &s("01"), &s("01"), &s("01"), &g), -0.3 / 2.0);
        assert_eq!(ramified_factor(&s("00"), &s("00"), &s("00"), &s("00"), &g), 1.0);
    }
}
