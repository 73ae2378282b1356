//! Seeded samplers on O(n) and on matrix space, and a chunked parallel
//! Monte-Carlo engine whose result does not depend on the worker count.
//!
//! Samples are split into fixed chunks of [`CHUNK`] draws. Chunk `j` of a
//! stream draws from its own ChaCha8 sequence, selected by `(seed, stream
//! id, j)`, and chunk statistics are merged in chunk order. Run under a
//! `rayon::ThreadPool` to control the number of workers.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::minor_unchecked;
use crate::matrix::{RealSquareMatrix, MAX_DIM};
use crate::signature::{binomial, Signature};

/// Draws per chunk. Part of the reproducibility contract: changing it
/// changes every estimate.
pub const CHUNK: u64 = 16_384;

/// Relative size below which a mean and its reference are treated as equal.
pub const ROUNDING_FLOOR: f64 = 1e-12;

/// A reproducible source of random sub-sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RandomStream {
    pub seed: u64,
    pub stream_id: u32,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u32) -> Self {
        Self { seed, stream_id }
    }

    /// The same seed on another stream id.
    pub fn with_stream(&self, stream_id: u32) -> Self {
        Self {
            seed: self.seed,
            stream_id,
        }
    }

    /// Generator for chunk `chunk` of this stream.
    pub fn chunk_rng(&self, chunk: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((u64::from(self.stream_id) << 32) | u64::from(chunk));
        rng
    }

    /// Generator for sequential (non-parallel) use.
    pub fn rng(&self) -> ChaCha8Rng {
        self.chunk_rng(0)
    }
}

/// Sample mean of a complex integrand with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MCEstimate {
    pub mean: Complex64,
    /// √(se_re² + se_im²).
    pub stderr: f64,
    pub samples: u64,
    /// Draws given weight zero as numerically singular.
    pub rejected: u64,
}

impl MCEstimate {
    /// |mean − reference| / stderr. Differences at rounding level, below
    /// [`ROUNDING_FLOOR`] relative to the magnitudes involved, count as zero
    /// so that integrands that are constant in exact arithmetic pass.
    pub fn z_score(&self, reference: Complex64) -> f64 {
        let diff = self.mean - reference;
        let scale = 1.0 + self.mean.norm() + reference.norm();
        if diff.norm() <= ROUNDING_FLOOR * scale {
            return 0.0;
        }
        z_score(diff, self.stderr)
    }

    pub fn relative_stderr(&self) -> f64 {
        self.stderr / self.mean.norm()
    }

    /// The estimate of `λ·X` for a constant `λ`.
    pub fn scaled(&self, lambda: Complex64) -> Self {
        Self {
            mean: self.mean * lambda,
            stderr: self.stderr * lambda.norm(),
            ..*self
        }
    }

    /// Difference of two independent estimates.
    pub fn minus_independent(&self, other: &Self) -> Self {
        Self {
            mean: self.mean - other.mean,
            stderr: self.stderr.hypot(other.stderr),
            samples: self.samples.min(other.samples),
            rejected: self.rejected + other.rejected,
        }
    }
}

pub(crate) fn z_score(diff: Complex64, stderr: f64) -> f64 {
    let d = diff.norm();
    if d == 0.0 {
        0.0
    } else {
        d / stderr
    }
}

/// Welford accumulators for the real and imaginary parts of `K` outputs.
#[derive(Clone, Copy)]
struct Moments<const K: usize> {
    n: u64,
    mean: [Complex64; K],
    m2_re: [f64; K],
    m2_im: [f64; K],
}

impl<const K: usize> Moments<K> {
    fn new() -> Self {
        Self {
            n: 0,
            mean: [Complex64::new(0.0, 0.0); K],
            m2_re: [0.0; K],
            m2_im: [0.0; K],
        }
    }

    #[inline]
    fn push(&mut self, x: &[Complex64; K]) {
        self.n += 1;
        let inv = 1.0 / self.n as f64;
        for k in 0..K {
            let d = x[k] - self.mean[k];
            self.mean[k] += d * inv;
            let d2 = x[k] - self.mean[k];
            self.m2_re[k] += d.re * d2.re;
            self.m2_im[k] += d.im * d2.im;
        }
    }

    fn merge(&mut self, other: &Self) {
        if other.n == 0 {
            return;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        for k in 0..K {
            let d = other.mean[k] - self.mean[k];
            self.mean[k] += d * (nb / n);
            self.m2_re[k] += other.m2_re[k] + d.re * d.re * na * nb / n;
            self.m2_im[k] += other.m2_im[k] + d.im * d.im * na * nb / n;
        }
        self.n += other.n;
    }

    fn estimate(&self, k: usize, rejected: u64) -> MCEstimate {
        let n = self.n as f64;
        let var_mean_re = self.m2_re[k] / (n - 1.0) / n;
        let var_mean_im = self.m2_im[k] / (n - 1.0) / n;
        MCEstimate {
            mean: self.mean[k],
            stderr: (var_mean_re + var_mean_im).max(0.0).sqrt(),
            samples: self.n,
            rejected,
        }
    }
}

/// Outcome of one draw of a vector-valued integrand.
pub enum Draw {
    Accepted,
    /// Weight zero; counted in the sample size and in `rejected`.
    Rejected,
}

/// Estimates the means of `K` jointly sampled outputs. `f` draws its own
/// randomness from the supplied generator and writes the outputs.
pub fn mc_expectation_multi<const K: usize, F>(
    samples: u64,
    stream: &RandomStream,
    f: F,
) -> Result<[MCEstimate; K]>
where
    F: Fn(&mut ChaCha8Rng, &mut [Complex64; K]) -> Result<Draw> + Sync,
{
    if samples < 2 {
        return Err(Error::invalid("samples", format!("need at least 2, got {samples}")));
    }
    let chunks = samples.div_ceil(CHUNK);
    if chunks > u64::from(u32::MAX) {
        return Err(Error::invalid("samples", "too many samples for one stream"));
    }
    let partials: Vec<Result<(Moments<K>, u64)>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = stream.chunk_rng(chunk as u32);
            let start = chunk * CHUNK;
            let len = CHUNK.min(samples - start);
            let mut acc = Moments::<K>::new();
            let mut rejected = 0;
            let mut out = [Complex64::new(0.0, 0.0); K];
            for i in 0..len {
                match f(&mut rng, &mut out)? {
                    Draw::Accepted => {
                        if out.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                            return Err(Error::NonFiniteIntegrand { sample: start + i });
                        }
                    }
                    Draw::Rejected => {
                        out = [Complex64::new(0.0, 0.0); K];
                        rejected += 1;
                    }
                }
                acc.push(&out);
            }
            Ok((acc, rejected))
        })
        .collect();
    let mut total = Moments::<K>::new();
    let mut rejected = 0;
    for part in partials {
        let (m, r) = part?;
        total.merge(&m);
        rejected += r;
    }
    Ok(std::array::from_fn(|k| total.estimate(k, rejected)))
}

/// E f(X) for `X` drawn by `sampler`. `f` returns `None` to reject a draw.
pub fn mc_expectation<S, F>(f: F, sampler: S, samples: u64, stream: &RandomStream) -> Result<MCEstimate>
where
    S: Fn(&mut ChaCha8Rng) -> RealSquareMatrix + Sync,
    F: Fn(&RealSquareMatrix) -> Result<Option<Complex64>> + Sync,
{
    let [est] = mc_expectation_multi::<1, _>(samples, stream, |rng, out| {
        let x = sampler(rng);
        Ok(match f(&x)? {
            Some(v) => {
                out[0] = v;
                Draw::Accepted
            }
            None => Draw::Rejected,
        })
    })?;
    Ok(est)
}

/// A Haar-distributed element of O(n): Gram–Schmidt (applied twice) on the
/// columns of a standard Gaussian matrix, so that the implied triangular
/// factor has a positive diagonal.
pub fn sample_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RealSquareMatrix {
    assert!((1..=MAX_DIM).contains(&n), "dimension {n} out of range");
    'draw: loop {
        let mut q = RealSquareMatrix::zeros(n);
        for x in q.as_mut_slice() {
            *x = rng.sample(StandardNormal);
        }
        for j in 0..n {
            for _pass in 0..2 {
                for i in 0..j {
                    let mut dot = 0.0;
                    for r in 0..n {
                        dot += q.get(r, i) * q.get(r, j);
                    }
                    for r in 0..n {
                        q.set(r, j, q.get(r, j) - dot * q.get(r, i));
                    }
                }
            }
            let norm = (0..n).map(|r| q.get(r, j).powi(2)).sum::<f64>().sqrt();
            if !(norm > 1e-8) {
                continue 'draw;
            }
            for r in 0..n {
                q.set(r, j, q.get(r, j) / norm);
            }
        }
        return q;
    }
}

/// Entries i.i.d. normal with mean 0 and variance 1/(2c): the probability
/// density `(c/π)^{n²/2} e^{−c·tr(gᵀg)}`.
pub fn sample_gaussian_matrix<R: Rng + ?Sized>(n: usize, c: f64, rng: &mut R) -> RealSquareMatrix {
    assert!((1..=MAX_DIM).contains(&n), "dimension {n} out of range");
    assert!(c > 0.0, "rate must be positive");
    let sd = (0.5 / c).sqrt();
    let mut g = RealSquareMatrix::zeros(n);
    for x in g.as_mut_slice() {
        let z: f64 = rng.sample(StandardNormal);
        *x = sd * z;
    }
    g
}

/// Right side of the orthogonality relation
/// `∫dk (v_{e1}, π(k) v_{e1p}) (v_{e2}, π(k⁻¹) v_{e2p})
///    = δ_{grades} / d · δ_{e1,e2p} · δ_{e2,e1p}`.
pub fn schur_prediction(e1: &Signature, e1p: &Signature, e2: &Signature, e2p: &Signature) -> f64 {
    let (g1, g2) = (e1.weight(), e2.weight());
    if g1 != g2 || e1 != e2p || e2 != e1p {
        return 0.0;
    }
    1.0 / binomial(e1.len(), g1) as f64
}

/// MC estimate of the left side of the orthogonality relation for matrix
/// elements of the exterior powers of grades `grade1` and `grade2`.
pub fn schur_orthogonality_check(
    grade1: usize,
    grade2: usize,
    e1: &Signature,
    e1p: &Signature,
    e2: &Signature,
    e2p: &Signature,
    samples: u64,
    stream: &RandomStream,
) -> Result<MCEstimate> {
    let n = e1.len();
    for s in [e1p, e2, e2p] {
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
    }
    if e1.weight() != grade1 || e1p.weight() != grade1 || e2.weight() != grade2 || e2p.weight() != grade2 {
        return Err(Error::Precondition(format!(
            "signature weights ({}, {}, {}, {}) do not match grades ({grade1}, {grade2})",
            e1.weight(),
            e1p.weight(),
            e2.weight(),
            e2p.weight()
        )));
    }
    let (e1, e1p, e2, e2p) = (*e1, *e1p, *e2, *e2p);
    mc_expectation(
        |k| {
            let v = minor_unchecked(&e1, &e1p, k) * minor_unchecked(&e2, &e2p, &k.transpose());
            Ok(Some(Complex64::new(v, 0.0)))
        },
        |rng| sample_orthogonal(n, rng),
        samples,
        stream,
    )
}

/// `(f1 ∗ f2)(k̃) = ∫dk f1(k) f2(k⁻¹k̃)` over normalized Haar measure.
pub fn compact_convolution<F1, F2>(
    f1: F1,
    f2: F2,
    k_eval: &RealSquareMatrix,
    samples: u64,
    stream: &RandomStream,
) -> Result<MCEstimate>
where
    F1: Fn(&RealSquareMatrix) -> Complex64 + Sync,
    F2: Fn(&RealSquareMatrix) -> Complex64 + Sync,
{
    let defect = k_eval.orthogonality_defect();
    if !(defect <= 1e-10) {
        return Err(Error::NotOrthogonal { defect });
    }
    let n = k_eval.dim();
    mc_expectation(
        |k| Ok(Some(f1(k) * f2(&k.transpose().mul(k_eval)))),
        |rng| sample_orthogonal(n, rng),
        samples,
        stream,
    )
}
