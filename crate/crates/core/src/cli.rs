//! The `hecke-baxter` command line: one subcommand per verification, a JSON
//! report on stdout (or `--output`), and exit status 0 (pass), 1 (fail) or
//! 2 (configuration error).

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::character::SpectralParams;
use crate::decompose::{cartan_decompose, cartan_residuals, iwasawa_decompose, iwasawa_residuals};
use crate::error::{Error, Result};
use crate::exterior::delta_w;
use crate::fourier::{
    feynman_phase_check, fourier_numeric_1d, verify_modified_gaussian_identity, Regularization, TestFunction,
};
use crate::hecke::{
    cartan_eigenvalue_estimate, convolve_vector_with, eigenvalue_check_with, expected_eigenvalue,
    ramified_convolution_check, spherical_function, ConvolutionOptions, HaarMeasure, Kernel, RadialProfile,
};
use crate::matrix::RealSquareMatrix;
use crate::mc::{compact_convolution, sample_orthogonal, schur_orthogonality_check, schur_prediction, MCEstimate, RandomStream};
use crate::signature::{binomial, Signature};
use crate::special::{
    gamma_integral_oracle, gl_c_l_factor, gl_c_l_factor_closed_form, l_factor, l_factor_arguments,
    legendre_duplication_residual, log_gamma,
};

/// Smallest sample count accepted by the stochastic commands.
pub const MIN_SAMPLES: u64 = 1000;

#[derive(Debug, Parser)]
#[command(name = "hecke-baxter", version, about = "Hecke-Baxter operator checks on GL(n, R) principal series")]
pub struct Cli {
    /// Seed for every random stream.
    #[arg(long, global = true, env = "HB_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for Monte-Carlo runs; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Record wall-clock time in the report (which then differs between runs).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate L(s, c | ε, γ).
    Lfactor(SpectralArgs),
    /// Iwasawa decomposition g = k·a·n of a matrix.
    Iwasawa(MatrixArgs),
    /// Polar decomposition g = k₁·a·k₂ of a matrix.
    Cartan(MatrixArgs),
    /// Monte-Carlo check that Q̂_s acts on φ_ε by L(s | ε, γ).
    Eigencheck(EigencheckArgs),
    /// The eigenvalue through polar coordinates, against L and the direct route.
    Cartancheck(StochasticArgs),
    /// The spherical function Φ_{ε,γ}(g).
    Sphfun(SphfunArgs),
    /// Orthogonality of exterior-power matrix elements over O(n).
    Schur(SchurArgs),
    /// Δ_W ∗ Δ_W = Δ_W on O(n).
    Projector(ProjectorArgs),
    /// Convolution law for graded matrix elements of radial profiles.
    Ramified(RamifiedArgs),
    /// Exact Fourier identity for the Δ_W-modified Gaussian.
    Fourier(FourierArgs),
    /// Fourier phase of the Δ_W-modified imaginary Gaussian.
    Feynman(FeynmanArgs),
    /// Legendre duplication, the GL(C) product relation and the Gamma integral.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectralArgs {
    /// Rank ℓ; matrices are (ℓ+1)×(ℓ+1).
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub s_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub s_im: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// γ_j as a comma list; zeros when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// ε as bits ("101") or a comma list; zeros when omitted.
    #[arg(long)]
    pub epsilon: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StochasticArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub spectral: SpectralArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 4.0)]
    pub tol_sigma: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PointArgs {
    /// Evaluation matrix as a row-major comma list; repeatable.
    #[arg(long = "point", allow_hyphen_values = true)]
    pub points: Vec<String>,
    /// File of matrices: one row per line, blank line between matrices.
    #[arg(long)]
    pub points_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MatrixArgs {
    /// Row-major comma list.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "matrix_file")]
    pub matrix: Option<String>,
    /// Plain-text file, one row per line.
    #[arg(long)]
    pub matrix_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelArg {
    Full,
    Spherical,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureArg {
    Normalized,
    Lebesgue,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EigencheckArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub run: StochasticArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: PointArgs,
    #[arg(long, value_enum, default_value_t = KernelArg::Full)]
    pub kernel: KernelArg,
    #[arg(long, value_enum, default_value_t = MeasureArg::Normalized)]
    pub measure: MeasureArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SphfunArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub run: StochasticArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: PointArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SchurArgs {
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    #[arg(long)]
    pub e1: Option<String>,
    #[arg(long)]
    pub e1p: Option<String>,
    #[arg(long)]
    pub e2: Option<String>,
    #[arg(long)]
    pub e2p: Option<String>,
    /// Check a representative quadruple for every pair of grades.
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 4.0)]
    pub tol_sigma: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProjectorArgs {
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    /// Orthogonal evaluation points; the identity and two seeded random
    /// elements when omitted.
    #[command(flatten)]
    #[serde(flatten)]
    pub points: PointArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 4.0)]
    pub tol_sigma: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RamifiedArgs {
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    #[arg(long)]
    pub e1: String,
    #[arg(long)]
    pub e1p: String,
    #[arg(long)]
    pub e2: String,
    #[arg(long)]
    pub e2p: String,
    /// Exponent of |det g| in F; defaults to ℓ+2.
    #[arg(long, allow_negative_numbers = true)]
    pub t_f: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub c_f: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub t_g: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c_g: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: PointArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 4.0)]
    pub tol_sigma: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FourierArgs {
    /// Check n = 1..=max_n (at most 4).
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FeynmanArgs {
    /// Matrix size: 1 or 2; both when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1e-3)]
    pub eps_reg: f64,
    /// Extrapolate from ε ∈ {1e-2, 1e-3} instead of using --eps-reg.
    #[arg(long)]
    pub extrapolate: bool,
    #[arg(long, default_value_t = 1e-2)]
    pub tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: PointArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IdentitiesArgs {
    /// Random complex s per identity.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<f64> for Cx {
    fn from(x: f64) -> Self {
        Self { re: x, im: 0.0 }
    }
}

/// One comparison in a report.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub point: Option<RealSquareMatrix>,
    pub label: String,
    pub estimate: Cx,
    pub stderr: Option<f64>,
    pub reference: Option<Cx>,
    pub z_score: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl ResultRow {
    fn stochastic(label: impl Into<String>, point: Option<RealSquareMatrix>, est: &MCEstimate, reference: Complex64, tol: f64) -> Self {
        let z = est.z_score(reference);
        Self {
            point,
            label: label.into(),
            estimate: est.mean.into(),
            stderr: Some(est.stderr),
            reference: Some(reference.into()),
            z_score: Some(z),
            pass: z <= tol,
            error: None,
            detail: Some(json!({ "samples": est.samples, "rejected": est.rejected })),
        }
    }

    fn exact(label: impl Into<String>, estimate: Complex64, reference: Complex64, error: f64, tol: f64) -> Self {
        Self {
            point: None,
            label: label.into(),
            estimate: estimate.into(),
            stderr: None,
            reference: Some(reference.into()),
            z_score: None,
            pass: error <= tol,
            error: Some(error),
            detail: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub results: Vec<ResultRow>,
    pub pass: bool,
    pub elapsed_seconds: Option<f64>,
}

fn spectral_params(a: &SpectralArgs) -> Result<SpectralParams> {
    let n = a.ell + 1;
    let gamma = match &a.gamma {
        Some(s) => parse_list("gamma", s)?,
        None => vec![0.0; n],
    };
    if gamma.len() != n {
        return Err(Error::invalid("gamma", format!("expected {n} entries (ell + 1), got {}", gamma.len())));
    }
    let epsilon = match &a.epsilon {
        Some(s) => s.parse::<Signature>().map_err(|e| Error::invalid("epsilon", e.to_string()))?,
        None => Signature::zero(n),
    };
    if epsilon.len() != n {
        return Err(Error::invalid("epsilon", format!("expected {n} entries (ell + 1), got {}", epsilon.len())));
    }
    SpectralParams::new(Complex64::new(a.s_re, a.s_im), a.c, gamma, epsilon)
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::invalid("samples", format!("must be at least {MIN_SAMPLES}, got {samples}")));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol_sigma", format!("must be positive, got {tol}")));
    }
    Ok(())
}

fn parse_list(name: &'static str, s: &str) -> Result<Vec<f64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::invalid(name, format!("`{t}` is not a number")))
        })
        .collect()
}

fn parse_signature(name: &'static str, s: &str, n: usize) -> Result<Signature> {
    let sig: Signature = s.parse().map_err(|e: Error| Error::invalid(name, e.to_string()))?;
    if sig.len() != n {
        return Err(Error::invalid(name, format!("expected {n} entries, got {}", sig.len())));
    }
    Ok(sig)
}

/// A square matrix from a row-major list.
pub fn parse_matrix(s: &str) -> Result<RealSquareMatrix> {
    RealSquareMatrix::from_flat(&parse_list("matrix", s)?)
}

/// Matrices from text: one row per line, blank lines between matrices,
/// `#` starts a comment.
pub fn parse_matrices_text(text: &str) -> Result<Vec<RealSquareMatrix>> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines().chain(std::iter::once("")) {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if !rows.is_empty() {
                out.push(RealSquareMatrix::from_rows(&rows)?);
                rows.clear();
            }
            continue;
        }
        rows.push(parse_list("matrix", line)?);
    }
    Ok(out)
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn collect_points(a: &PointArgs, n: usize) -> Result<Vec<RealSquareMatrix>> {
    let mut pts = Vec::new();
    for s in &a.points {
        pts.push(parse_matrix(s)?);
    }
    if let Some(path) = &a.points_file {
        pts.extend(parse_matrices_text(&read_file(path)?)?);
    }
    for p in &pts {
        if p.dim() != n {
            return Err(Error::invalid("point", format!("expected a {n}×{n} matrix, got {}×{}", p.dim(), p.dim())));
        }
    }
    Ok(pts)
}

fn single_matrix(a: &MatrixArgs) -> Result<RealSquareMatrix> {
    match (&a.matrix, &a.matrix_file) {
        (Some(s), None) => parse_matrix(s),
        (None, Some(path)) => {
            let mut all = parse_matrices_text(&read_file(path)?)?;
            if all.len() != 1 {
                return Err(Error::invalid("matrix_file", format!("expected one matrix, found {}", all.len())));
            }
            Ok(all.remove(0))
        }
        _ => Err(Error::invalid("matrix", "give exactly one of --matrix and --matrix-file")),
    }
}

fn run_lfactor(a: &SpectralArgs) -> Result<Vec<ResultRow>> {
    let p = spectral_params(a)?;
    let value = l_factor(&p)?.value;
    // Each factor c^{−z}Γ(z) is twice the Gamma integral at x = 2z.
    let args = l_factor_arguments(&p);
    let mut row = if args.iter().all(|z| z.re > 0.0) {
        let mut reference = Complex64::new(1.0, 0.0);
        for z in &args {
            reference *= 2.0 * gamma_integral_oracle(2.0 * z, p.c)?;
        }
        let err = (value - reference).norm() / reference.norm();
        ResultRow::exact("L(s,c|eps,gamma)", value, reference, err, 1e-8)
    } else {
        let mut r = ResultRow::exact("L(s,c|eps,gamma)", value, value, 0.0, 1.0);
        r.reference = None;
        r.error = None;
        r
    };
    row.detail = Some(json!({ "gamma_arguments": args.iter().map(|&z| Cx::from(z)).collect::<Vec<_>>() }));
    Ok(vec![row])
}

fn run_decomposition(a: &MatrixArgs, cartan: bool) -> Result<Vec<ResultRow>> {
    let g = single_matrix(a)?;
    let scale = g.frobenius_norm();
    let (residuals, factors) = if cartan {
        let f = cartan_decompose(&g)?;
        (cartan_residuals(&g, &f), serde_json::to_value(&f).expect("serializable"))
    } else {
        let f = iwasawa_decompose(&g)?;
        (iwasawa_residuals(&g, &f), serde_json::to_value(&f).expect("serializable"))
    };
    let mut rec = ResultRow::exact(
        "reconstruction residual / |g|",
        Complex64::new(residuals.reconstruction / scale, 0.0),
        Complex64::new(0.0, 0.0),
        residuals.reconstruction / scale,
        1e-12,
    );
    rec.point = Some(g.clone());
    rec.detail = Some(factors);
    let orth = ResultRow::exact(
        "orthogonality defect",
        Complex64::new(residuals.orthogonality, 0.0),
        Complex64::new(0.0, 0.0),
        residuals.orthogonality,
        1e-12,
    );
    Ok(vec![rec, orth])
}

fn run_eigencheck(a: &EigencheckArgs, stream: &RandomStream) -> Result<Vec<ResultRow>> {
    check_samples(a.run.samples)?;
    check_tol(a.run.tol_sigma)?;
    let p = spectral_params(&a.run.spectral)?;
    let mut points = collect_points(&a.points, p.dim())?;
    if points.is_empty() {
        points.push(RealSquareMatrix::identity(p.dim()));
    }
    let opts = ConvolutionOptions {
        kernel: match a.kernel {
            KernelArg::Full => Kernel::Full,
            KernelArg::Spherical => Kernel::Spherical,
        },
        measure: match a.measure {
            MeasureArg::Normalized => HaarMeasure::Normalized,
            MeasureArg::Lebesgue => HaarMeasure::Lebesgue,
        },
    };
    let report = eigenvalue_check_with(&p, &points, a.run.samples, stream, a.run.tol_sigma, opts)?;
    let expected = expected_eigenvalue(&p, report.reference.value, opts);
    let mut rows: Vec<ResultRow> = report
        .points
        .iter()
        .map(|r| {
            let mut row = ResultRow::stochastic("ratio", Some(r.point.clone()), &r.ratio, expected, a.run.tol_sigma);
            row.detail = Some(json!({
                "phi": Cx::from(r.phi),
                "relative_stderr": r.ratio.relative_stderr(),
                "samples": r.ratio.samples,
                "rejected": r.ratio.rejected,
            }));
            row
        })
        .collect();
    if report.points.len() > 1 {
        let z = report.max_pairwise_z();
        rows.push(ResultRow {
            point: None,
            label: "max pairwise ratio disagreement".into(),
            estimate: z.into(),
            stderr: None,
            reference: None,
            z_score: Some(z),
            pass: z <= a.run.tol_sigma,
            error: None,
            detail: None,
        });
    }
    Ok(rows)
}

fn run_cartancheck(a: &StochasticArgs, stream: &RandomStream) -> Result<Vec<ResultRow>> {
    check_samples(a.samples)?;
    check_tol(a.tol_sigma)?;
    let p = spectral_params(&a.spectral)?;
    let reference = l_factor(&p)?.value;
    let polar = cartan_eigenvalue_estimate(&p, a.samples, stream)?;
    let id = RealSquareMatrix::identity(p.dim());
    let direct = convolve_vector_with(&p, &id, a.samples, &stream.with_stream(stream.stream_id.wrapping_add(1)), ConvolutionOptions::default())?;
    let diff = polar.minus_independent(&direct);
    Ok(vec![
        ResultRow::stochastic("polar estimate vs L", None, &polar, reference, a.tol_sigma),
        ResultRow::stochastic("direct estimate at identity vs L", Some(id), &direct, reference, a.tol_sigma),
        ResultRow::stochastic("polar minus direct", None, &diff, Complex64::new(0.0, 0.0), a.tol_sigma),
    ])
}

fn run_sphfun(a: &SphfunArgs, stream: &RandomStream) -> Result<Vec<ResultRow>> {
    check_samples(a.run.samples)?;
    check_tol(a.run.tol_sigma)?;
    let p = spectral_params(&a.run.spectral)?;
    let n = p.dim();
    let mut points = collect_points(&a.points, n)?;
    if points.is_empty() {
        points.push(RealSquareMatrix::identity(n));
    }
    let mut rows = Vec::new();
    for (i, g) in points.iter().enumerate() {
        let est = spherical_function(&p, g, a.run.samples, &stream.with_stream(stream.stream_id.wrapping_add(i as u32)))?;
        if g.max_abs_diff(&RealSquareMatrix::identity(n)) == 0.0 {
            let reference = 1.0 / binomial(n, p.epsilon.weight()) as f64;
            rows.push(ResultRow::stochastic("Phi(1) vs 1/d", Some(g.clone()), &est, Complex64::new(reference, 0.0), a.run.tol_sigma));
        } else {
            rows.push(ResultRow {
                point: Some(g.clone()),
                label: "Phi(g)".into(),
                estimate: est.mean.into(),
                stderr: Some(est.stderr),
                reference: None,
                z_score: None,
                pass: true,
                error: None,
                detail: Some(json!({ "samples": est.samples })),
            });
        }
    }
    Ok(rows)
}

fn run_schur(a: &SchurArgs, stream: &RandomStream) -> Result<Vec<ResultRow>> {
    check_samples(a.samples)?;
    check_tol(a.tol_sigma)?;
    let n = a.ell + 1;
    let mut quads = Vec::new();
    if a.all {
        for k1 in 0..=n {
            for k2 in 0..=n {
                let first1 = Signature::of_weight(n, k1).next().expect("weight in range");
                let last1 = Signature::of_weight(n, k1).last().expect("weight in range");
                let first2 = Signature::of_weight(n, k2).next().expect("weight in range");
                let last2 = Signature::of_weight(n, k2).last().expect("weight in range");
                if k1 == k2 {
                    quads.push((first1, last1, last1, first1));
                    quads.push((first1, first1, first1, first1));
                } else {
                    quads.push((first1, last1, first2, last2));
                }
            }
        }
    } else {
        let need = |name: &'static str, v: &Option<String>| -> Result<Signature> {
            match v {
                Some(s) => parse_signature(name, s, n),
                None => Err(Error::invalid(name, "required unless --all is given")),
            }
        };
        quads.push((need("e1", &a.e1)?, need("e1p", &a.e1p)?, need("e2", &a.e2)?, need("e2p", &a.e2p)?));
    }
    let mut rows = Vec::new();
    for (i, (e1, e1p, e2, e2p)) in quads.into_iter().enumerate() {
        let sub = stream.with_stream(stream.stream_id.wrapping_add(i as u32));
        let est = schur_orthogonality_check(e1.weight(), e2.weight(), &e1, &e1p, &e2, &e2p, a.samples, &sub)?;
        let reference = schur_prediction(&e1, &e1p, &e2, &e2p);
        rows.push(ResultRow::stochastic(
            format!("e1={e1} e1p={e1p} e2={e2} e2p={e2p}"),
            None,
            &est,
            Complex64::new(reference, 0.0),
            a.tol_sigma,
        ));
    }
    Ok(rows)
}

fn run_projector(a: &ProjectorArgs, stream: &RandomStream) -> Result<Vec<ResultRow>> {
    check_samples(a.samples)?;
    check_tol(a.tol_sigma)?;
    let n = a.ell + 1;
    let mut points = collect_points(&a.points, n)?;
    if points.is_empty() {
        points.push(RealSquareMatrix::identity(n));
        let mut rng = stream.with_stream(u32::MAX).rng();
        points.push(sample_orthogonal(n, &mut rng));
        points.push(sample_orthogonal(n, &mut rng));
    }
    let dw = |k: &RealSquareMatrix| Complex64::new(delta_w(k), 0.0);
    let mut rows = Vec::new();
    for (i, k) in points.iter().enumerate() {
        let sub = stream.with_stream(stream.stream_id.wrapping_add(i as u32));
        let est = compact_convolution(dw, dw, k, a.samples, &sub)?;
        rows.push(ResultRow::stochastic("(dW * dW)(k) vs dW(k)", Some(k.clone()), &est, dw(k), a.tol_sigma));
    }
    Ok(rows)
}

fn run_ramified(a: &RamifiedArgs, stream: &RandomStream) -> Result<Vec<ResultRow>> {
    check_samples(a.samples)?;
    check_tol(a.tol_sigma)?;
    let n = a.ell + 1;
    let e1 = parse_signature("e1", &a.e1, n)?;
    let e1p = parse_signature("e1p", &a.e1p, n)?;
    let e2 = parse_signature("e2", &a.e2, n)?;
    let e2p = parse_signature("e2p", &a.e2p, n)?;
    let f = RadialProfile::new(a.t_f.unwrap_or(n as f64 + 1.0), a.c_f)?;
    let g = RadialProfile::new(a.t_g, a.c_g)?;
    let mut points = collect_points(&a.points, n)?;
    if points.is_empty() {
        points.push(RealSquareMatrix::identity(n));
    }
    let mut rows = Vec::new();
    for (i, pt) in points.iter().enumerate() {
        let sub = stream.with_stream(stream.stream_id.wrapping_add(i as u32));
        let r = ramified_convolution_check(&f, &g, &e1, &e1p, &e2, &e2p, pt, a.samples, &sub, a.tol_sigma)?;
        rows.push(ResultRow {
            point: Some(pt.clone()),
            label: "left side vs predicted right side".into(),
            estimate: r.left.mean.into(),
            stderr: Some(r.difference.stderr),
            reference: Some(r.prediction.into()),
            z_score: Some(r.z_score),
            pass: r.pass,
            error: None,
            detail: Some(json!({
                "factor": r.factor,
                "scalar_convolution": Cx::from(r.scalar.mean),
                "scalar_stderr": r.scalar.stderr,
                "left_stderr": r.left.stderr,
                "ratio": r.ratio.map(Cx::from),
                "samples": r.left.samples,
                "rejected": r.left.rejected,
            })),
        });
    }
    Ok(rows)
}

fn run_fourier(a: &FourierArgs) -> Result<Vec<ResultRow>> {
    if a.max_n == 0 || a.max_n > 4 {
        return Err(Error::invalid("max_n", format!("must be in 1..=4, got {}", a.max_n)));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut rows = Vec::new();
    for n in 1..=a.max_n {
        let err = verify_modified_gaussian_identity(n)?;
        rows.push(ResultRow::exact(format!("F[dW gaussian] coefficients, n={n}"), err.into(), zero, err, 1e-12));
    }
    for f in [TestFunction::Gaussian, TestFunction::XGaussian] {
        for y in [0.0, 0.7, -1.3] {
            let num = fourier_numeric_1d(f, y, 0.0)?.value;
            let exact = f.exact(y);
            let err = (num - exact).norm();
            rows.push(ResultRow::exact(format!("{f:?} transform at y={y}"), num, exact, err, 1e-6));
        }
    }
    Ok(rows)
}

fn default_feynman_points(n: usize) -> Vec<RealSquareMatrix> {
    match n {
        1 => [0.0, 0.35, -0.8]
            .iter()
            .map(|&y| RealSquareMatrix::from_flat(&[y]).expect("1×1"))
            .collect(),
        _ => vec![
            RealSquareMatrix::zeros(2),
            RealSquareMatrix::from_flat(&[0.3, -0.2, 0.1, 0.5]).expect("2×2"),
            RealSquareMatrix::from_flat(&[-0.6, 0.4, 0.25, -0.1]).expect("2×2"),
        ],
    }
}

fn run_feynman(a: &FeynmanArgs) -> Result<Vec<ResultRow>> {
    let sizes = match a.n {
        Some(n) => vec![n],
        None => vec![1, 2],
    };
    let reg = if a.extrapolate {
        Regularization::Extrapolated
    } else {
        Regularization::Fixed(a.eps_reg)
    };
    let mut rows = Vec::new();
    for n in sizes {
        let mut points = collect_points(&a.points, n)?;
        if points.is_empty() {
            points = default_feynman_points(n);
        }
        let report = feynman_phase_check(n, reg, &points, a.tolerance)?;
        for p in report.points {
            rows.push(ResultRow {
                point: Some(p.point),
                label: format!("F[dW feynman], n={n}"),
                estimate: p.numeric.into(),
                stderr: None,
                reference: Some(p.expected.into()),
                z_score: None,
                pass: p.pass,
                error: Some(p.rel_error),
                detail: Some(json!({
                    "expected_phase": report.expected_phase,
                    "measured_phase": p.measured_phase,
                    "abs_error": p.abs_error,
                })),
            });
        }
    }
    Ok(rows)
}

fn run_identities(a: &IdentitiesArgs, stream: &RandomStream) -> Result<Vec<ResultRow>> {
    if a.count == 0 {
        return Err(Error::invalid("count", "must be positive"));
    }
    let mut rng = stream.rng();
    let mut rows = Vec::new();

    let mut worst_legendre: f64 = 0.0;
    let mut worst_glc: f64 = 0.0;
    for _ in 0..a.count {
        let s = Complex64::new(rng.random_range(0.5..10.0), rng.random_range(-5.0..5.0));
        worst_legendre = worst_legendre.max(legendre_duplication_residual(s)?);
        let gamma: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..2.0)).collect();
        let c = if rng.random::<bool>() { 1.0 } else { PI };
        let product = gl_c_l_factor(s, c, &gamma)?;
        let closed = gl_c_l_factor_closed_form(s, c, &gamma)?;
        worst_glc = worst_glc.max((product - closed).norm() / closed.norm());
    }
    let zero = Complex64::new(0.0, 0.0);
    rows.push(ResultRow::exact("Legendre duplication, max relative error", worst_legendre.into(), zero, worst_legendre, 1e-12));
    rows.push(ResultRow::exact("GL(C) product relation, max relative error", worst_glc.into(), zero, worst_glc, 1e-12));

    let mut worst_oracle: f64 = 0.0;
    for re in [0.5, 1.0, 2.0, 3.5, 6.0] {
        for im in [-3.0, -1.0, 0.0, 1.5, 3.0] {
            let x = Complex64::new(re, im);
            let closed = 0.5 * (log_gamma(x * 0.5)? - x * 0.5 * 1f64.ln()).exp();
            let quad = gamma_integral_oracle(x, 1.0)?;
            worst_oracle = worst_oracle.max((quad - closed).norm() / closed.norm());
        }
    }
    rows.push(ResultRow::exact("Gamma integral vs log-Gamma, max relative error", worst_oracle.into(), zero, worst_oracle, 1e-8));
    Ok(rows)
}

/// Runs one command and builds its report.
pub fn run(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let stream = RandomStream::new(cli.seed, 0);
    let results = match &cli.command {
        Command::Lfactor(a) => run_lfactor(a)?,
        Command::Iwasawa(a) => run_decomposition(a, false)?,
        Command::Cartan(a) => run_decomposition(a, true)?,
        Command::Eigencheck(a) => run_eigencheck(a, &stream)?,
        Command::Cartancheck(a) => run_cartancheck(a, &stream)?,
        Command::Sphfun(a) => run_sphfun(a, &stream)?,
        Command::Schur(a) => run_schur(a, &stream)?,
        Command::Projector(a) => run_projector(a, &stream)?,
        Command::Ramified(a) => run_ramified(a, &stream)?,
        Command::Fourier(a) => run_fourier(a)?,
        Command::Feynman(a) => run_feynman(a)?,
        Command::Identities(a) => run_identities(a, &stream)?,
    };
    let command_value = serde_json::to_value(&cli.command).expect("serializable");
    let (command, mut config) = match command_value {
        Value::Object(map) => {
            let (k, v) = map.into_iter().next().expect("one variant");
            (k, v)
        }
        Value::String(s) => (s, json!({})),
        other => ("unknown".into(), other),
    };
    if let Value::Object(map) = &mut config {
        map.insert("seed".into(), json!(cli.seed));
    }
    let pass = results.iter().all(|r| r.pass);
    Ok(Report {
        command,
        config,
        results,
        pass,
        elapsed_seconds: cli.timing.then(|| start.elapsed().as_secs_f64()),
    })
}

/// Configuration problems exit with 2; everything else that stops a run
/// counts as a failed check.
fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParameter { .. }
            | Error::Precondition(_)
            | Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::DimensionTooLarge { .. }
            | Error::SingularMatrix { .. }
            | Error::DegenerateVector { .. }
            | Error::NotOrthogonal { .. }
            | Error::EmptyMatrix
            | Error::NonFinite { .. }
            | Error::Pole { .. }
    )
}

fn emit(report: &Report, output: Option<&Path>) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(report).expect("serializable");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Entry point of the binary.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.workers {
        Some(0) => Err(Error::invalid("workers", "must be positive")),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Error::invalid("workers", e.to_string())),
        },
        None => run(&cli),
    };
    match outcome {
        Ok(report) => {
            if let Err(e) = emit(&report, cli.output.as_deref()) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_config_error(&e) { 2 } else { 1 })
        }
    }
}
