//! Complex log-Gamma and the Archimedean L-factors built from it.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::character::SpectralParams;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureOptions};
use crate::signature::Signature;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// log sin(w), stable for large |Im w|.
fn log_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > 20.0 {
        // sin w = (i/2)·e^{−iw}·(1 − e^{2iw})
        -i * w - Complex64::new(LN_2, -PI / 2.0) + (Complex64::new(1.0, 0.0) - (2.0 * i * w).exp()).ln()
    } else if w.im < -20.0 {
        // sin w = (−i/2)·e^{iw}·(1 − e^{−2iw})
        i * w - Complex64::new(LN_2, PI / 2.0) + (Complex64::new(1.0, 0.0) - (-2.0 * i * w).exp()).ln()
    } else {
        w.sin().ln()
    }
}

/// log Γ(z), equal to the principal log Γ up to a multiple of 2πi.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite { what: "log_gamma argument" });
    }
    if is_pole(z) {
        return Err(Error::Pole { index: 0, argument: z });
    }
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        let rest = log_gamma(Complex64::new(1.0, 0.0) - z)?;
        return Ok(LN_PI - log_sin(PI * z) - rest);
    }
    let zm = z - 1.0;
    let mut series = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (zm + k as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI + (zm + 0.5) * t.ln() - t + series.ln())
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// `L(s, c | ε, γ)` together with the data it was evaluated at.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LFactorValue {
    pub value: Complex64,
    pub params: SpectralParams,
}

/// Gamma arguments z_j = (s + ε_j − iγ_j)/2.
pub fn l_factor_arguments(p: &SpectralParams) -> Vec<Complex64> {
    (0..p.dim())
        .map(|j| (p.s + p.epsilon.bit(j) as f64 - Complex64::new(0.0, p.gamma[j])) * 0.5)
        .collect()
}

/// L(s, c | ε, γ) = ∏_j c^{−z_j} Γ(z_j), summed in log space.
pub fn l_factor(p: &SpectralParams) -> Result<LFactorValue> {
    let ln_c = p.c.ln();
    let mut log = Complex64::new(0.0, 0.0);
    for (j, z) in l_factor_arguments(p).into_iter().enumerate() {
        let lg = log_gamma(z).map_err(|e| match e {
            Error::Pole { argument, .. } => Error::Pole { index: j + 1, argument },
            other => other,
        })?;
        log += lg - z * ln_c;
    }
    Ok(LFactorValue {
        value: log.exp(),
        params: p.clone(),
    })
}

/// L(s | 0, γ) · L(s | (1,…,1), γ).
pub fn gl_c_l_factor(s: Complex64, c: f64, gamma: &[f64]) -> Result<Complex64> {
    let n = gamma.len();
    let p0 = SpectralParams::new(s, c, gamma.to_vec(), Signature::zero(n))?;
    let p1 = p0.with_epsilon(Signature::full(n))?;
    Ok(l_factor(&p0)?.value * l_factor(&p1)?.value)
}

/// ∏_j 2^{1−z_j} √π c^{−z_j−1/2} Γ(z_j) with z_j = s − iγ_j; the same
/// product as [`gl_c_l_factor`] by Legendre duplication, evaluated through
/// single Gamma values.
pub fn gl_c_l_factor_closed_form(s: Complex64, c: f64, gamma: &[f64]) -> Result<Complex64> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::invalid("c", format!("must be a positive real, got {c}")));
    }
    let mut log = Complex64::new(0.0, 0.0);
    for (j, &g) in gamma.iter().enumerate() {
        let z = s - Complex64::new(0.0, g);
        let lg = log_gamma(z).map_err(|e| match e {
            Error::Pole { argument, .. } => Error::Pole { index: j + 1, argument },
            other => other,
        })?;
        log += (1.0 - z) * LN_2 + 0.5 * LN_PI - (z + 0.5) * c.ln() + lg;
    }
    Ok(log.exp())
}

/// |Γ(s) / (2^{s−1} π^{−1/2} Γ(s/2) Γ((s+1)/2)) − 1|.
pub fn legendre_duplication_residual(s: Complex64) -> Result<f64> {
    let lhs = log_gamma(s)?;
    let rhs = (s - 1.0) * LN_2 - 0.5 * LN_PI + log_gamma(s * 0.5)? + log_gamma((s + 1.0) * 0.5)?;
    Ok(((rhs - lhs).exp() - 1.0).norm())
}

/// ∫₀^∞ a^{x−1} e^{−c a²} da by adaptive quadrature in `u = log a`. Its
/// closed form is ½ c^{−x/2} Γ(x/2).
pub fn gamma_integral_oracle(x: Complex64, c: f64) -> Result<Complex64> {
    if !(x.re > 0.0 && x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::NoConvergence {
            what: "gamma integral (requires Re x > 0)",
        });
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::invalid("c", format!("must be a positive real, got {c}")));
    }
    // Integrand e^{xu − c e^{2u}}: below `lo` it is under e^{−40}, above `hi`
    // the Gaussian factor has crushed it.
    let lo = -40.0 / x.re;
    let hi = 0.5 * ((200.0 + 4.0 * x.norm()) / c).ln();
    let periods = (x.im.abs() * (hi - lo) / (2.0 * PI)).ceil() as usize;
    let opts = QuadratureOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-12,
        initial_panels: 16 + 2 * periods,
        max_intervals: 50_000,
    };
    let r = integrate(|u| (x * u - c * (2.0 * u).exp()).exp(), lo, hi, opts)?;
    Ok(r.value)
}
