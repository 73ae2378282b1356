//! Globally adaptive Gauss–Kronrod (7–15) quadrature for complex integrands
//! on a finite interval.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Number of equal panels the interval is cut into before adapting.
    pub initial_panels: usize,
    pub max_intervals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            initial_panels: 16,
            max_intervals: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub intervals: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut values = [Complex64::new(0.0, 0.0); 15];
    values[7] = f(center);
    for i in 0..7 {
        let dx = half * XGK[i];
        values[i] = f(center - dx);
        values[14 - i] = f(center + dx);
    }
    let mut kron = values[7] * WGK[7];
    let mut gauss = values[7] * WG[3];
    for i in 0..7 {
        let pair = values[i] + values[14 - i];
        kron += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    // QUADPACK error scaling: |K − G| relative to ∫|f − mean|.
    let mean = kron * 0.5;
    let mut resasc = WGK[7] * (values[7] - mean).norm();
    for i in 0..7 {
        resasc += WGK[i] * ((values[i] - mean).norm() + (values[14 - i] - mean).norm());
    }
    resasc *= half.abs();
    let value = kron * half;
    let mut error = ((kron - gauss) * half).norm();
    if resasc > 0.0 && error > 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite {
            what: "quadrature integrand",
        });
    }
    Ok(Panel { a, b, value, error })
}

/// ∫_a^b f(x) dx, splitting the panel with the largest error estimate until
/// the summed estimate drops below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::invalid("interval", format!("[{a}, {b}] is not a finite, non-empty interval")));
    }
    let panels = opts.initial_panels.max(1);
    let width = (b - a) / panels as f64;
    let mut breaks: Vec<f64> = (0..panels).map(|i| a + width * i as f64).collect();
    breaks.push(b);
    integrate_panels(f, &breaks, opts)
}

/// As [`integrate`], starting from the panels between consecutive
/// `breakpoints` (strictly increasing) instead of equal panels.
pub fn integrate_panels<F>(mut f: F, breakpoints: &[f64], opts: QuadratureOptions) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Complex64,
{
    if breakpoints.len() < 2
        || breakpoints.iter().any(|x| !x.is_finite())
        || breakpoints.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::invalid("breakpoints", "need at least two finite, strictly increasing points"));
    }
    let mut heap = BinaryHeap::with_capacity(breakpoints.len() * 2);
    for w in breakpoints.windows(2) {
        heap.push(kronrod(&mut f, w[0], w[1])?);
    }
    let max_intervals = opts.max_intervals.max(2 * breakpoints.len());
    let mut value: Complex64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        if error <= opts.abs_tol.max(opts.rel_tol * value.norm()) {
            // Running sums drift; confirm with exact totals before returning.
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
            if error <= opts.abs_tol.max(opts.rel_tol * value.norm()) {
                return Ok(QuadratureResult {
                    value,
                    error_estimate: error,
                    intervals: heap.len(),
                });
            }
        }
        if heap.len() >= max_intervals {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature",
            });
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature (interval underflow)",
            });
        }
        let left = kronrod(&mut f, worst.a, mid)?;
        let right = kronrod(&mut f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Complex64 {
        move |x| Complex64::new(f(x), 0.0)
    }

    #[test]
    fn polynomial_exact() {
        let r = integrate(real(|x| x.powi(5) - 3.0 * x * x), -1.0, 2.0, QuadratureOptions::default()).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0);
        assert!((r.value.re - exact).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_complex() {
        // ∫_0^{10} e^{i 7x} dx = (e^{70i} − 1)/(7i)
        let r = integrate(|x| Complex64::new(0.0, 7.0 * x).exp(), 0.0, 10.0, QuadratureOptions::default()).unwrap();
        let exact = (Complex64::new(0.0, 70.0).exp() - 1.0) / Complex64::new(0.0, 7.0);
        assert!((r.value - exact).norm() < 1e-11);
    }

    #[test]
    fn endpoint_singularity_refines() {
        // ∫_0^1 x^{-1/2} dx = 2
        let r = integrate(real(|x| x.powf(-0.5)), 0.0, 1.0, QuadratureOptions { rel_tol: 1e-9, ..Default::default() }).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-8);
    }

    #[test]
    fn explicit_panels() {
        let breaks = [0.0, 0.1, 0.5, 2.0];
        let r = integrate_panels(real(|x| x.exp()), &breaks, QuadratureOptions::default()).unwrap();
        assert!((r.value.re - (2f64.exp() - 1.0)).abs() < 1e-12);
        assert!(integrate_panels(real(|x| x), &[0.0, 0.0, 1.0], QuadratureOptions::default()).is_err());
    }

    #[test]
    fn bad_interval() {
        assert!(integrate(real(|x| x), 1.0, 0.0, QuadratureOptions::default()).is_err());
        assert!(integrate(real(|x| x), 0.0, f64::INFINITY, QuadratureOptions::default()).is_err());
    }
}
