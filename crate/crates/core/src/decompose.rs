//! Iwasawa (`g = k·a·n`) and polar Cartan (`g = k₁·a·k₂`) decompositions.
//!
//! The Borel subgroup here is lower-triangular, so the Iwasawa factor
//! `b = a·n` solves `gᵀg = bᵀb` with `b` lower-triangular and positive on the
//! diagonal. That is Cholesky with the index order reversed. A second pass on
//! the (nearly orthogonal) `k` from the first pass restores orthogonality to
//! working precision when `g` is moderately ill-conditioned.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::RealSquareMatrix;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IwasawaFactors {
    /// Orthogonal factor.
    pub k: RealSquareMatrix,
    /// Positive diagonal of `a`.
    pub a: Vec<f64>,
    /// Lower-triangular with unit diagonal.
    pub n_factor: RealSquareMatrix,
}

impl IwasawaFactors {
    pub fn reconstruct(&self) -> RealSquareMatrix {
        self.k.mul(&self.n_factor.scale_rows(&self.a))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartanFactors {
    pub k1: RealSquareMatrix,
    /// Singular values, non-increasing.
    pub a: Vec<f64>,
    pub k2: RealSquareMatrix,
}

impl CartanFactors {
    pub fn reconstruct(&self) -> RealSquareMatrix {
        self.k1.scale_columns(&self.a).mul(&self.k2)
    }
}

/// Residuals of a decomposition, as reported by the CLI.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecompositionResiduals {
    pub reconstruction: f64,
    pub orthogonality: f64,
}

/// Lower-triangular `b` with positive diagonal and `m = bᵀb`, for symmetric
/// positive-definite `m`.
fn reverse_cholesky(m: &RealSquareMatrix) -> Result<RealSquareMatrix> {
    let n = m.dim();
    let mut b = RealSquareMatrix::zeros(n);
    for i in (0..n).rev() {
        let mut d = m.get(i, i);
        for k in i + 1..n {
            d -= b.get(k, i) * b.get(k, i);
        }
        if !(d > 0.0) {
            return Err(Error::SingularMatrix {
                det: 0.0,
                tolerance: 0.0,
            });
        }
        let bii = d.sqrt();
        b.set(i, i, bii);
        for j in 0..i {
            let mut v = m.get(i, j);
            for k in i + 1..n {
                v -= b.get(k, i) * b.get(k, j);
            }
            b.set(i, j, v / bii);
        }
    }
    Ok(b)
}

/// Solves `k·b = g` for `k` with `b` lower-triangular.
fn right_divide_lower(g: &RealSquareMatrix, b: &RealSquareMatrix) -> RealSquareMatrix {
    let n = g.dim();
    let mut k = RealSquareMatrix::zeros(n);
    for r in 0..n {
        for j in (0..n).rev() {
            let mut v = g.get(r, j);
            for m in j + 1..n {
                v -= k.get(r, m) * b.get(m, j);
            }
            k.set(r, j, v / b.get(j, j));
        }
    }
    k
}

fn gram(g: &RealSquareMatrix) -> RealSquareMatrix {
    let n = g.dim();
    let mut m = RealSquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let mut acc = 0.0;
            for r in 0..n {
                acc += g.get(r, i) * g.get(r, j);
            }
            m.set(i, j, acc);
            m.set(j, i, acc);
        }
    }
    m
}

/// `g = k · b` with `b = diag(a)·n` lower-triangular, positive diagonal.
/// Skips the invertibility check; the caller guarantees `g` is invertible.
pub(crate) fn orthogonal_borel_split(
    g: &RealSquareMatrix,
) -> Result<(RealSquareMatrix, RealSquareMatrix)> {
    let b1 = reverse_cholesky(&gram(g))?;
    let k1 = right_divide_lower(g, &b1);
    let b2 = reverse_cholesky(&gram(&k1))?;
    let k = right_divide_lower(&k1, &b2);
    Ok((k, b2.mul(&b1)))
}

pub fn iwasawa_decompose(g: &RealSquareMatrix) -> Result<IwasawaFactors> {
    g.check_invertible()?;
    let (k, b) = orthogonal_borel_split(g)?;
    let a = b.diagonal();
    let inv: Vec<f64> = a.iter().map(|x| 1.0 / x).collect();
    let mut n_factor = b.scale_rows(&inv);
    for i in 0..g.dim() {
        n_factor.set(i, i, 1.0);
    }
    Ok(IwasawaFactors { k, a, n_factor })
}

/// One-sided Jacobi SVD: `g = U·diag(σ)·Vᵀ`, σ sorted non-increasing. Each
/// column of `U` is signed so its first non-negligible entry is positive, and
/// the matching column of `V` absorbs the sign.
pub fn cartan_decompose(g: &RealSquareMatrix) -> Result<CartanFactors> {
    g.check_invertible()?;
    let n = g.dim();
    let mut u = g.clone();
    let mut v = RealSquareMatrix::identity(n);
    const MAX_SWEEPS: usize = 80;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..n {
                    let (x, y) = (u.get(i, p), u.get(i, q));
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for m in [&mut u, &mut v] {
                    for i in 0..n {
                        let (x, y) = (m.get(i, p), m.get(i, q));
                        m.set(i, p, cs * x - sn * y);
                        m.set(i, q, sn * x + cs * y);
                    }
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "Jacobi SVD",
        });
    }

    let sigma: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|i| u.get(i, j).powi(2)).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| sigma[y].total_cmp(&sigma[x]));

    let mut k1 = RealSquareMatrix::zeros(n);
    let mut k2t = RealSquareMatrix::zeros(n);
    let mut a = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        let s = sigma[src];
        let col: Vec<f64> = (0..n).map(|i| u.get(i, src) / s).collect();
        let lead = col
            .iter()
            .copied()
            .find(|x| x.abs() > 1e-8)
            .unwrap_or(1.0);
        let sign = if lead < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            k1.set(i, dst, sign * col[i]);
            k2t.set(i, dst, sign * v.get(i, src));
        }
        a.push(s);
    }
    Ok(CartanFactors {
        k1,
        a,
        k2: k2t.transpose(),
    })
}

pub fn iwasawa_residuals(g: &RealSquareMatrix, f: &IwasawaFactors) -> DecompositionResiduals {
    DecompositionResiduals {
        reconstruction: f.reconstruct().sub(g).frobenius_norm(),
        orthogonality: f.k.orthogonality_defect(),
    }
}

pub fn cartan_residuals(g: &RealSquareMatrix, f: &CartanFactors) -> DecompositionResiduals {
    DecompositionResiduals {
        reconstruction: f.reconstruct().sub(g).frobenius_norm(),
        orthogonality: f.k1.orthogonality_defect().max(f.k2.orthogonality_defect()),
    }
}
