//! The exterior-algebra representation `W = ⊕ₖ ∧ᵏℂⁿ` of GL(n, ℝ).
//!
//! In the wedge basis `v_ε` (indices ascending), the matrix element
//! `(v_ε', π_W(g) v_ε)` is the minor of `g` with rows `supp ε'` and columns
//! `supp ε`. The `√k!` normalization of the basis cancels in every such
//! element, so no factorials appear below.

use num_complex::Complex64;

use crate::character::{torus_character, SpectralParams};
use crate::decompose::{iwasawa_decompose, orthogonal_borel_split};
use crate::error::{Error, Result};
use crate::matrix::{det_row_major, submatrix_det, RealSquareMatrix, MAX_DIM};
use crate::signature::{binomial, Signature};

pub mod polynomial;

pub use polynomial::{delta_w_polynomial, minor_expansion, MultilinearPolynomial};

fn check_len(sig: &Signature, n: usize) -> Result<()> {
    if sig.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: sig.len(),
        });
    }
    Ok(())
}

/// `(v_{eps_row}, π_W(g) v_{eps_col})`. Zero when the weights differ; one at
/// grade 0.
pub fn minor_matrix_element(
    eps_row: &Signature,
    eps_col: &Signature,
    g: &RealSquareMatrix,
) -> Result<f64> {
    check_len(eps_row, g.dim())?;
    check_len(eps_col, g.dim())?;
    Ok(minor_unchecked(eps_row, eps_col, g))
}

#[inline]
pub(crate) fn minor_unchecked(eps_row: &Signature, eps_col: &Signature, g: &RealSquareMatrix) -> f64 {
    if eps_row.weight() != eps_col.weight() {
        return 0.0;
    }
    let mut rows = [0usize; MAX_DIM];
    let mut cols = [0usize; MAX_DIM];
    let k = eps_row.support_into(&mut rows);
    eps_col.support_into(&mut cols);
    submatrix_det(g, &rows[..k], &cols[..k])
}

/// Principal minor Δ_ε(g).
#[inline]
pub fn principal_minor(eps: &Signature, g: &RealSquareMatrix) -> f64 {
    minor_unchecked(eps, eps, g)
}

/// Δ_W(g) = Σ_ε d_{|ε|} Δ_ε(g), summed over all 2ⁿ principal minors.
pub fn delta_w(g: &RealSquareMatrix) -> f64 {
    let n = g.dim();
    match n {
        1 => 1.0 + g.get(0, 0),
        2 => 1.0 + 2.0 * (g.get(0, 0) + g.get(1, 1)) + g.det(),
        _ => {
            let mut total = 0.0;
            let mut buf = [0.0; MAX_DIM * MAX_DIM];
            let mut idx = [0usize; MAX_DIM];
            for mask in 0u32..(1 << n) {
                let mut k = 0;
                for i in 0..n {
                    if mask >> i & 1 == 1 {
                        idx[k] = i;
                        k += 1;
                    }
                }
                for a in 0..k {
                    for b in 0..k {
                        buf[a * k + b] = g.get(idx[a], idx[b]);
                    }
                }
                total += binomial(n, k) as f64 * det_row_major(&buf, k);
            }
            total
        }
    }
}

/// Δ_W through the characteristic polynomial: `det(tI + g) = Σ_k e_k(g) tⁿ⁻ᵏ`,
/// with the `e_k` obtained by Faddeev–LeVerrier (traces of matrix powers,
/// no minors), then `Δ_W = Σ_k C(n,k) e_k`.
pub fn delta_w_charpoly_oracle(g: &RealSquareMatrix) -> f64 {
    let n = g.dim();
    // p(t) = det(tI − g) = Σ_k c_k t^k, c_n = 1.
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let mut m = RealSquareMatrix::zeros(n);
    for k in 1..=n {
        let mut next = g.mul(&m);
        for i in 0..n {
            next.set(i, i, next.get(i, i) + c[n - k + 1]);
        }
        m = next;
        c[n - k] = -g.mul(&m).trace() / k as f64;
    }
    // det(tI + g) = (−1)ⁿ p(−t)  ⇒  e_k = (−1)^k c_{n−k}.
    (0..=n)
        .map(|k| {
            let e_k = if k % 2 == 0 { c[n - k] } else { -c[n - k] };
            binomial(n, k) as f64 * e_k
        })
        .sum()
}

/// The ε-spherical vector of a principal series, prepared for repeated
/// evaluation: φ_ε(g) = Δ_ε(k(g)) · ∏ a_j(g)^{iγ_j + ρ_j}.
#[derive(Debug, Clone)]
pub struct SphericalVector {
    row: Signature,
    col: Signature,
    gamma: Vec<f64>,
    rho: Vec<f64>,
}

impl SphericalVector {
    pub fn new(p: &SpectralParams) -> Self {
        Self::basis(p.epsilon, p).expect("same signature has equal weight")
    }

    /// The basis element φ^{eps_row}_{ε,γ}.
    pub fn basis(eps_row: Signature, p: &SpectralParams) -> Result<Self> {
        check_len(&eps_row, p.dim())?;
        Ok(Self {
            row: eps_row,
            col: p.epsilon,
            gamma: p.gamma.clone(),
            rho: p.rho(),
        })
    }

    pub fn eval(&self, g: &RealSquareMatrix) -> Result<Complex64> {
        if g.dim() != self.gamma.len() {
            return Err(Error::DimensionMismatch {
                expected: self.gamma.len(),
                found: g.dim(),
            });
        }
        if self.row.weight() != self.col.weight() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let f = iwasawa_decompose(g)?;
        Ok(minor_unchecked(&self.row, &self.col, &f.k) * torus_character(&self.gamma, &self.rho, &f.a))
    }

    /// Evaluation for a matrix already known to be invertible.
    #[inline]
    pub(crate) fn eval_invertible(&self, g: &RealSquareMatrix) -> Result<Complex64> {
        let (k, b) = orthogonal_borel_split(g)?;
        let n = g.dim();
        let mut a = [0.0; MAX_DIM];
        for (j, aj) in a.iter_mut().take(n).enumerate() {
            *aj = b.get(j, j);
        }
        Ok(minor_unchecked(&self.row, &self.col, &k) * torus_character(&self.gamma, &self.rho, &a[..n]))
    }
}

/// φ^{ε'}_{ε,γ}(g) = (v_ε', π_W(k) v_ε) χ^B_γ(a) with `g = k·a·n`.
pub fn phi_basis(eps_row: &Signature, p: &SpectralParams, g: &RealSquareMatrix) -> Result<Complex64> {
    SphericalVector::basis(*eps_row, p)?.eval(g)
}

/// φ_ε(g); equals 1 at the identity.
pub fn epsilon_spherical(p: &SpectralParams, g: &RealSquareMatrix) -> Result<Complex64> {
    SphericalVector::new(p).eval(g)
}
