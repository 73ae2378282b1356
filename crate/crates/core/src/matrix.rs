//! Small dense real square matrices.
//!
//! Storage is inline (no heap) and row-major with stride `n`, capped at
//! [`MAX_DIM`]. Every group element handled by this crate is at most 8×8, and
//! the Monte-Carlo kernels build millions of these per run.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;
const CAP: usize = MAX_DIM * MAX_DIM;

#[derive(Clone, PartialEq)]
pub struct RealSquareMatrix {
    n: usize,
    data: [f64; CAP],
}

impl RealSquareMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_DIM, "dimension {n} out of range 1..={MAX_DIM}");
        Self {
            n,
            data: [0.0; CAP],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds an `n`×`n` matrix from row-major entries, rejecting bad shapes
    /// and non-finite values.
    pub fn from_row_major(n: usize, entries: &[f64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                what: "matrix entries",
            });
        }
        let mut m = Self::zeros(n);
        m.data[..n * n].copy_from_slice(entries);
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_row_major(n, &flat)
    }

    /// Infers `n` from a square number of row-major entries.
    pub fn from_flat(entries: &[f64]) -> Result<Self> {
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n * n != entries.len() {
            return Err(Error::Parse(format!(
                "{} entries do not form a square matrix",
                entries.len()
            )));
        }
        Self::from_row_major(n, entries)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data[..self.n * self.n]
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        let len = self.n * self.n;
        &mut self.data[..len]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.as_mut_slice().iter_mut().for_each(|x| *x *= s);
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix difference");
        let mut out = self.clone();
        for (x, y) in out.as_mut_slice().iter_mut().zip(rhs.as_slice()) {
            *x -= y;
        }
        out
    }

    /// Multiplies column `j` by `d[j]` (right multiplication by a diagonal).
    pub fn scale_columns(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.n);
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[i * self.n + j] *= d[j];
            }
        }
        out
    }

    /// Multiplies row `i` by `d[i]` (left multiplication by a diagonal).
    pub fn scale_rows(&self, d: &[f64]) -> Self {
        assert_eq!(d.len(), self.n);
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.data[i * self.n + j] *= d[i];
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// tr(gᵀg), the squared Frobenius norm.
    pub fn trace_gram(&self) -> f64 {
        self.as_slice().iter().map(|x| x * x).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.trace_gram().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// max |gᵀg − I|.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = self.transpose().mul(self);
        g.max_abs_diff(&Self::identity(self.n))
    }

    pub fn det(&self) -> f64 {
        det_row_major(self.as_slice(), self.n)
    }

    /// `|det g| < 1e-12 · (max |g_ij|)ⁿ` counts as singular.
    pub fn singularity_tolerance(&self) -> f64 {
        1e-12 * self.max_abs().powi(self.n as i32)
    }

    /// Checks finiteness and invertibility, returning the determinant.
    pub fn check_invertible(&self) -> Result<f64> {
        if !self.is_finite() {
            return Err(Error::NonFinite {
                what: "matrix entries",
            });
        }
        let det = self.det();
        let tolerance = self.singularity_tolerance();
        if !(det.abs() > tolerance) {
            return Err(Error::SingularMatrix {
                det: det.abs(),
                tolerance,
            });
        }
        Ok(det)
    }

    /// Solves `self · X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        assert_eq!(self.n, rhs.n, "dimension mismatch in solve");
        let n = self.n;
        let mut lu = self.clone();
        let mut x = rhs.clone();
        for col in 0..n {
            let mut piv = col;
            let mut best = lu.get(col, col).abs();
            for r in col + 1..n {
                let v = lu.get(r, col).abs();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 {
                return Err(Error::SingularMatrix {
                    det: 0.0,
                    tolerance: self.singularity_tolerance(),
                });
            }
            if piv != col {
                for j in 0..n {
                    lu.data.swap(col * n + j, piv * n + j);
                    x.data.swap(col * n + j, piv * n + j);
                }
            }
            let d = lu.get(col, col);
            for r in col + 1..n {
                let f = lu.get(r, col) / d;
                if f == 0.0 {
                    continue;
                }
                for j in col..n {
                    lu.data[r * n + j] -= f * lu.data[col * n + j];
                }
                for j in 0..n {
                    x.data[r * n + j] -= f * x.data[col * n + j];
                }
            }
        }
        for r in (0..n).rev() {
            let d = lu.get(r, r);
            for j in 0..n {
                let mut acc = x.get(r, j);
                for k in r + 1..n {
                    acc -= lu.get(r, k) * x.get(k, j);
                }
                x.set(r, j, acc / d);
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.check_invertible()?;
        self.solve(&Self::identity(self.n))
    }

    /// True when every entry strictly above the diagonal is zero up to
    /// `1e-12 · max |b_ij|`; otherwise reports the first offending entry.
    pub fn check_lower_triangular(&self) -> Result<()> {
        let tol = 1e-12 * self.max_abs();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j).abs() > tol {
                    return Err(Error::NotLowerTriangular { row: i, col: j });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RealSquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Serialized as a list of rows.
impl Serialize for RealSquareMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

/// Determinant of a `k`×`k` row-major block. Closed forms up to 3×3, LU with
/// partial pivoting beyond.
pub fn det_row_major(a: &[f64], k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        3 => {
            a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6])
        }
        _ => {
            let mut m = [0.0; CAP];
            m[..k * k].copy_from_slice(&a[..k * k]);
            let mut det = 1.0;
            for col in 0..k {
                let mut piv = col;
                let mut best = m[col * k + col].abs();
                for r in col + 1..k {
                    let v = m[r * k + col].abs();
                    if v > best {
                        best = v;
                        piv = r;
                    }
                }
                if best == 0.0 {
                    return 0.0;
                }
                if piv != col {
                    for j in 0..k {
                        m.swap(col * k + j, piv * k + j);
                    }
                    det = -det;
                }
                let d = m[col * k + col];
                det *= d;
                for r in col + 1..k {
                    let f = m[r * k + col] / d;
                    for j in col + 1..k {
                        m[r * k + j] -= f * m[col * k + j];
                    }
                }
            }
            det
        }
    }
}

/// Determinant of the submatrix with the given (ascending) rows and columns.
pub fn submatrix_det(g: &RealSquareMatrix, rows: &[usize], cols: &[usize]) -> f64 {
    debug_assert_eq!(rows.len(), cols.len());
    let k = rows.len();
    let mut buf = [0.0; CAP];
    for (a, &r) in rows.iter().enumerate() {
        for (b, &c) in cols.iter().enumerate() {
            buf[a * k + b] = g.get(r, c);
        }
    }
    det_row_major(&buf, k)
}
