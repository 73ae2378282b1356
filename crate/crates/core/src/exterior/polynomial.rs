//! Exact signed-monomial expansions over the entries of an n×n matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{RealSquareMatrix, MAX_DIM};
use crate::signature::binomial;

/// A polynomial in the entries `g_ij` of an n×n matrix in which every entry
/// has degree at most one. Monomials are keyed by the bitmask of their
/// entries, bit `i·n + j` standing for `g_ij`.
#[derive(Clone, PartialEq)]
pub struct MultilinearPolynomial {
    n: usize,
    terms: BTreeMap<u64, Complex64>,
}

impl MultilinearPolynomial {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
        }
        Ok(Self {
            n,
            terms: BTreeMap::new(),
        })
    }

    /// Builds a polynomial from monomials given as lists of 0-based entry
    /// positions. Equal monomials are merged; a monomial naming the same
    /// entry twice is rejected.
    pub fn from_monomials<I, M>(n: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = (M, Complex64)>,
        M: AsRef<[(usize, usize)]>,
    {
        let mut p = Self::zero(n)?;
        for (entries, coeff) in monomials {
            let mut key = 0u64;
            for &(i, j) in entries.as_ref() {
                if i >= n || j >= n {
                    return Err(Error::invalid(
                        "monomial",
                        format!("entry ({i}, {j}) is outside a {n}×{n} matrix"),
                    ));
                }
                let bit = 1u64 << (i * n + j);
                if key & bit != 0 {
                    return Err(Error::NotSquarefree { row: i, col: j });
                }
                key |= bit;
            }
            p.add_term(key, coeff);
        }
        Ok(p)
    }

    fn add_term(&mut self, key: u64, coeff: Complex64) {
        let slot = self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0));
        *slot += coeff;
        if *slot == Complex64::new(0.0, 0.0) {
            self.terms.remove(&key);
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(mask, coefficient)` pairs in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn coefficient(&self, entries: &[(usize, usize)]) -> Complex64 {
        let key = entries
            .iter()
            .fold(0u64, |acc, &(i, j)| acc | 1u64 << (i * self.n + j));
        self.terms.get(&key).copied().unwrap_or_default()
    }

    /// Entries of a monomial mask in row-major order.
    pub fn entries_of(&self, mask: u64) -> Vec<(usize, usize)> {
        (0..self.n * self.n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (b / self.n, b % self.n))
            .collect()
    }

    pub fn degree_of(mask: u64) -> u32 {
        mask.count_ones()
    }

    /// Applies `f(degree, coefficient)` to every term.
    pub fn map_by_degree(&self, f: impl Fn(u32, Complex64) -> Complex64) -> Self {
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&k, &v) in &self.terms {
            out.add_term(k, f(k.count_ones(), v));
        }
        out
    }

    pub fn evaluate(&self, g: &RealSquareMatrix) -> Result<Complex64> {
        self.evaluate_scaled(g, Complex64::new(1.0, 0.0))
    }

    /// Value at the complex matrix `λ·g`.
    pub fn evaluate_scaled(&self, g: &RealSquareMatrix, lambda: Complex64) -> Result<Complex64> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.dim(),
            });
        }
        let entries = g.as_slice();
        let mut total = Complex64::new(0.0, 0.0);
        for (&mask, &coeff) in &self.terms {
            let mut prod = coeff;
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                prod *= lambda * entries[b];
                rest &= rest - 1;
            }
            total += prod;
        }
        Ok(total)
    }

    /// max |coefficient difference| over the union of supports.
    pub fn max_coefficient_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (k, &v) in &self.terms {
            let w = other.terms.get(k).copied().unwrap_or_default();
            worst = worst.max((v - w).norm());
        }
        for (k, &w) in &other.terms {
            if !self.terms.contains_key(k) {
                worst = worst.max(w.norm());
            }
        }
        worst
    }
}

impl fmt::Debug for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultilinearPolynomial(n={}) {{", self.n)?;
        for (i, (&k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " +")?;
            }
            write!(f, " ({v})")?;
            for (r, c) in self.entries_of(k) {
                write!(f, "·g{}{}", r + 1, c + 1)?;
            }
        }
        write!(f, " }}")
    }
}

/// `Σ_{S ⊆ {1..n}} w_{|S|} · det(λ·g_{S,S})` as an exact polynomial, where
/// each factor `g_ij` is weighted by `λ` and each grade by `w_k = C(n,k)`.
pub fn minor_expansion(n: usize, lambda: Complex64) -> Result<MultilinearPolynomial> {
    let mut p = MultilinearPolynomial::zero(n)?;
    let mut perm = [0usize; MAX_DIM];
    for subset in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| subset >> i & 1 == 1).collect();
        let k = idx.len();
        let weight = Complex64::new(binomial(n, k) as f64, 0.0) * lambda.powu(k as u32);
        perm[..k].copy_from_slice(&idx);
        for_each_permutation(&mut perm[..k], &mut |sigma, sign| {
            let key = idx
                .iter()
                .zip(sigma)
                .fold(0u64, |acc, (&r, &c)| acc | 1u64 << (r * n + c));
            p.add_term(key, weight * sign);
        });
    }
    Ok(p)
}

/// The exact expansion of Δ_W in the entries of an n×n matrix.
pub fn delta_w_polynomial(n: usize) -> Result<MultilinearPolynomial> {
    minor_expansion(n, Complex64::new(1.0, 0.0))
}

/// Heap's algorithm; the sign flips with every transposition.
fn for_each_permutation(items: &mut [usize], visit: &mut dyn FnMut(&[usize], f64)) {
    let k = items.len();
    let mut c = [0usize; MAX_DIM];
    let mut sign = 1.0;
    visit(items, sign);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            sign = -sign;
            visit(items, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
