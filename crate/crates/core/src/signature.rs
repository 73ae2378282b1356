use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::MAX_DIM;

/// A vector `ε ∈ {0,1}ⁿ`. Labels both a character of the sign group `M` and
/// the wedge basis vector `v_ε = e_{i₁} ∧ … ∧ e_{i_k}` with `i₁ < … < i_k`
/// running over the positions where `ε_i = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    mask: u16,
    len: u8,
}

impl Signature {
    pub fn new(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::invalid("epsilon", "signature must be non-empty"));
        }
        if bits.len() > MAX_DIM {
            return Err(Error::DimensionTooLarge {
                n: bits.len(),
                max: MAX_DIM,
            });
        }
        let mut mask = 0u16;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => mask |= 1 << i,
                other => {
                    return Err(Error::invalid(
                        "epsilon",
                        format!("entry {other} at position {i} is not 0 or 1"),
                    ))
                }
            }
        }
        Ok(Self {
            mask,
            len: bits.len() as u8,
        })
    }

    pub fn from_mask(mask: u16, len: usize) -> Self {
        assert!(len >= 1 && len <= MAX_DIM);
        assert!(mask >> len == 0, "mask has bits beyond length");
        Self {
            mask,
            len: len as u8,
        }
    }

    pub fn zero(len: usize) -> Self {
        Self::from_mask(0, len)
    }

    pub fn full(len: usize) -> Self {
        Self::from_mask(((1u32 << len) - 1) as u16, len)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn mask(&self) -> u16 {
        self.mask
    }

    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        ((self.mask >> i) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.bit(i)).collect()
    }

    /// |ε| = Σ ε_i.
    #[inline]
    pub fn weight(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Ascending positions with ε_i = 1.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.bit(i) == 1).collect()
    }

    pub(crate) fn support_into(&self, out: &mut [usize; MAX_DIM]) -> usize {
        let mut k = 0;
        for i in 0..self.len() {
            if self.bit(i) == 1 {
                out[k] = i;
                k += 1;
            }
        }
        k
    }

    /// All 2ⁿ signatures of length `n`, ordered by mask.
    pub fn all(n: usize) -> impl Iterator<Item = Signature> {
        (0..(1u32 << n)).map(move |m| Signature::from_mask(m as u16, n))
    }

    pub fn of_weight(n: usize, k: usize) -> impl Iterator<Item = Signature> {
        Self::all(n).filter(move |s| s.weight() == k)
    }

    /// χᴹ_ε(m) = (−1)^{Σ α_i ε_i} for `m = diag((−1)^{α_i})`, with α given as a mask.
    pub fn m_character(&self, alpha_mask: u16) -> f64 {
        if (self.mask & alpha_mask).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({self})")
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Accepts `"101"` or `"1,0,1"`.
impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bits: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad signature entry `{t}`")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(Error::Parse(format!("bad signature character `{other}`"))),
                })
                .collect::<Result<_>>()?
        };
        Signature::new(&bits)
    }
}

/// d_k = C(n, k), the dimension of the k-th exterior power of ℂⁿ.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}
