use rand::seq::SliceRandom;
use rand::RngCore;

use super::{BitMatrix, SymbolVector};
use crate::{Error, Result};

/// A bijection on `0..n`; `map[i]` is where position `i` is sent.
///
/// Kept as an index map. [`Permutation::to_matrix`] gives the equivalent
/// permutation matrix `P` with `P[i][map[i]] = 1`, so `v * P` equals
/// [`Permutation::permute`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<u32>,
}

impl Permutation {
    pub fn from_map(map: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &d in &map {
            let slot = seen.get_mut(d as usize).ok_or(Error::NotPermutation)?;
            if *slot {
                return Err(Error::NotPermutation);
            }
            *slot = true;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n as u32).collect(),
        }
    }

    /// Fisher-Yates shuffle of the identity.
    pub fn random(n: usize, rng: &mut impl RngCore) -> Self {
        assert!(n >= 1, "permutation needs n >= 1");
        let mut p = Self::identity(n);
        p.map.shuffle(rng);
        p
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.map.len()];
        for (i, &d) in self.map.iter().enumerate() {
            inv[d as usize] = i as u32;
        }
        Self { map: inv }
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &Self) -> Result<Self> {
        check_len(then.len(), self.len())?;
        Ok(Self {
            map: self.map.iter().map(|&d| then.map[d as usize]).collect(),
        })
    }

    pub fn to_matrix(&self) -> BitMatrix {
        let n = self.map.len();
        let mut m = BitMatrix::zeros(n, n);
        for (i, &d) in self.map.iter().enumerate() {
            m.set(i, d as usize, true);
        }
        m
    }

    /// `out[map[i]] = v[i]`.
    pub fn permute(&self, v: &SymbolVector) -> Result<SymbolVector> {
        check_len(self.len(), v.len())?;
        let mut out = vec![0u64; v.len()];
        for (&d, &s) in self.map.iter().zip(v.symbols()) {
            out[d as usize] = s;
        }
        Ok(SymbolVector::from_raw(v.width(), out))
    }

    /// `out[i] = v[map[i]]`, undoing [`Permutation::permute`].
    pub fn unpermute(&self, v: &SymbolVector) -> Result<SymbolVector> {
        check_len(self.len(), v.len())?;
        let out = self.map.iter().map(|&d| v.symbols()[d as usize]).collect();
        Ok(SymbolVector::from_raw(v.width(), out))
    }

    /// Column permutation `a * P`: column `i` of `a` moves to `map[i]`.
    pub fn permute_columns(&self, a: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.len(), a.cols())?;
        let mut out = BitMatrix::zeros(a.rows(), a.cols());
        for r in 0..a.rows() {
            for c in a.row_ones(r) {
                out.set(r, self.map[c] as usize, true);
            }
        }
        Ok(out)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}
