use rand::{Rng, RngCore};

use super::BitMatrix;
use crate::{Error, Result};

pub const MAX_SYMBOL_BITS: u32 = 64;

/// A vector of `b`-bit symbols, `1 <= b <= 64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolVector {
    width: u32,
    symbols: Vec<u64>,
}

/// Largest value representable in `width` bits.
pub fn symbol_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

impl SymbolVector {
    pub fn new(width: u32, symbols: Vec<u64>) -> Result<Self> {
        check_width(width)?;
        let mask = symbol_mask(width);
        if let Some(&value) = symbols.iter().find(|&&s| s & !mask != 0) {
            return Err(Error::SymbolOutOfRange { value, width });
        }
        Ok(Self { width, symbols })
    }

    pub(crate) fn from_raw(width: u32, symbols: Vec<u64>) -> Self {
        debug_assert!(symbols.iter().all(|&s| s & !symbol_mask(width) == 0));
        Self { width, symbols }
    }

    pub fn zeros(len: usize, width: u32) -> Self {
        Self {
            width,
            symbols: vec![0; len],
        }
    }

    pub fn random(len: usize, width: u32, rng: &mut impl RngCore) -> Self {
        let mask = symbol_mask(width);
        Self {
            width,
            symbols: (0..len).map(|_| rng.next_u64() & mask).collect(),
        }
    }

    /// `weight` distinct positions chosen uniformly, each holding a uniform
    /// nonzero symbol; zero elsewhere.
    pub fn random_error(
        len: usize,
        weight: usize,
        width: u32,
        rng: &mut impl RngCore,
    ) -> Result<Self> {
        check_width(width)?;
        if weight > len {
            return Err(Error::Parameter(format!(
                "error weight {weight} exceeds length {len}"
            )));
        }
        let mut symbols = vec![0u64; len];
        let max = symbol_mask(width);
        for pos in rand::seq::index::sample(rng, len, weight) {
            symbols[pos] = rng.gen_range(1..=max);
        }
        Ok(Self { width, symbols })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u64> {
        self.symbols
    }

    /// Number of nonzero symbols.
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_conform(other)?;
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self::from_raw(self.width, symbols))
    }

    /// Symbol-wise `v * A` over a binary matrix: output `j` is the XOR of
    /// every input symbol `i` with `A[i][j] = 1`.
    pub fn apply_matrix(&self, a: &BitMatrix) -> Result<Self> {
        if self.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: self.len(),
            });
        }
        let mut out = vec![0u64; a.cols()];
        for (i, &s) in self.symbols.iter().enumerate() {
            if s == 0 {
                continue;
            }
            for j in a.row_ones(i) {
                out[j] ^= s;
            }
        }
        Ok(Self::from_raw(self.width, out))
    }

    pub(crate) fn check_conform(&self, other: &Self) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }
}

fn check_width(width: u32) -> Result<()> {
    if !(1..=MAX_SYMBOL_BITS).contains(&width) {
        return Err(Error::Parameter(format!(
            "symbol width must be in 1..={MAX_SYMBOL_BITS}, got {width}"
        )));
    }
    Ok(())
}
