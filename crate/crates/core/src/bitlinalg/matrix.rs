use rand::RngCore;

use crate::{Error, Result};

const WORD_BITS: usize = 64;

/// A dense GF(2) matrix with bit-packed rows.
///
/// Bit `j` of a row lives in word `j / 64` at position `j % 64`, so the
/// little-endian byte image of a row puts column `j` in byte `j / 8`, bit
/// `j % 8`. Bits past `cols` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(WORD_BITS);
        Self {
            rows,
            cols,
            words_per_row,
            words: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows; any nonzero entry counts as 1.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, v != 0);
            }
        }
        Ok(m)
    }

    pub fn random(rows: usize, cols: usize, rng: &mut impl RngCore) -> Self {
        let mut m = Self::zeros(rows, cols);
        for w in &mut m.words {
            *w = rng.next_u64();
        }
        m.clear_padding();
        m
    }

    /// Uniform sample from the invertible `k x k` matrices, by rejection.
    ///
    /// Roughly 29% of uniform square matrices over GF(2) are invertible, so
    /// the expected number of draws is about 3.5 for every `k`.
    pub fn random_nonsingular(k: usize, rng: &mut impl RngCore) -> Self {
        assert!(k >= 1, "nonsingular matrix needs k >= 1");
        loop {
            let m = Self::random(k, k, rng);
            if m.rank() == k {
                return m;
            }
        }
    }

    fn clear_padding(&mut self) {
        let tail = self.cols % WORD_BITS;
        if tail == 0 || self.words_per_row == 0 {
            return;
        }
        let mask = (1u64 << tail) - 1;
        for r in 0..self.rows {
            self.words[(r + 1) * self.words_per_row - 1] &= mask;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.words[r * self.words_per_row + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        let w = &mut self.words[r * self.words_per_row + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.words[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// Column indices of the set bits in row `r`, ascending.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r)
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| SetBits(w).map(move |b| wi * WORD_BITS + b))
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    /// Row `r` packed LSB-first into `ceil(cols / 8)` bytes.
    pub fn row_bytes(&self, r: usize) -> Vec<u8> {
        let mut out: Vec<u8> = self
            .row_words(r)
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .collect();
        out.truncate(self.cols.div_ceil(8));
        out
    }

    /// Inverse of [`BitMatrix::row_bytes`]. Nonzero padding bits are rejected.
    pub fn set_row_bytes(&mut self, r: usize, bytes: &[u8]) -> Result<()> {
        let expected = self.cols.div_ceil(8);
        if bytes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: bytes.len(),
            });
        }
        if !self.cols.is_multiple_of(8) && bytes[expected - 1] >> (self.cols % 8) != 0 {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: expected * 8,
            });
        }
        let row = self.row_words_mut(r);
        row.fill(0);
        for (i, &byte) in bytes.iter().enumerate() {
            row[i / 8] |= (byte as u64) << (8 * (i % 8));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                m.set(r, c, true);
            }
            for c in other.row_ones(r) {
                m.set(r, self.cols + c, true);
            }
        }
        Ok(m)
    }

    /// GF(2) product `self * rhs`: each set bit `(i, l)` XORs row `l` of
    /// `rhs` into row `i` of the result.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        let wpr = out.words_per_row;
        for i in 0..self.rows {
            let dst = &mut out.words[i * wpr..(i + 1) * wpr];
            for l in self.row_ones(i) {
                for (d, s) in dst.iter_mut().zip(rhs.row_words(l)) {
                    *d ^= s;
                }
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan elimination on `[A | I]`.
    pub fn invert(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col)).ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            for r in 0..n {
                if r != col && a.get(r, col) {
                    a.xor_row_into(col, r);
                    inv.xor_row_into(col, r);
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| a.get(r, col)) else {
                continue;
            };
            a.swap_rows(rank, pivot);
            for r in rank + 1..self.rows {
                if a.get(r, col) {
                    a.xor_row_into(rank, r);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for w in 0..wpr {
            self.words.swap(a * wpr + w, b * wpr + w);
        }
    }

    /// row[dst] ^= row[src]
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let wpr = self.words_per_row;
        for w in 0..wpr {
            let s = self.words[src * wpr + w];
            self.words[dst * wpr + w] ^= s;
        }
    }
}

struct SetBits(u64);

impl Iterator for SetBits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}
