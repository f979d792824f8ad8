//! Orthogonal Latin square codes over `b`-bit symbols.
//!
//! Data symbols are indexed by the cells `(i, j)` of a `q x q` grid,
//! position `i*q + j`. The `r = 2tq` parity checks come in `2t` blocks of
//! `q`: the rows of the grid, its columns, and the level sets of `2t - 2`
//! mutually orthogonal Latin squares. Every data position lies in exactly
//! one check per block, and two positions share at most one check, so the
//! `2t` checks through a position are orthogonal on it and a single
//! majority vote over their syndromes corrects up to `t` symbol errors.
//!
//! The check matrix is `H = [M | I_r]` and the generator `G = [I_k | M^T]`,
//! both binary. Symbols are combined only by XOR.

use crate::bitlinalg::{BitMatrix, SymbolVector, MAX_SYMBOL_BITS};
use crate::latin::{cyclic_mols, is_prime};
use crate::{Error, Result};

/// `(q, t, b)`: Latin square order, correctable symbol errors, symbol width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub q: u32,
    pub t: u32,
    pub b: u32,
}

impl CodeParams {
    pub fn new(q: u32, t: u32, b: u32) -> Result<Self> {
        let p = Self { q, t, b };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { q, t, b } = *self;
        if !is_prime(q) {
            return Err(Error::Parameter(format!("q must be prime, got {q}")));
        }
        if t < 1 {
            return Err(Error::Parameter("t must be at least 1".into()));
        }
        if 2 * t as u64 - 2 > q as u64 - 1 {
            return Err(Error::Parameter(format!(
                "need 2t-2 <= q-1 (at most {} orthogonal squares of order {q}), got t={t}",
                q - 1
            )));
        }
        if !(1..=MAX_SYMBOL_BITS).contains(&b) {
            return Err(Error::Parameter(format!(
                "b must be in 1..={MAX_SYMBOL_BITS}, got {b}"
            )));
        }
        Ok(())
    }

    /// Data symbols per block, `q^2`.
    pub fn k(&self) -> usize {
        (self.q as usize).pow(2)
    }

    /// Check symbols, `2tq`.
    pub fn r(&self) -> usize {
        2 * self.t as usize * self.q as usize
    }

    /// Codeword length, `k + r`.
    pub fn n(&self) -> usize {
        self.k() + self.r()
    }
}

/// Outcome counters of one call to [`OlscCode::decode`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeReport {
    /// Data symbols whose vote produced a nonzero correction.
    pub corrected: usize,
    /// Data symbols whose votes are inconsistent with any error of weight
    /// at most `t`: neither a nonzero value holds more than `t` votes nor
    /// do at least `t` votes read zero. Always 0 for honest inputs.
    pub ambiguous: usize,
    /// Finite-field multiplications and inversions. There are none.
    pub field_ops: u64,
    /// Symbol XORs performed.
    pub xor_ops: u64,
    /// Symbol and counter comparisons performed.
    pub cmp_ops: u64,
}

#[derive(Default)]
struct OpCounter {
    xor: u64,
    cmp: u64,
}

impl OpCounter {
    #[inline]
    fn xor(&mut self, a: u64, b: u64) -> u64 {
        self.xor += 1;
        a ^ b
    }

    #[inline]
    fn eq<T: PartialEq>(&mut self, a: T, b: T) -> bool {
        self.cmp += 1;
        a == b
    }

    #[inline]
    fn gt<T: PartialOrd>(&mut self, a: T, b: T) -> bool {
        self.cmp += 1;
        a > b
    }
}

/// Dataflow critical path of a combinational one-step decoder, in gate
/// levels. None of the terms depend on the received word or on how many
/// blocks are processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthModel {
    /// XOR tree per check: `ceil(log2 q) + 1`.
    pub syndrome_depth: u32,
    /// Vote aggregation over the `2t` checks: `ceil(log2 2t)`.
    pub vote_depth: u32,
    /// Equality compare plus threshold compare.
    pub comparator_depth: u32,
    /// Final XOR of the correction into the data symbol.
    pub correction_depth: u32,
    /// Iterations of a sequential bounded-distance decoder that visits one
    /// codeword position per step, for contrast: `n`.
    pub sequential_iterations: u64,
}

impl DepthModel {
    pub const COMPARATOR_DEPTH: u32 = 2;
    pub const CORRECTION_DEPTH: u32 = 1;

    pub fn for_params(p: CodeParams) -> Self {
        Self {
            syndrome_depth: ceil_log2(p.q as u64) + 1,
            vote_depth: ceil_log2(2 * p.t as u64),
            comparator_depth: Self::COMPARATOR_DEPTH,
            correction_depth: Self::CORRECTION_DEPTH,
            sequential_iterations: p.n() as u64,
        }
    }

    pub fn total(&self) -> u32 {
        self.syndrome_depth + self.vote_depth + self.comparator_depth + self.correction_depth
    }
}

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        u64::BITS - (x - 1).leading_zeros()
    }
}

/// A built OLSC: parameters, `G`, `H`, and the check incidence lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OlscCode {
    params: CodeParams,
    g: BitMatrix,
    h: BitMatrix,
    /// For each check row, the `q` data positions it covers.
    members: Vec<Vec<u32>>,
    /// For each data position, its `2t` check rows, one per block.
    checks_of: Vec<Vec<u32>>,
}

impl OlscCode {
    pub fn build(params: CodeParams) -> Result<Self> {
        params.validate()?;
        let q = params.q as usize;
        let blocks = 2 * params.t as usize;
        let (k, r) = (params.k(), params.r());
        let mols = cyclic_mols(params.q, params.t * 2 - 2)?;

        let mut checks_of = vec![Vec::with_capacity(blocks); k];
        let mut members = vec![Vec::with_capacity(q); r];
        for i in 0..q {
            for j in 0..q {
                let pos = i * q + j;
                let mut levels = Vec::with_capacity(blocks);
                levels.push(i);
                levels.push(j);
                levels.extend(mols.squares().iter().map(|s| s.cell(i, j) as usize));
                for (block, level) in levels.into_iter().enumerate() {
                    let check = block * q + level;
                    checks_of[pos].push(check as u32);
                    members[check].push(pos as u32);
                }
            }
        }

        let mut m = BitMatrix::zeros(r, k);
        for (check, cover) in members.iter().enumerate() {
            for &pos in cover {
                m.set(check, pos as usize, true);
            }
        }
        let h = m.hconcat(&BitMatrix::identity(r))?;
        let g = BitMatrix::identity(k).hconcat(&m.transpose())?;

        Ok(Self {
            params,
            g,
            h,
            members,
            checks_of,
        })
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn k(&self) -> usize {
        self.params.k()
    }

    pub fn r(&self) -> usize {
        self.params.r()
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// Generator `[I_k | M^T]`, `k x n`.
    pub fn generator(&self) -> &BitMatrix {
        &self.g
    }

    /// Check matrix `[M | I_r]`, `r x n`.
    pub fn check_matrix(&self) -> &BitMatrix {
        &self.h
    }

    /// The `2t` check rows containing data position `pos`.
    pub fn checks_of(&self, pos: usize) -> &[u32] {
        &self.checks_of[pos]
    }

    pub fn check_members(&self, check: usize) -> &[u32] {
        &self.members[check]
    }

    pub fn depth_model(&self) -> DepthModel {
        DepthModel::for_params(self.params)
    }

    fn check_input(&self, v: &SymbolVector, len: usize) -> Result<()> {
        if v.width() != self.params.b {
            return Err(Error::WidthMismatch {
                expected: self.params.b,
                found: v.width(),
            });
        }
        if v.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Systematic encoding `m * G`; the first `k` symbols are `m`.
    pub fn encode(&self, m: &SymbolVector) -> Result<SymbolVector> {
        self.check_input(m, self.k())?;
        m.apply_matrix(&self.g)
    }

    /// `s_j` = XOR of the received symbols covered by row `j` of `H`.
    pub fn syndrome(&self, v: &SymbolVector) -> Result<SymbolVector> {
        self.check_input(v, self.n())?;
        let s = self.syndrome_counted(v.symbols(), &mut OpCounter::default());
        Ok(SymbolVector::from_raw(self.params.b, s))
    }

    fn syndrome_counted(&self, v: &[u64], ops: &mut OpCounter) -> Vec<u64> {
        let k = self.k();
        self.members
            .iter()
            .enumerate()
            .map(|(j, cover)| {
                cover
                    .iter()
                    .fold(v[k + j], |acc, &pos| ops.xor(acc, v[pos as usize]))
            })
            .collect()
    }

    /// One-step majority-logic decoding of the data symbols.
    ///
    /// Each data position takes a vote over the syndromes of its `2t`
    /// checks. A nonzero value seen more than `t` times is the error on that
    /// position and is XORed away; otherwise the symbol passes through. Data
    /// is recovered exactly whenever at most `t` symbols of `v` (data or
    /// parity) are in error. Every position runs the same fixed sequence of
    /// operations, so the reported XOR and compare counts depend only on
    /// the parameters.
    pub fn decode(&self, v: &SymbolVector) -> Result<(SymbolVector, DecodeReport)> {
        self.check_input(v, self.n())?;
        let mut ops = OpCounter::default();
        let syndrome = self.syndrome_counted(v.symbols(), &mut ops);
        let t = self.params.t as usize;
        let mut report = DecodeReport::default();
        let mut votes = Vec::with_capacity(2 * t);

        let data = v.symbols()[..self.k()]
            .iter()
            .zip(&self.checks_of)
            .map(|(&received, checks)| {
                votes.clear();
                votes.extend(checks.iter().map(|&c| syndrome[c as usize]));

                // Boyer-Moore candidate: the only value that can hold a
                // strict majority of the 2t votes.
                let mut candidate = votes[0];
                let mut run = 1usize;
                for &vote in &votes[1..] {
                    let same = ops.eq(vote, candidate);
                    let reset = ops.eq(run, 0);
                    candidate = if reset { vote } else { candidate };
                    run = match (reset, same) {
                        (true, _) => 1,
                        (false, true) => run + 1,
                        (false, false) => run - 1,
                    };
                }
                let mut support = 0usize;
                let mut zeros = 0usize;
                for &vote in votes.iter() {
                    support += ops.eq(vote, candidate) as usize;
                    zeros += ops.eq(vote, 0) as usize;
                }
                let majority = ops.gt(support, t);
                let nonzero = !ops.eq(candidate, 0);
                let correct = majority & nonzero;
                let consistent = correct | !ops.gt(t, zeros);

                report.corrected += correct as usize;
                report.ambiguous += !consistent as usize;
                let mask = 0u64.wrapping_sub(correct as u64);
                ops.xor(received, candidate & mask)
            })
            .collect();

        report.xor_ops = ops.xor;
        report.cmp_ops = ops.cmp;
        Ok((SymbolVector::from_raw(self.params.b, data), report))
    }
}
