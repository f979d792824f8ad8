//! Splitting byte messages into plaintext blocks of `k` symbols of `b`
//! bits.
//!
//! The framed stream is an 8-byte little-endian length, the message, then
//! zero bits up to a whole number of blocks. Bits are taken LSB-first from
//! each byte; symbol `j` of a block holds stream bits `j*b .. (j+1)*b`
//! with the first of them as its least significant bit.

use olsc_mceliece::{CodeParams, SymbolVector};
use thiserror::Error;

const LEN_PREFIX: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FramingError {
    #[error("recovered stream of {0} bytes is too short for the length prefix")]
    MissingPrefix(usize),
    #[error("length field {claimed} exceeds the {available} recovered payload bytes")]
    LengthOverflow { claimed: u64, available: usize },
    #[error("nonzero padding after the recovered payload")]
    DirtyPadding,
    #[error("block {index} has {found} symbols of {width} bits, expected {expected} of {b}")]
    BlockShape {
        index: usize,
        found: usize,
        width: u32,
        expected: usize,
        b: u32,
    },
}

/// Number of blocks needed to frame `message_len` bytes.
pub fn block_count(params: CodeParams, message_len: usize) -> usize {
    let bits = (LEN_PREFIX + message_len) * 8;
    bits.div_ceil(params.k() * params.b as usize)
}

/// Reads `width <= 64` bits starting at stream bit `offset`; bits past the
/// end read as zero.
fn read_bits(bytes: &[u8], offset: usize, width: u32) -> u64 {
    let first = offset / 8;
    let shift = offset % 8;
    let mut window = [0u8; 16];
    let end = (first + 9).min(bytes.len());
    if first < end {
        window[..end - first].copy_from_slice(&bytes[first..end]);
    }
    let wide = u128::from_le_bytes(window) >> shift;
    (wide as u64) & olsc_mceliece::bitlinalg::symbol_mask(width)
}

pub fn frame(params: CodeParams, message: &[u8]) -> Vec<SymbolVector> {
    let mut stream = Vec::with_capacity(LEN_PREFIX + message.len());
    stream.extend_from_slice(&(message.len() as u64).to_le_bytes());
    stream.extend_from_slice(message);
    let (k, b) = (params.k(), params.b);
    (0..block_count(params, message.len()))
        .map(|blk| {
            let symbols = (0..k)
                .map(|j| read_bits(&stream, (blk * k + j) * b as usize, b))
                .collect();
            SymbolVector::new(b, symbols).expect("symbols are masked to b bits")
        })
        .collect()
}

pub fn unframe(params: CodeParams, blocks: &[SymbolVector]) -> Result<Vec<u8>, FramingError> {
    let (k, b) = (params.k(), params.b as usize);
    for (index, blk) in blocks.iter().enumerate() {
        if blk.len() != k || blk.width() != params.b {
            return Err(FramingError::BlockShape {
                index,
                found: blk.len(),
                width: blk.width(),
                expected: k,
                b: params.b,
            });
        }
    }
    let total_bits = blocks.len() * k * b;
    let mut stream = vec![0u8; total_bits.div_ceil(8)];
    let mut offset = 0usize;
    for &s in blocks.iter().flat_map(|blk| blk.symbols()) {
        for bit in 0..b {
            if (s >> bit) & 1 == 1 {
                let at = offset + bit;
                stream[at / 8] |= 1 << (at % 8);
            }
        }
        offset += b;
    }
    // a partial trailing byte is pure padding
    let whole = total_bits / 8;
    if whole < LEN_PREFIX {
        return Err(FramingError::MissingPrefix(whole));
    }
    let claimed = u64::from_le_bytes(stream[..LEN_PREFIX].try_into().unwrap());
    let available = whole - LEN_PREFIX;
    if claimed > available as u64 {
        return Err(FramingError::LengthOverflow { claimed, available });
    }
    let end = LEN_PREFIX + claimed as usize;
    if stream[end..].iter().any(|&x| x != 0) {
        return Err(FramingError::DirtyPadding);
    }
    stream.truncate(end);
    stream.drain(..LEN_PREFIX);
    Ok(stream)
}
