//! GF(2) bit-matrix algebra and products of binary matrices with vectors of
//! wide symbols.

mod matrix;
mod perm;
mod symbols;

pub use matrix::BitMatrix;
pub use perm::Permutation;
pub use symbols::{symbol_mask, SymbolVector, MAX_SYMBOL_BITS};
