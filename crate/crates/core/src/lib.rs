//! McEliece public-key encryption built on non-binary orthogonal Latin
//! square codes (OLSC).
//!
//! The private code is a `t`-error-correcting OLSC over `b`-bit symbols.
//! Its generator and check matrices are binary, so encoding and decoding are
//! XOR accumulations and a one-step majority vote; no finite-field arithmetic
//! is ever performed.
//!
//! ```
//! use olsc_mceliece::{mceliece, rng, CodeParams, SymbolVector};
//!
//! let params = CodeParams::new(5, 2, 8).unwrap();
//! let mut rng = rng::from_seed([7u8; 32]);
//! let (pk, sk) = mceliece::keygen(params, &mut rng).unwrap();
//!
//! let m = SymbolVector::random(params.k(), params.b, &mut rng);
//! let c = mceliece::encrypt(&pk, &m, &mut rng).unwrap();
//! let (plain, report) = mceliece::decrypt(&sk, &c).unwrap();
//! assert_eq!(plain, m);
//! assert_eq!(report.field_ops, 0);
//! ```
//!
//! This is a functional model of the scheme. Parameters carry no claimed
//! security level.

pub mod bitlinalg;
pub mod codec;
mod error;
pub mod latin;
pub mod mceliece;
pub mod olsc;
pub mod rng;

pub use bitlinalg::{BitMatrix, Permutation, SymbolVector};
pub use error::{Error, Result};
pub use olsc::{CodeParams, DecodeReport, OlscCode};
