//! The public-key scheme: `G' = S G P`, `c = m G' + e`, and
//! `m = Decode(c P^-1) S^-1`.

use rand::RngCore;

use crate::bitlinalg::{BitMatrix, Permutation, SymbolVector};
use crate::olsc::{CodeParams, DecodeReport, OlscCode};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    params: CodeParams,
    g_prime: BitMatrix,
}

impl PublicKey {
    /// Wraps a `k x n` generator read from storage.
    pub fn from_parts(params: CodeParams, g_prime: BitMatrix) -> Result<Self> {
        params.validate()?;
        if g_prime.rows() != params.k() {
            return Err(Error::DimensionMismatch {
                expected: params.k(),
                found: g_prime.rows(),
            });
        }
        if g_prime.cols() != params.n() {
            return Err(Error::DimensionMismatch {
                expected: params.n(),
                found: g_prime.cols(),
            });
        }
        Ok(Self { params, g_prime })
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn g_prime(&self) -> &BitMatrix {
        &self.g_prime
    }

    pub fn metrics(&self) -> KeyMetrics {
        KeyMetrics::for_params(self.params)
    }
}

/// `S`, `P`, the private code, and the precomputed inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    code: OlscCode,
    s: BitMatrix,
    s_inv: BitMatrix,
    p: Permutation,
    p_inv: Permutation,
}

impl PrivateKey {
    /// Rebuilds the code and both inverses from `(q, t, b, S, P)`.
    pub fn from_parts(params: CodeParams, s: BitMatrix, p: Permutation) -> Result<Self> {
        let code = OlscCode::build(params)?;
        if s.rows() != code.k() {
            return Err(Error::DimensionMismatch {
                expected: code.k(),
                found: s.rows(),
            });
        }
        if p.len() != code.n() {
            return Err(Error::DimensionMismatch {
                expected: code.n(),
                found: p.len(),
            });
        }
        let s_inv = s.invert()?;
        let p_inv = p.inverse();
        Ok(Self {
            code,
            s,
            s_inv,
            p,
            p_inv,
        })
    }

    pub fn params(&self) -> CodeParams {
        self.code.params()
    }

    pub fn code(&self) -> &OlscCode {
        &self.code
    }

    pub fn scrambler(&self) -> &BitMatrix {
        &self.s
    }

    pub fn scrambler_inverse(&self) -> &BitMatrix {
        &self.s_inv
    }

    pub fn permutation(&self) -> &Permutation {
        &self.p
    }

    pub fn permutation_inverse(&self) -> &Permutation {
        &self.p_inv
    }

    /// `S G P`, with `P` applied as a column permutation.
    pub fn public_key(&self) -> PublicKey {
        let sg = self
            .s
            .mul(self.code.generator())
            .expect("S is k x k and G is k x n");
        let g_prime = self.p.permute_columns(&sg).expect("P has length n");
        PublicKey {
            params: self.params(),
            g_prime,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ciphertext {
    payload: SymbolVector,
}

impl Ciphertext {
    pub fn new(payload: SymbolVector) -> Self {
        Self { payload }
    }

    pub fn payload(&self) -> &SymbolVector {
        &self.payload
    }

    pub fn into_payload(self) -> SymbolVector {
        self.payload
    }
}

/// Size accounting of one key and one plaintext block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyMetrics {
    pub k: usize,
    pub n: usize,
    pub b: u32,
    /// Bits in the public `k x n` generator.
    pub matrix_bits: u64,
    /// Plaintext bits carried per block, `k * b`.
    pub plaintext_bits: u64,
    /// `plaintext_bits / matrix_bits = b / n`.
    pub plaintext_to_key_ratio: f64,
    /// Plaintext bits per block relative to a binary code with the same
    /// `k x n` generator, which carries `k` bits.
    pub advantage_factor: u64,
}

impl KeyMetrics {
    pub fn for_params(p: CodeParams) -> Self {
        let (k, n) = (p.k() as u64, p.n() as u64);
        let matrix_bits = k * n;
        let plaintext_bits = k * p.b as u64;
        Self {
            k: p.k(),
            n: p.n(),
            b: p.b,
            matrix_bits,
            plaintext_bits,
            plaintext_to_key_ratio: plaintext_bits as f64 / matrix_bits as f64,
            advantage_factor: plaintext_bits / k,
        }
    }
}

pub fn key_metrics(pk: &PublicKey) -> KeyMetrics {
    pk.metrics()
}

/// Draws `S` (nonsingular, `k x k`) then `P` (on `n` points) from `rng`.
pub fn keygen(params: CodeParams, rng: &mut impl RngCore) -> Result<(PublicKey, PrivateKey)> {
    params.validate()?;
    let s = BitMatrix::random_nonsingular(params.k(), rng);
    let p = Permutation::random(params.n(), rng);
    let sk = PrivateKey::from_parts(params, s, p)?;
    Ok((sk.public_key(), sk))
}

/// A weight-`t` error over `b`-bit symbols.
pub fn sample_error(n: usize, t: usize, b: u32, rng: &mut impl RngCore) -> Result<SymbolVector> {
    SymbolVector::random_error(n, t, b, rng)
}

fn check_plaintext(params: CodeParams, m: &SymbolVector) -> Result<()> {
    if m.width() != params.b {
        return Err(Error::WidthMismatch {
            expected: params.b,
            found: m.width(),
        });
    }
    if m.len() != params.k() {
        return Err(Error::DimensionMismatch {
            expected: params.k(),
            found: m.len(),
        });
    }
    Ok(())
}

/// `c = m G' + e` with `e` of symbol weight exactly `t`.
pub fn encrypt(pk: &PublicKey, m: &SymbolVector, rng: &mut impl RngCore) -> Result<Ciphertext> {
    let p = pk.params;
    let e = sample_error(p.n(), p.t as usize, p.b, rng)?;
    encrypt_with_error_unchecked(pk, m, &e)
}

fn encrypt_with_error_unchecked(
    pk: &PublicKey,
    m: &SymbolVector,
    e: &SymbolVector,
) -> Result<Ciphertext> {
    check_plaintext(pk.params, m)?;
    let c = m.apply_matrix(&pk.g_prime)?.xor(e)?;
    Ok(Ciphertext::new(c))
}

/// `m = Decode(c P^-1) S^-1`.
///
/// Votes that no error of weight at most `t` could produce are reported in
/// [`DecodeReport::ambiguous`] rather than failing; such a result should not
/// be trusted.
pub fn decrypt(sk: &PrivateKey, c: &Ciphertext) -> Result<(SymbolVector, DecodeReport)> {
    let c_unpermuted = sk.p.unpermute(&c.payload)?;
    let (m_scrambled, report) = sk.code.decode(&c_unpermuted)?;
    let m = m_scrambled.apply_matrix(&sk.s_inv)?;
    Ok((m, report))
}

/// Hooks that bypass the randomness of the scheme, for building oracle
/// cases. Not for production use.
#[cfg(any(test, feature = "insecure-test-mode"))]
pub mod insecure {
    use super::*;

    /// Key pair with `S = I` and `P` the identity, so `G' = G`.
    pub fn keygen_identity(params: CodeParams) -> Result<(PublicKey, PrivateKey)> {
        let sk = PrivateKey::from_parts(
            params,
            BitMatrix::identity(params.k()),
            Permutation::identity(params.n()),
        )?;
        Ok((sk.public_key(), sk))
    }

    /// `c = m G' + e` with a caller-chosen `e` of any weight.
    pub fn encrypt_with_error(
        pk: &PublicKey,
        m: &SymbolVector,
        e: &SymbolVector,
    ) -> Result<Ciphertext> {
        encrypt_with_error_unchecked(pk, m, e)
    }
}
