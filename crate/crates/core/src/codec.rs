//! Binary file formats for keys and ciphertexts.
//!
//! Every file starts with a 10-byte header:
//!
//! | bytes | field                                            |
//! |-------|--------------------------------------------------|
//! | 0..4  | magic `OLSM`                                     |
//! | 4     | version, `0x01`                                  |
//! | 5     | kind: `0x01` public, `0x02` private, `0x03` ciphertext |
//! | 6..8  | `q`, u16 little-endian                           |
//! | 8     | `t`                                              |
//! | 9     | `b`                                              |
//!
//! Matrix rows are packed LSB-first (column `j` is bit `j % 8` of byte
//! `j / 8`) and padded to a whole byte.
//!
//! * public key: the `k` rows of `G'`.
//! * private key: the `k` rows of `S`, then `P` as `n` u32 little-endian
//!   destinations. The code and both inverses are rebuilt on load.
//! * ciphertext: a u32 little-endian block count, then each block as `n`
//!   symbols of `ceil(b / 8)` little-endian bytes.
//!
//! Writers serialize into memory and issue one `write_all`, so a failure
//! while encoding never leaves a partial record behind.

use std::io::{self, Read, Write};

use thiserror::Error;

use crate::bitlinalg::{BitMatrix, Permutation, SymbolVector};
use crate::mceliece::{Ciphertext, PrivateKey, PublicKey};
use crate::olsc::CodeParams;

pub const MAGIC: [u8; 4] = *b"OLSM";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum FileKind {
    PublicKey = 0x01,
    PrivateKey = 0x02,
    Ciphertext = 0x03,
}

impl FileKind {
    fn from_byte(b: u8) -> Option<Self> {
        match b {
            0x01 => Some(Self::PublicKey),
            0x02 => Some(Self::PrivateKey),
            0x03 => Some(Self::Ciphertext),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("bad magic bytes {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("unsupported format version {0:#04x}")]
    BadVersion(u8),
    #[error("wrong file kind: expected {expected:?}, found byte {found:#04x}")]
    BadKind { expected: FileKind, found: u8 },
    #[error("input is truncated")]
    Truncated,
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("stored scrambler matrix is not invertible")]
    NotInvertible,
    #[error("stored index map is not a permutation")]
    NotPermutation,
    #[error("malformed payload: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(io::Error),
}

impl From<io::Error> for CodecError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::UnexpectedEof {
            CodecError::Truncated
        } else {
            CodecError::Io(e)
        }
    }
}

pub type Result<T> = std::result::Result<T, CodecError>;

fn param_error(e: crate::Error) -> CodecError {
    match e {
        crate::Error::Parameter(msg) => CodecError::Param(msg),
        other => CodecError::Param(other.to_string()),
    }
}

/// The fixed 10-byte header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FileHeader {
    pub kind: FileKind,
    pub params: CodeParams,
}

impl FileHeader {
    pub fn to_bytes(&self) -> Result<[u8; HEADER_LEN]> {
        let CodeParams { q, t, b } = self.params;
        self.params.validate().map_err(param_error)?;
        let q =
            u16::try_from(q).map_err(|_| CodecError::Param(format!("q={q} exceeds 16 bits")))?;
        let t = u8::try_from(t).map_err(|_| CodecError::Param(format!("t={t} exceeds 8 bits")))?;
        let b = u8::try_from(b).map_err(|_| CodecError::Param(format!("b={b} exceeds 8 bits")))?;
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.kind as u8;
        out[6..8].copy_from_slice(&q.to_le_bytes());
        out[8] = t;
        out[9] = b;
        Ok(out)
    }

    /// Reads and validates a header of the `expected` kind.
    pub fn read(r: &mut impl Read, expected: FileKind) -> Result<Self> {
        let mut raw = [0u8; HEADER_LEN];
        r.read_exact(&mut raw)?;
        let magic: [u8; 4] = raw[..4].try_into().unwrap();
        if magic != MAGIC {
            return Err(CodecError::BadMagic(magic));
        }
        if raw[4] != VERSION {
            return Err(CodecError::BadVersion(raw[4]));
        }
        match FileKind::from_byte(raw[5]) {
            Some(kind) if kind == expected => {}
            _ => {
                return Err(CodecError::BadKind {
                    expected,
                    found: raw[5],
                })
            }
        }
        let q = u16::from_le_bytes([raw[6], raw[7]]) as u32;
        let params = CodeParams::new(q, raw[8] as u32, raw[9] as u32).map_err(param_error)?;
        Ok(Self {
            kind: expected,
            params,
        })
    }
}

fn write_matrix_rows(out: &mut Vec<u8>, m: &BitMatrix) {
    for r in 0..m.rows() {
        out.extend_from_slice(&m.row_bytes(r));
    }
}

fn read_matrix(r: &mut impl Read, rows: usize, cols: usize) -> Result<BitMatrix> {
    let mut m = BitMatrix::zeros(rows, cols);
    let mut buf = vec![0u8; cols.div_ceil(8)];
    for row in 0..rows {
        r.read_exact(&mut buf)?;
        m.set_row_bytes(row, &buf)
            .map_err(|_| CodecError::Malformed(format!("nonzero padding bits in row {row}")))?;
    }
    Ok(m)
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

pub fn encode_public(pk: &PublicKey) -> Result<Vec<u8>> {
    let header = FileHeader {
        kind: FileKind::PublicKey,
        params: pk.params(),
    };
    let mut out = header.to_bytes()?.to_vec();
    write_matrix_rows(&mut out, pk.g_prime());
    Ok(out)
}

pub fn write_public(pk: &PublicKey, w: &mut impl Write) -> Result<()> {
    w.write_all(&encode_public(pk)?)?;
    Ok(())
}

pub fn read_public(r: &mut impl Read) -> Result<PublicKey> {
    let header = FileHeader::read(r, FileKind::PublicKey)?;
    let p = header.params;
    let g_prime = read_matrix(r, p.k(), p.n())?;
    PublicKey::from_parts(p, g_prime).map_err(param_error)
}

pub fn encode_private(sk: &PrivateKey) -> Result<Vec<u8>> {
    let header = FileHeader {
        kind: FileKind::PrivateKey,
        params: sk.params(),
    };
    let mut out = header.to_bytes()?.to_vec();
    write_matrix_rows(&mut out, sk.scrambler());
    for &d in sk.permutation().map() {
        out.extend_from_slice(&d.to_le_bytes());
    }
    Ok(out)
}

pub fn write_private(sk: &PrivateKey, w: &mut impl Write) -> Result<()> {
    w.write_all(&encode_private(sk)?)?;
    Ok(())
}

pub fn read_private(r: &mut impl Read) -> Result<PrivateKey> {
    let header = FileHeader::read(r, FileKind::PrivateKey)?;
    let p = header.params;
    let s = read_matrix(r, p.k(), p.k())?;
    let map = (0..p.n())
        .map(|_| read_u32(r))
        .collect::<Result<Vec<_>>>()?;
    let perm = Permutation::from_map(map).map_err(|_| CodecError::NotPermutation)?;
    if s.rank() != p.k() {
        return Err(CodecError::NotInvertible);
    }
    PrivateKey::from_parts(p, s, perm).map_err(|e| match e {
        crate::Error::Singular => CodecError::NotInvertible,
        other => param_error(other),
    })
}

fn symbol_bytes(b: u32) -> usize {
    b.div_ceil(8) as usize
}

pub fn encode_ciphertexts(params: CodeParams, blocks: &[Ciphertext]) -> Result<Vec<u8>> {
    let header = FileHeader {
        kind: FileKind::Ciphertext,
        params,
    };
    let count = u32::try_from(blocks.len())
        .map_err(|_| CodecError::Param(format!("{} blocks exceed u32", blocks.len())))?;
    let width = symbol_bytes(params.b);
    let mut out = header.to_bytes()?.to_vec();
    out.reserve(4 + blocks.len() * params.n() * width);
    out.extend_from_slice(&count.to_le_bytes());
    for (i, block) in blocks.iter().enumerate() {
        let payload = block.payload();
        if payload.width() != params.b || payload.len() != params.n() {
            return Err(CodecError::Param(format!(
                "block {i} is {} symbols of {} bits, expected {} of {}",
                payload.len(),
                payload.width(),
                params.n(),
                params.b
            )));
        }
        for &s in payload.symbols() {
            out.extend_from_slice(&s.to_le_bytes()[..width]);
        }
    }
    Ok(out)
}

pub fn write_ciphertexts(
    params: CodeParams,
    blocks: &[Ciphertext],
    w: &mut impl Write,
) -> Result<()> {
    w.write_all(&encode_ciphertexts(params, blocks)?)?;
    Ok(())
}

pub fn read_ciphertexts(r: &mut impl Read) -> Result<(CodeParams, Vec<Ciphertext>)> {
    let header = FileHeader::read(r, FileKind::Ciphertext)?;
    let p = header.params;
    let count = read_u32(r)? as usize;
    let width = symbol_bytes(p.b);
    let mut buf = vec![0u8; p.n() * width];
    // the count is untrusted; grow as blocks actually arrive
    let mut blocks = Vec::new();
    for i in 0..count {
        r.read_exact(&mut buf)?;
        let symbols = buf
            .chunks(width)
            .map(|c| {
                let mut word = [0u8; 8];
                word[..width].copy_from_slice(c);
                u64::from_le_bytes(word)
            })
            .collect();
        let payload = SymbolVector::new(p.b, symbols)
            .map_err(|e| CodecError::Malformed(format!("block {i}: {e}")))?;
        blocks.push(Ciphertext::new(payload));
    }
    Ok((p, blocks))
}
