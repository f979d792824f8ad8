use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::Path;

use olsc_mceliece::codec;
use olsc_mceliece::mceliece::{self, Ciphertext, KeyMetrics};
use olsc_mceliece::{rng, CodeParams};
use rand::RngCore;
use rayon::prelude::*;
use tempfile::NamedTempFile;

use crate::error::CliError;
use crate::framing;

pub type Seed = [u8; 32];

/// Parses `--seed`, which is only honored in builds with the core crate's
/// `insecure-test-mode` feature.
pub fn parse_seed(hex_seed: Option<&str>) -> Result<Option<Seed>, CliError> {
    let Some(text) = hex_seed else {
        return Ok(None);
    };
    if !rng::SEEDING_ENABLED {
        return Err(CliError::Usage(
            "--seed is only accepted by test builds".into(),
        ));
    }
    let bytes = hex::decode(text).map_err(|e| CliError::Usage(format!("--seed: {e}")))?;
    let seed: Seed = bytes
        .try_into()
        .map_err(|_| CliError::Usage("--seed must be 32 bytes (64 hex digits)".into()))?;
    Ok(Some(seed))
}

fn master_seed(seed: Option<Seed>) -> Seed {
    seed.unwrap_or_else(|| {
        let mut s = [0u8; 32];
        rand::rngs::OsRng.fill_bytes(&mut s);
        s
    })
}

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place, so `path` is either untouched or complete.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(CliError::io(path))?;
    tmp.write_all(bytes).map_err(CliError::io(path))?;
    tmp.as_file().sync_all().map_err(CliError::io(path))?;
    tmp.persist(path).map_err(|e| CliError::io(path)(e.error))?;
    Ok(())
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    Ok(BufReader::new(
        File::open(path).map_err(CliError::io(path))?,
    ))
}

pub fn keygen(
    params: CodeParams,
    pub_path: &Path,
    priv_path: &Path,
    seed: Option<Seed>,
) -> Result<KeyMetrics, CliError> {
    params.validate()?;
    let mut rng = rng::from_seed(master_seed(seed));
    let (pk, sk) = mceliece::keygen(params, &mut rng)?;
    let pub_bytes = codec::encode_public(&pk).map_err(CliError::format(pub_path))?;
    let priv_bytes = codec::encode_private(&sk).map_err(CliError::format(priv_path))?;
    write_atomic(priv_path, &priv_bytes)?;
    write_atomic(pub_path, &pub_bytes)?;
    Ok(pk.metrics())
}

pub struct EncryptSummary {
    pub params: CodeParams,
    pub blocks: usize,
    pub bytes_in: usize,
}

pub fn encrypt(
    pub_path: &Path,
    in_path: &Path,
    out_path: &Path,
    seed: Option<Seed>,
) -> Result<EncryptSummary, CliError> {
    let pk = codec::read_public(&mut open(pub_path)?).map_err(CliError::format(pub_path))?;
    let message = fs::read(in_path).map_err(CliError::io(in_path))?;
    let params = pk.params();
    let master = master_seed(seed);
    let blocks = framing::frame(params, &message);
    let cts = blocks
        .par_iter()
        .enumerate()
        .map(|(i, m)| {
            let mut rng = rng::substream(master, i as u64);
            mceliece::encrypt(&pk, m, &mut rng)
        })
        .collect::<Result<Vec<Ciphertext>, _>>()?;
    let bytes = codec::encode_ciphertexts(params, &cts).map_err(CliError::format(out_path))?;
    write_atomic(out_path, &bytes)?;
    Ok(EncryptSummary {
        params,
        blocks: cts.len(),
        bytes_in: message.len(),
    })
}

pub struct DecryptSummary {
    pub blocks: usize,
    pub bytes_out: usize,
    pub corrected: usize,
}

pub fn decrypt(
    priv_path: &Path,
    in_path: &Path,
    out_path: &Path,
) -> Result<DecryptSummary, CliError> {
    let sk = codec::read_private(&mut open(priv_path)?).map_err(CliError::format(priv_path))?;
    let (params, cts) =
        codec::read_ciphertexts(&mut open(in_path)?).map_err(CliError::format(in_path))?;
    if params != sk.params() {
        return Err(CliError::Format {
            path: in_path.to_owned(),
            source: codec::CodecError::Param(format!(
                "ciphertext parameters {params:?} do not match the key's {:?}",
                sk.params()
            )),
        });
    }
    let decoded = cts
        .par_iter()
        .map(|c| mceliece::decrypt(&sk, c))
        .collect::<Result<Vec<_>, _>>()?;

    let bad: Vec<String> = decoded
        .iter()
        .enumerate()
        .filter(|(_, (_, r))| r.ambiguous > 0)
        .map(|(i, (_, r))| format!("block {i}: {} ambiguous symbols", r.ambiguous))
        .collect();
    if !bad.is_empty() {
        let shown = bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ");
        return Err(CliError::Integrity(format!(
            "{} of {} blocks failed to decode ({shown}{}); wrong key or corrupted ciphertext",
            bad.len(),
            decoded.len(),
            if bad.len() > 5 { "; ..." } else { "" }
        )));
    }
    let corrected = decoded.iter().map(|(_, r)| r.corrected).sum();
    let blocks: Vec<_> = decoded.into_iter().map(|(m, _)| m).collect();
    let plain = framing::unframe(params, &blocks)?;
    write_atomic(out_path, &plain)?;
    Ok(DecryptSummary {
        blocks: blocks.len(),
        bytes_out: plain.len(),
        corrected,
    })
}

pub fn format_metrics(m: &KeyMetrics) -> String {
    let rows = [
        ("k (data symbols)", m.k.to_string()),
        ("n (code length)", m.n.to_string()),
        ("b (symbol bits)", m.b.to_string()),
        ("public matrix bits", m.matrix_bits.to_string()),
        ("plaintext bits/block", m.plaintext_bits.to_string()),
        (
            "plaintext/key ratio",
            format!("{:.6}", m.plaintext_to_key_ratio),
        ),
        ("factor vs binary", m.advantage_factor.to_string()),
    ];
    rows.iter()
        .map(|(name, value)| format!("{name:<22}{value:>12}\n"))
        .collect()
}
