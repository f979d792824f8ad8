use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use olsc_mceliece::codec;

const BIN: &str = env!("CARGO_BIN_EXE_olsc");
const SEED_A: &str = "0101010101010101010101010101010101010101010101010101010101010101";
const SEED_B: &str = "0202020202020202020202020202020202020202020202020202020202020202";

fn olsc(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn olsc")
}

fn keygen(dir: &Path, q: &str, t: &str, b: &str, name: &str, seed: &str) -> Output {
    let (pubf, privf) = (format!("{name}.pub"), format!("{name}.priv"));
    olsc(
        dir,
        &[
            "keygen", "--q", q, "--t", t, "--b", b, "--pub", &pubf, "--priv", &privf, "--seed",
            seed,
        ],
    )
}

#[test]
fn keygen_prints_metrics_and_writes_readable_keys() {
    let dir = tempfile::tempdir().unwrap();
    let out = keygen(dir.path(), "5", "3", "8", "k", SEED_A);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let bits_line = stdout
        .lines()
        .find(|l| l.starts_with("public matrix bits"))
        .unwrap();
    assert!(bits_line.ends_with("1375"));

    let pk =
        codec::read_public(&mut fs::read(dir.path().join("k.pub")).unwrap().as_slice()).unwrap();
    let sk =
        codec::read_private(&mut fs::read(dir.path().join("k.priv")).unwrap().as_slice()).unwrap();
    assert_eq!(sk.public_key(), pk);
}

#[test]
fn seeded_keygen_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    assert!(keygen(dir.path(), "7", "4", "8", "a", SEED_A)
        .status
        .success());
    assert!(keygen(dir.path(), "7", "4", "8", "b", SEED_A)
        .status
        .success());
    assert!(keygen(dir.path(), "7", "4", "8", "c", SEED_B)
        .status
        .success());
    let read = |n: &str| fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("a.pub"), read("b.pub"));
    assert_eq!(read("a.priv"), read("b.priv"));
    assert_ne!(read("a.pub"), read("c.pub"));
}

#[test]
fn bad_parameters_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = keygen(dir.path(), "4", "1", "8", "k", SEED_A);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q must be prime"));
    let out = keygen(dir.path(), "3", "3", "8", "k", SEED_A);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2t-2 <= q-1"));
    assert!(!dir.path().join("k.pub").exists());
    let out = olsc(dir.path(), &["keygen", "--q", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_file_round_trip_and_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(keygen(d, "3", "2", "8", "k", SEED_A).status.success());
    fs::write(d.join("empty"), b"").unwrap();
    let out = olsc(
        d,
        &[
            "encrypt", "--pub", "k.pub", "--in", "empty", "--out", "c", "--seed", SEED_B,
        ],
    );
    assert!(out.status.success());
    let ct = fs::read(d.join("c")).unwrap();
    // one block of n = 21 one-byte symbols
    assert_eq!(ct.len(), codec::HEADER_LEN + 4 + 21);
    assert_eq!(&ct[codec::HEADER_LEN..codec::HEADER_LEN + 4], &[1, 0, 0, 0]);
    let out = olsc(
        d,
        &["decrypt", "--priv", "k.priv", "--in", "c", "--out", "back"],
    );
    assert!(out.status.success());
    assert_eq!(fs::read(d.join("back")).unwrap(), b"");
}

#[test]
fn ciphertext_length_formula() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(keygen(d, "5", "2", "12", "k", SEED_A).status.success());
    let msg: Vec<u8> = (0..5000u32).map(|i| (i * 7) as u8).collect();
    fs::write(d.join("m"), &msg).unwrap();
    assert!(
        olsc(d, &["encrypt", "--pub", "k.pub", "--in", "m", "--out", "c"])
            .status
            .success()
    );
    let blocks = (8 + msg.len()) * 8;
    let blocks = blocks.div_ceil(25 * 12);
    let expected = codec::HEADER_LEN + 4 + blocks * 45 * 2;
    assert_eq!(fs::read(d.join("c")).unwrap().len(), expected);
    assert!(olsc(
        d,
        &["decrypt", "--priv", "k.priv", "--in", "c", "--out", "back"]
    )
    .status
    .success());
    assert_eq!(fs::read(d.join("back")).unwrap(), msg);
}

#[test]
fn seeded_encryption_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(keygen(d, "5", "3", "4", "k", SEED_A).status.success());
    fs::write(d.join("m"), b"the quick brown fox").unwrap();
    for out in ["c1", "c2"] {
        let res = olsc(
            d,
            &[
                "encrypt", "--pub", "k.pub", "--in", "m", "--out", out, "--seed", SEED_B,
            ],
        );
        assert!(res.status.success());
    }
    assert_eq!(
        fs::read(d.join("c1")).unwrap(),
        fs::read(d.join("c2")).unwrap()
    );
}

#[test]
fn truncated_ciphertext_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(keygen(d, "3", "2", "8", "k", SEED_A).status.success());
    fs::write(d.join("m"), vec![7u8; 400]).unwrap();
    assert!(
        olsc(d, &["encrypt", "--pub", "k.pub", "--in", "m", "--out", "c"])
            .status
            .success()
    );
    let ct = fs::read(d.join("c")).unwrap();
    fs::write(d.join("short"), &ct[..ct.len() - 3]).unwrap();
    let out = olsc(
        d,
        &[
            "decrypt", "--priv", "k.priv", "--in", "short", "--out", "back",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncated"));
    assert!(!d.join("back").exists());
}

#[test]
fn key_kind_mixup_is_a_format_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(keygen(d, "3", "2", "8", "k", SEED_A).status.success());
    fs::write(d.join("m"), b"x").unwrap();
    let out = olsc(
        d,
        &["encrypt", "--pub", "k.priv", "--in", "m", "--out", "c"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(!d.join("c").exists());
}

#[test]
fn mismatched_parameters_are_a_format_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(keygen(d, "3", "2", "8", "a", SEED_A).status.success());
    assert!(keygen(d, "5", "2", "8", "b", SEED_A).status.success());
    fs::write(d.join("m"), b"hello").unwrap();
    assert!(
        olsc(d, &["encrypt", "--pub", "a.pub", "--in", "m", "--out", "c"])
            .status
            .success()
    );
    let out = olsc(
        d,
        &["decrypt", "--priv", "b.priv", "--in", "c", "--out", "back"],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn wrong_key_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(keygen(d, "5", "3", "8", "a", SEED_A).status.success());
    assert!(keygen(d, "5", "3", "8", "b", SEED_B).status.success());
    fs::write(d.join("m"), b"attack at dawn").unwrap();
    assert!(
        olsc(d, &["encrypt", "--pub", "a.pub", "--in", "m", "--out", "c"])
            .status
            .success()
    );
    let out = olsc(
        d,
        &["decrypt", "--priv", "b.priv", "--in", "c", "--out", "back"],
    );
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ambiguous"));
    assert!(!d.join("back").exists());
}

#[test]
fn bench_reports_zero_field_ops_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = olsc(
        d,
        &[
            "bench", "--q", "3", "--t", "2", "--b", "8", "--trials", "10", "--csv", "b.csv",
        ],
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("finite-field ops: 0"));
    assert!(stdout.contains("syndrome 3 + vote 2"));
    let csv = fs::read_to_string(d.join("b.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("trial,op,wall_ns,ff_ops,xor_ops,cmp_ops,depth_model")
    );
    let decrypt_rows: Vec<Vec<&str>> = lines
        .map(|l| l.split(',').collect::<Vec<_>>())
        .filter(|cols| cols[1] == "decrypt")
        .collect();
    assert_eq!(decrypt_rows.len(), 10);
    for row in &decrypt_rows {
        assert_eq!(row[3], "0");
        assert_eq!(row[4..], decrypt_rows[0][4..]);
    }
}
