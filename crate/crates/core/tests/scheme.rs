use olsc_mceliece::codec::{self, CodecError};
use olsc_mceliece::mceliece::{self, Ciphertext};
use olsc_mceliece::{rng, CodeParams, SymbolVector};
use proptest::prelude::*;

fn params(q: u32, t: u32, b: u32) -> CodeParams {
    CodeParams::new(q, t, b).unwrap()
}

#[test]
fn round_trip_many_keys() {
    let mut r = rng::from_seed([42; 32]);
    for (q, t) in [(3, 1), (3, 2), (5, 2), (5, 3), (7, 3), (7, 4)] {
        for b in [1, 4, 8, 32] {
            let p = params(q, t, b);
            for _ in 0..50 {
                let (pk, sk) = mceliece::keygen(p, &mut r).unwrap();
                let m = SymbolVector::random(p.k(), b, &mut r);
                let c = mceliece::encrypt(&pk, &m, &mut r).unwrap();
                let (got, report) = mceliece::decrypt(&sk, &c).unwrap();
                assert_eq!(got, m);
                assert_eq!(report.ambiguous, 0);
                assert_eq!(report.field_ops, 0);
            }
        }
    }
}

#[test]
fn unpermuted_ciphertext_is_codeword_plus_weight_t() {
    let p = params(7, 3, 8);
    let mut r = rng::from_seed([1; 32]);
    let (pk, sk) = mceliece::keygen(p, &mut r).unwrap();
    let m = SymbolVector::random(p.k(), 8, &mut r);
    let c = mceliece::encrypt(&pk, &m, &mut r).unwrap();

    let c_prime = sk.permutation().unpermute(c.payload()).unwrap();
    let m_scrambled = m.apply_matrix(sk.scrambler()).unwrap();
    let codeword = sk.code().encode(&m_scrambled).unwrap();
    assert_eq!(c_prime.xor(&codeword).unwrap().weight(), 3);

    // fused: multiply by the P^-1 matrix, decode, multiply by S^-1
    let fused = c
        .payload()
        .apply_matrix(&sk.permutation_inverse().to_matrix())
        .unwrap();
    assert_eq!(fused, c_prime);
    let (decoded, _) = sk.code().decode(&fused).unwrap();
    assert_eq!(decoded, m_scrambled);
    assert_eq!(decoded.apply_matrix(sk.scrambler_inverse()).unwrap(), m);
}

#[test]
fn wrong_key_is_flagged() {
    let p = params(5, 2, 8);
    let mut r = rng::from_seed([2; 32]);
    let mut flagged = 0;
    for _ in 0..100 {
        let (pk, _) = mceliece::keygen(p, &mut r).unwrap();
        let (_, other) = mceliece::keygen(p, &mut r).unwrap();
        let m = SymbolVector::random(p.k(), 8, &mut r);
        let c = mceliece::encrypt(&pk, &m, &mut r).unwrap();
        let (got, report) = mceliece::decrypt(&other, &c).unwrap();
        assert_ne!(got, m);
        flagged += (report.ambiguous > 0) as usize;
    }
    assert_eq!(flagged, 100);
}

#[test]
fn loaded_private_key_decrypts() {
    let p = params(5, 3, 8);
    let mut r = rng::from_seed([3; 32]);
    let (pk, sk) = mceliece::keygen(p, &mut r).unwrap();
    let mut file = Vec::new();
    codec::write_private(&sk, &mut file).unwrap();
    let loaded = codec::read_private(&mut file.as_slice()).unwrap();
    assert_eq!(loaded, sk);
    assert_eq!(loaded.public_key(), pk);
    for _ in 0..20 {
        let m = SymbolVector::random(p.k(), 8, &mut r);
        let c = mceliece::encrypt(&pk, &m, &mut r).unwrap();
        assert_eq!(mceliece::decrypt(&loaded, &c).unwrap().0, m);
    }
}

#[test]
fn failed_write_leaves_sink_untouched() {
    let mut sink = Vec::new();
    let bad = Ciphertext::new(SymbolVector::zeros(20, 8));
    let err = codec::write_ciphertexts(params(3, 2, 8), &[bad], &mut sink).unwrap_err();
    assert!(matches!(err, CodecError::Param(_)));
    assert!(sink.is_empty());
}

fn any_params() -> impl Strategy<Value = CodeParams> {
    prop::sample::select(vec![(3u32, 1u32), (3, 2), (5, 2), (5, 3), (7, 4)])
        .prop_flat_map(|(q, t)| (Just(q), Just(t), 1u32..=64))
        .prop_map(|(q, t, b)| params(q, t, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn key_files_round_trip(p in any_params(), seed in any::<[u8; 32]>()) {
        let (pk, sk) = mceliece::keygen(p, &mut rng::from_seed(seed)).unwrap();
        let pub_bytes = codec::encode_public(&pk).unwrap();
        prop_assert_eq!(pub_bytes.len(), codec::HEADER_LEN + p.k() * p.n().div_ceil(8));
        prop_assert_eq!(codec::read_public(&mut pub_bytes.as_slice()).unwrap(), pk);
        let priv_bytes = codec::encode_private(&sk).unwrap();
        prop_assert_eq!(priv_bytes.len(), codec::HEADER_LEN + p.k() * p.k().div_ceil(8) + 4 * p.n());
        prop_assert_eq!(codec::read_private(&mut priv_bytes.as_slice()).unwrap(), sk);
    }

    #[test]
    fn ciphertext_files_round_trip(p in any_params(), blocks in 0usize..5, seed in any::<[u8; 32]>()) {
        let mut r = rng::from_seed(seed);
        let cts: Vec<_> = (0..blocks)
            .map(|_| Ciphertext::new(SymbolVector::random(p.n(), p.b, &mut r)))
            .collect();
        let bytes = codec::encode_ciphertexts(p, &cts).unwrap();
        prop_assert_eq!(bytes.len(), codec::HEADER_LEN + 4 + blocks * p.n() * p.b.div_ceil(8) as usize);
        let (p2, back) = codec::read_ciphertexts(&mut bytes.as_slice()).unwrap();
        prop_assert_eq!(p2, p);
        prop_assert_eq!(back, cts);
    }

    #[test]
    fn truncation_anywhere_is_reported(p in any_params(), cut in 0.0f64..1.0, seed in any::<[u8; 32]>()) {
        let (pk, sk) = mceliece::keygen(p, &mut rng::from_seed(seed)).unwrap();
        for bytes in [codec::encode_public(&pk).unwrap(), codec::encode_private(&sk).unwrap()] {
            let at = (bytes.len() as f64 * cut) as usize;
            let short = &bytes[..at];
            let res_pub = codec::read_public(&mut &short[..]).map(|_| ());
            let res_priv = codec::read_private(&mut &short[..]).map(|_| ());
            let truncated = |r: &Result<(), CodecError>| matches!(r, Err(CodecError::Truncated) | Err(CodecError::BadKind { .. }));
            prop_assert!(truncated(&res_pub));
            prop_assert!(truncated(&res_priv));
        }
    }
}
