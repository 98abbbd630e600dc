mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shrinkca::sequences::{
    berlekamp_massey, lfsr_generate, minimal_polynomial_of_seq, seq_period, BitSeq, Lfsr,
};
use shrinkca::{BitPoly, Error};

fn bits(s: &str) -> BitSeq {
    s.parse().unwrap()
}

#[test]
fn register_examples() {
    let r1 = Lfsr::new("1+D+D^3".parse().unwrap(), &bits("100")).unwrap();
    assert_eq!(lfsr_generate(&r1, 7), bits("0011101"));
    assert_eq!(seq_period(&lfsr_generate(&r1, 14)), Some(7));
    let r2 = Lfsr::new("1+D^3+D^4".parse().unwrap(), &bits("1000")).unwrap();
    assert_eq!(lfsr_generate(&r2, 15), bits("000100110101111"));
    let z = Lfsr::new("1+D^3+D^4".parse().unwrap(), &bits("0000")).unwrap();
    assert_eq!(lfsr_generate(&z, 5), bits("00000"));
}

#[test]
fn register_matches_recurrence_oracle() {
    // Output obeys the recurrence whose characteristic polynomial is the
    // reciprocal of the feedback polynomial.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let l = rng.gen_range(1..=20u32);
        let fb = (1u128 << l) | 1 | (rng.gen::<u128>() & ((1 << l) - 2));
        let seed = random_bits(&mut rng, l as usize);
        let out = lfsr_generate(&Lfsr::new(bp(fb), &seed).unwrap(), 100);
        let charpoly = mask(&bp(fb).reverse());
        // The first L outputs are the seed read from its last stage backwards.
        let init: Vec<bool> = seed.iter().rev().copied().collect();
        assert_eq!(out.to_vec(), recurrence(charpoly, &init, 100));
    }
}

#[test]
fn m_sequence_property() {
    for l in 2..=10u32 {
        let period = (1usize << l) - 1;
        for fb in primitives(l) {
            for seed in 1u32..1 << l {
                let seed: Vec<bool> = (0..l).map(|i| (seed >> i) & 1 == 1).collect();
                let s = lfsr_generate(&Lfsr::new(bp(fb), &seed).unwrap(), 2 * period);
                assert_eq!(seq_period(&s), Some(period));
                assert_eq!(s[..period].iter().filter(|&&b| b).count(), 1 << (l - 1));
            }
        }
    }
}

#[test]
fn period_edge_cases() {
    assert_eq!(seq_period(&bits("0000")), Some(1));
    assert_eq!(seq_period(&bits("010")), None);
    assert_eq!(seq_period(&bits("0101")), Some(2));
    assert_eq!(seq_period(&[]), None);
    assert_eq!(seq_period(&bits("0010010")), Some(3));
}

#[test]
fn bm_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let l = rng.gen_range(1..=24u32);
        let fb = (1u128 << l) | 1 | (rng.gen::<u128>() & ((1 << l) - 2));
        let seed = random_bits(&mut rng, l as usize);
        let n = 4 * l as usize;
        let s = lfsr_generate(&Lfsr::new(bp(fb), &seed).unwrap(), n);
        let bm = berlekamp_massey(&s);
        assert!(bm.lc <= l as usize);
        let again = bm.register(&s).unwrap().generate(n);
        assert_eq!(again, s);
    }
}

/// Does any register of length `len` produce `s`?
fn some_register_of_length(s: &[bool], len: usize) -> bool {
    if len == 0 {
        return s.iter().all(|&b| !b);
    }
    (0u128..1 << len).any(|taps| {
        let fb = (taps << 1) | 1;
        let r = Lfsr::from_prefix(bp(fb), len, &s[..len]).unwrap();
        lfsr_generate(&r, s.len()).as_ref() == s
    })
}

#[test]
fn bm_minimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 300 {
        let n = rng.gen_range(1..=14);
        let s = random_bits(&mut rng, n);
        let bm = berlekamp_massey(&s);
        if bm.lc > 6 {
            continue;
        }
        checked += 1;
        assert!(bm.lc == 0 || !some_register_of_length(&s, bm.lc - 1), "{s:?}");
        assert!(some_register_of_length(&s, bm.lc.min(n)));
    }
}

#[test]
fn minimal_polynomial_needs_twice_the_complexity() {
    let s = bits("0001");
    assert!(matches!(minimal_polynomial_of_seq(&s), Err(Error::InsufficientData(_))));
    let r = Lfsr::new("1+D^3+D^4".parse().unwrap(), &bits("1000")).unwrap();
    let m = minimal_polynomial_of_seq(&lfsr_generate(&r, 8)).unwrap();
    assert_eq!(m, "1+D+D^4".parse::<BitPoly>().unwrap());
    assert_eq!(minimal_polynomial_of_seq(&bits("0000")).unwrap(), BitPoly::one());
}

proptest! {
    #[test]
    fn bitseq_text_round_trip(v in proptest::collection::vec(any::<bool>(), 0..200)) {
        let s = BitSeq::from_bits(v.clone());
        prop_assert_eq!(s.to_string().parse::<BitSeq>().unwrap(), s.clone());
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<BitSeq>(&json).unwrap(), s);
    }

    #[test]
    fn bm_regenerates_arbitrary_data(v in proptest::collection::vec(any::<bool>(), 1..120)) {
        let bm = berlekamp_massey(&v);
        prop_assert!(bm.lc <= v.len());
        prop_assert_eq!(bm.register(&v).unwrap().generate(v.len()).into_inner(), v);
    }
}
