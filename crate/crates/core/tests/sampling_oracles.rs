use proptest::prelude::*;

use seaidx::datagen::{generate, GenSpec};
use seaidx::sampling::{invsax, invsax_order, seasam, seasam_from_words, uniform_sample};
use seaidx::summarization::{SaxWord, Summarizer};

/// 16 symbols of 8 bits interleaved into a u128, most significant bit first.
fn u128_key(word: &SaxWord) -> u128 {
    let mut key = 0u128;
    for level in (0..8).rev() {
        for &s in word.symbols() {
            key = (key << 1) | u128::from((s >> level) & 1);
        }
    }
    key
}

fn words(spec: &GenSpec) -> Vec<SaxWord> {
    let data = generate(spec).unwrap();
    Summarizer::paa(16)
        .summarize_dataset(&data)
        .unwrap()
        .sax_words(8)
        .unwrap()
}

#[test]
fn seasam_matches_integer_key_oracle() {
    for spec in [
        GenSpec::randwalk(100, 256, 11),
        GenSpec::randwalk(5_000, 128, 1),
        GenSpec::fseries(5_000, 128, 5, 10.0, 2),
    ] {
        let w = words(&spec);
        let mut oracle: Vec<(u128, usize)> = w.iter().map(u128_key).zip(0..).collect();
        oracle.sort();
        let order: Vec<usize> = oracle.iter().map(|&(_, i)| i).collect();
        assert_eq!(invsax_order(&w), order);
        for n_prime in [1, 7, 10, 100, 4_999, 5_000].into_iter().filter(|&k| k <= w.len()) {
            let stride = w.len() / n_prime;
            let mut expected: Vec<usize> = (0..n_prime).map(|r| order[r * stride]).collect();
            expected.sort_unstable();
            assert_eq!(seasam_from_words(&w, n_prime).unwrap().indices(), expected.as_slice());
        }
    }
}

#[test]
fn seasam_on_dataset_uses_paa_words() {
    let spec = GenSpec::randwalk(1_000, 64, 9);
    let data = generate(&spec).unwrap();
    let w = Summarizer::paa(16)
        .summarize_dataset(&data)
        .unwrap()
        .sax_words(8)
        .unwrap();
    assert_eq!(seasam(&data, 50, 16, 8).unwrap(), seasam_from_words(&w, 50).unwrap());
}

proptest! {
    #[test]
    fn key_order_is_integer_order(a in prop::collection::vec(any::<u8>(), 16),
                                  b in prop::collection::vec(any::<u8>(), 16)) {
        let wa = SaxWord::new(a, 8).unwrap();
        let wb = SaxWord::new(b, 8).unwrap();
        prop_assert_eq!(invsax(&wa).cmp(&invsax(&wb)), u128_key(&wa).cmp(&u128_key(&wb)));
    }

    #[test]
    fn uniform_sample_is_sorted_distinct_in_range(n in 1usize..5_000, frac in 0.0f64..1.0, seed: u64) {
        let n_prime = ((n as f64 * frac) as usize).max(1);
        let s = uniform_sample(n, n_prime, seed).unwrap();
        prop_assert_eq!(s.len(), n_prime);
        prop_assert!(s.indices().windows(2).all(|w| w[0] < w[1]));
        prop_assert!(s.indices().iter().all(|&i| i < n));
    }
}
