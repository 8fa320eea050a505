//! InvSAX sortable keys and dataset sampling.
//!
//! An InvSAX key interleaves the bits of a SAX word so that the most
//! significant bit of every symbol comes first, then every second bit, and so
//! on. Sorting by key therefore groups series by coarse SAX region first,
//! which is the order an iSAX tree lays its leaves out in. SEAsam samples that
//! order at equal intervals.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::series::Dataset;
use crate::summarization::{SaxWord, Summarizer};

/// Bit-interleaved SAX word, comparable lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvSaxKey {
    bytes: Vec<u8>,
    bit_len: usize,
}

impl InvSaxKey {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    /// Bit `pos` of the key, 0 being the most significant.
    pub fn bit(&self, pos: usize) -> bool {
        self.bytes[pos / 8] >> (7 - pos % 8) & 1 == 1
    }

    /// The key as a string of `0`/`1`.
    pub fn to_bit_string(&self) -> String {
        (0..self.bit_len)
            .map(|p| if self.bit(p) { '1' } else { '0' })
            .collect()
    }
}

/// Key bit `i·l + j` is bit `i` (most significant first) of symbol `j`.
pub fn invsax(word: &SaxWord) -> InvSaxKey {
    let l = word.len();
    let b = word.bits() as usize;
    let bit_len = l * b;
    let mut bytes = vec![0u8; bit_len.div_ceil(8)];
    let mut pos = 0;
    for i in 0..b {
        let shift = b - 1 - i;
        for &s in word.symbols() {
            if s >> shift & 1 == 1 {
                bytes[pos / 8] |= 0x80 >> (pos % 8);
            }
            pos += 1;
        }
    }
    InvSaxKey { bytes, bit_len }
}

/// Recovers the SAX word of `l` symbols at `bits` from its InvSAX key.
pub fn deinterleave(key: &InvSaxKey, l: usize, bits: u8) -> Result<SaxWord> {
    if key.bit_len != l * bits as usize {
        return Err(Error::ShapeMismatch(format!(
            "key of {} bits cannot hold {l} symbols of {bits} bits",
            key.bit_len
        )));
    }
    let mut symbols = vec![0u8; l];
    for i in 0..bits as usize {
        for (j, s) in symbols.iter_mut().enumerate() {
            *s = *s << 1 | u8::from(key.bit(i * l + j));
        }
    }
    SaxWord::new(symbols, bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleStrategy {
    Seasam,
    Uniform,
}

impl fmt::Display for SampleStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleStrategy::Seasam => "seasam",
            SampleStrategy::Uniform => "uniform",
        })
    }
}

impl FromStr for SampleStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seasam" => Ok(SampleStrategy::Seasam),
            "uniform" => Ok(SampleStrategy::Uniform),
            other => Err(Error::InvalidArgument(format!(
                "unknown sampling strategy {other:?}"
            ))),
        }
    }
}

/// Strictly increasing series identifiers drawn from a dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    indices: Vec<usize>,
    strategy: SampleStrategy,
    seed: Option<u64>,
}

impl SampleSet {
    pub fn new(indices: Vec<usize>, strategy: SampleStrategy, seed: Option<u64>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "sample indices must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            indices,
            strategy,
            seed,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn strategy(&self) -> SampleStrategy {
        self.strategy
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn check_sample_size(n_prime: usize, n: usize) -> Result<()> {
    if n_prime == 0 || n_prime > n {
        return Err(Error::BadSampleSize { n_prime, n });
    }
    Ok(())
}

/// Series identifiers in ascending InvSAX order; equal keys keep index order.
pub fn invsax_order(words: &[SaxWord]) -> Vec<usize> {
    let mut keyed: Vec<(InvSaxKey, usize)> = words
        .par_iter()
        .map(invsax)
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    keyed.par_sort_unstable();
    keyed.into_iter().map(|(_, i)| i).collect()
}

/// Every `⌊n/n'⌋`-th identifier of the InvSAX order, starting at rank 0.
pub fn seasam_from_words(words: &[SaxWord], n_prime: usize) -> Result<SampleSet> {
    let n = words.len();
    check_sample_size(n_prime, n)?;
    let order = invsax_order(words);
    let stride = n / n_prime;
    let mut indices: Vec<usize> = order.into_iter().step_by(stride).take(n_prime).collect();
    indices.sort_unstable();
    SampleSet::new(indices, SampleStrategy::Seasam, None)
}

/// SEAsam over PAA-based SAX words of `l` segments at `bits`.
pub fn seasam(dataset: &Dataset, n_prime: usize, l: usize, bits: u8) -> Result<SampleSet> {
    check_sample_size(n_prime, dataset.len())?;
    let words = Summarizer::paa(l).summarize_dataset(dataset)?.sax_words(bits)?;
    seasam_from_words(&words, n_prime)
}

/// `n'` distinct identifiers drawn uniformly without replacement.
pub fn uniform_sample(n: usize, n_prime: usize, seed: u64) -> Result<SampleSet> {
    check_sample_size(n_prime, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices = rand::seq::index::sample(&mut rng, n, n_prime).into_vec();
    indices.sort_unstable();
    SampleSet::new(indices, SampleStrategy::Uniform, Some(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn invsax_examples() {
        let zero = SaxWord::new(vec![0; 16], 8).unwrap();
        assert!(invsax(&zero).bytes().iter().all(|&b| b == 0));

        let one = SaxWord::new(vec![0b1011_0010], 8).unwrap();
        assert_eq!(invsax(&one).bytes(), &[0b1011_0010]);

        // per-position bits {1,1,0,0}, {1,0,1,1}, {0,1,1,0}
        let w = SaxWord::new(vec![0b110, 0b101, 0b011, 0b010], 3).unwrap();
        let key = invsax(&w);
        assert_eq!(key.to_bit_string(), "110010110110");
        assert_eq!(key.bytes(), &[0b1100_1011, 0b0110_0000]);
        assert_eq!(deinterleave(&key, 4, 3).unwrap(), w);
        assert!(deinterleave(&key, 4, 2).is_err());
    }

    #[test]
    fn significant_bits_dominate_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let a: Vec<u8> = (0..8).map(|_| rng.gen()).collect();
            let mut b: Vec<u8> = (0..8).map(|_| rng.gen()).collect();
            // force equal top bits, then flip one top bit of b
            for (x, y) in a.iter().zip(b.iter_mut()) {
                *y = (*y & 0x7f) | (*x & 0x80);
            }
            let j = rng.gen_range(0..8);
            b[j] ^= 0x80;
            let a_high = a[j] & 0x80 != 0;
            let ka = invsax(&SaxWord::new(a, 8).unwrap());
            let kb = invsax(&SaxWord::new(b, 8).unwrap());
            assert_eq!(ka > kb, a_high);
        }
    }

    #[test]
    fn bad_sample_sizes() {
        assert!(matches!(
            uniform_sample(10, 0, 1),
            Err(Error::BadSampleSize { .. })
        ));
        assert!(matches!(
            uniform_sample(10, 11, 1),
            Err(Error::BadSampleSize { .. })
        ));
        let words = vec![SaxWord::new(vec![0, 1], 1).unwrap()];
        assert!(seasam_from_words(&words, 2).is_err());
    }

    #[test]
    fn seasam_edge_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let words: Vec<SaxWord> = (0..37)
            .map(|_| SaxWord::new((0..4).map(|_| rng.gen_range(0..8)).collect(), 3).unwrap())
            .collect();
        let all = seasam_from_words(&words, 37).unwrap();
        assert_eq!(all.indices(), (0..37).collect::<Vec<_>>().as_slice());

        let one = seasam_from_words(&words, 1).unwrap();
        let min = (0..37).min_by_key(|&i| (invsax(&words[i]), i)).unwrap();
        assert_eq!(one.indices(), &[min]);
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(uniform_sample(5, 5, 3).unwrap().indices(), &[0, 1, 2, 3, 4]);
        assert_eq!(uniform_sample(1000, 10, 3).unwrap(), uniform_sample(1000, 10, 3).unwrap());
        let s = uniform_sample(10_000, 1_000, 42).unwrap();
        assert_eq!(s.len(), 1_000);
        assert!(s.indices().windows(2).all(|w| w[0] < w[1]));
        assert!(s.indices().iter().all(|&i| i < 10_000));
    }

    proptest::proptest! {
        #[test]
        fn deinterleave_inverts_invsax(
            bits in 1u8..=8,
            raw in proptest::collection::vec(proptest::num::u8::ANY, 1..24),
        ) {
            let symbols: Vec<u8> = raw.iter().map(|&s| if bits == 8 { s } else { s % (1 << bits) }).collect();
            let w = SaxWord::new(symbols, bits).unwrap();
            proptest::prop_assert_eq!(deinterleave(&invsax(&w), w.len(), bits).unwrap(), w);
        }
    }
}
