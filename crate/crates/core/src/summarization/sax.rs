//! SAX words, variable-cardinality iSAX words and the MINDIST lower bound.
//!
//! A symbol's binary representation is its iSAX bit string, most significant
//! bit first, so lowering the cardinality of a symbol is a right shift.

use super::breakpoints::{region_gap, symbolize, MAX_BITS};
use super::paa::{distance_scale, PaaVector};
use crate::error::{Error, Result};

/// `l` symbols, all at `bits` bits of cardinality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SaxWord {
    symbols: Vec<u8>,
    bits: u8,
}

impl SaxWord {
    pub fn new(symbols: Vec<u8>, bits: u8) -> Result<Self> {
        if !(1..=MAX_BITS).contains(&bits) {
            return Err(Error::BadBits(format!("bits must be in 1..=8, got {bits}")));
        }
        if bits < MAX_BITS {
            if let Some(&s) = symbols.iter().find(|&&s| s >> bits != 0) {
                return Err(Error::BadBits(format!(
                    "symbol {s} does not fit in {bits} bits"
                )));
            }
        }
        Ok(Self { symbols, bits })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn cardinality(&self) -> usize {
        1 << self.bits
    }

    /// The word at full cardinality as an iSAX word.
    pub fn to_isax(&self) -> IsaxWord {
        IsaxWord {
            symbols: self.symbols.clone(),
            bits: vec![self.bits; self.symbols.len()],
        }
    }
}

/// An iSAX word: each symbol carries its own number of bits (0 means "any").
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsaxWord {
    pub symbols: Vec<u8>,
    pub bits: Vec<u8>,
}

impl IsaxWord {
    /// True when `word` falls inside this word's regions.
    pub fn covers(&self, word: &SaxWord) -> bool {
        self.symbols
            .iter()
            .zip(&self.bits)
            .zip(word.symbols())
            .all(|((&prefix, &b), &s)| b == 0 || s >> (word.bits() - b) == prefix)
    }
}

/// Quantizes already-normalized summary values (PAA units).
pub fn sax_from_values(values: &[f64], bits: u8) -> Result<SaxWord> {
    if !(1..=MAX_BITS).contains(&bits) {
        return Err(Error::BadBits(format!("bits must be in 1..=8, got {bits}")));
    }
    Ok(SaxWord {
        symbols: values.iter().map(|&v| symbolize(v, bits)).collect(),
        bits,
    })
}

pub fn sax_from_paa(paa: &PaaVector, bits: u8) -> Result<SaxWord> {
    sax_from_values(&paa.values, bits)
}

/// Keeps the `per_symbol_bits[j]` most significant bits of symbol `j`.
pub fn reduce_cardinality(word: &SaxWord, per_symbol_bits: &[u8]) -> Result<IsaxWord> {
    if per_symbol_bits.len() != word.len() {
        return Err(Error::BadBits(format!(
            "{} bit counts for a word of {} symbols",
            per_symbol_bits.len(),
            word.len()
        )));
    }
    if let Some(&b) = per_symbol_bits.iter().find(|&&b| b > word.bits) {
        return Err(Error::BadBits(format!(
            "cannot raise cardinality from {} to {b} bits",
            word.bits
        )));
    }
    Ok(IsaxWord {
        symbols: word
            .symbols
            .iter()
            .zip(per_symbol_bits)
            .map(|(&s, &b)| if b == 0 { 0 } else { s >> (word.bits - b) })
            .collect(),
        bits: per_symbol_bits.to_vec(),
    })
}

/// MINDIST between summary values (PAA units) and an iSAX word, for series of
/// length `m`. Callers guarantee matching lengths.
#[inline]
pub fn isax_mindist(query: &[f64], word: &IsaxWord, m: usize) -> f64 {
    let sum: f64 = query
        .iter()
        .zip(&word.symbols)
        .zip(&word.bits)
        .map(|((&q, &s), &b)| {
            let gap = region_gap(q, s, b);
            gap * gap
        })
        .sum();
    distance_scale(m, query.len()) * sum.sqrt()
}

/// Lower bound of the distance from the query series to any series whose
/// SAX word, reduced to `per_symbol_bits`, equals that of `word`.
pub fn mindist(query: &PaaVector, word: &SaxWord, per_symbol_bits: &[u8]) -> Result<f64> {
    if query.len() != word.len() {
        return Err(Error::ShapeMismatch(format!(
            "query has {} segments, word has {}",
            query.len(),
            word.len()
        )));
    }
    let reduced = reduce_cardinality(word, per_symbol_bits)?;
    Ok(isax_mindist(&query.values, &reduced, query.source_length))
}
