//! Lower-dimensional representations of data series and their distances.
//!
//! Summaries are kept in *unit* values: PAA means as they are, DEAs divided by
//! `√(m/l)`. Both quantize against the same Gaussian breakpoints, and both
//! compare as `√(m/l) · ‖a − b‖`.

mod breakpoints;
mod dea;
mod dft;
mod paa;
mod sax;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use breakpoints::{breakpoints, inverse_normal_cdf, region, region_gap, symbolize, MAX_BITS};
pub use dea::{dea_scale, DeaVector};
pub use dft::{dft_reconstruct, dft_summarize, DftSummarizer};
pub use paa::{distance_scale, paa, paa_distance, paa_reconstruct, segments, PaaVector};
pub use sax::{
    isax_mindist, mindist, reduce_cardinality, sax_from_paa, sax_from_values, IsaxWord, SaxWord,
};

use crate::error::{Error, Result};
use crate::format::DeaFile;
use crate::series::{squared_distance, Dataset};

/// Default number of segments / embedding dimensions.
pub const DEFAULT_SEGMENTS: usize = 16;
/// Default bits per SAX symbol (cardinality 256).
pub const DEFAULT_BITS: u8 = 8;

/// What a SAX word was derived from. Only PAA-based words lower-bound the
/// true distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SummaryKind {
    Paa,
    Dea,
}

impl fmt::Display for SummaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummaryKind::Paa => "paa",
            SummaryKind::Dea => "dea",
        })
    }
}

impl FromStr for SummaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paa" => Ok(SummaryKind::Paa),
            "dea" => Ok(SummaryKind::Dea),
            other => Err(Error::InvalidArgument(format!(
                "unknown summary kind {other:?}"
            ))),
        }
    }
}

/// Computes summaries of raw series.
#[derive(Debug, Clone)]
pub enum Summarizer {
    Paa { l: usize },
    /// Truncated DFT passed through [`dea_scale`].
    DftDea(DftSummarizer),
}

impl Summarizer {
    pub fn paa(l: usize) -> Self {
        Summarizer::Paa { l }
    }

    pub fn dft_dea(m: usize, l: usize) -> Result<Self> {
        Ok(Summarizer::DftDea(DftSummarizer::new(m, l)?))
    }

    pub fn kind(&self) -> SummaryKind {
        match self {
            Summarizer::Paa { .. } => SummaryKind::Paa,
            Summarizer::DftDea(_) => SummaryKind::Dea,
        }
    }

    pub fn l(&self) -> usize {
        match self {
            Summarizer::Paa { l } => *l,
            Summarizer::DftDea(d) => d.l(),
        }
    }

    /// Scaled DEA of a series (DFT provider only).
    pub fn dea<T: Copy + Into<f64>>(&self, series: &[T]) -> Result<DeaVector> {
        match self {
            Summarizer::Paa { .. } => Err(Error::InvalidArgument(
                "PAA summaries are not DEAs".into(),
            )),
            Summarizer::DftDea(d) => dea_scale(&d.summarize(series)?, series.len()),
        }
    }

    /// Summary of one series in unit values.
    pub fn unit_values<T: Copy + Into<f64>>(&self, series: &[T]) -> Result<Vec<f64>> {
        match self {
            Summarizer::Paa { l } => Ok(paa(series, *l)?.values),
            Summarizer::DftDea(_) => Ok(self.dea(series)?.unit_values()),
        }
    }

    pub fn summarize_dataset(&self, dataset: &Dataset) -> Result<Summaries> {
        let rows = dataset
            .iter()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|row| self.unit_values(row))
            .collect::<Result<Vec<_>>>()?;
        let l = rows.first().map_or(0, Vec::len);
        Ok(Summaries {
            values: rows.concat(),
            n: dataset.len(),
            l,
            source_m: dataset.series_len(),
            kind: self.kind(),
        })
    }
}

/// Summaries of a whole dataset, `n × l` unit values.
#[derive(Debug, Clone, PartialEq)]
pub struct Summaries {
    values: Vec<f64>,
    n: usize,
    l: usize,
    source_m: usize,
    kind: SummaryKind,
}

impl Summaries {
    pub fn new(values: Vec<f64>, n: usize, l: usize, source_m: usize, kind: SummaryKind) -> Result<Self> {
        if values.len() != n * l {
            return Err(Error::ShapeMismatch(format!(
                "{} summary values for {n} x {l}",
                values.len()
            )));
        }
        Ok(Self {
            values,
            n,
            l,
            source_m,
            kind,
        })
    }

    /// Summaries from a DEA file; unscaled vectors go through [`dea_scale`].
    pub fn from_dea_file(dea: &DeaFile) -> Result<Self> {
        let l = dea.vectors.series_len();
        let mut values = Vec::with_capacity(dea.vectors.len() * l);
        for row in dea.vectors.iter() {
            let raw: Vec<f64> = row.iter().map(|&v| f64::from(v)).collect();
            let vector = if dea.scaled {
                DeaVector {
                    values: raw,
                    source_length: dea.source_m,
                    scaled: true,
                }
            } else {
                dea_scale(&raw, dea.source_m)?
            };
            values.extend(vector.unit_values());
        }
        Self::new(values, dea.vectors.len(), l, dea.source_m, SummaryKind::Dea)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn source_m(&self) -> usize {
        self.source_m
    }

    pub fn kind(&self) -> SummaryKind {
        self.kind
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.l..(i + 1) * self.l]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f64> {
        self.values.chunks_exact(self.l)
    }

    /// `√(m/l)`.
    pub fn scale(&self) -> f64 {
        distance_scale(self.source_m, self.l)
    }

    /// Summary-space distance between row `i` and a unit-value vector.
    pub fn distance_to(&self, i: usize, query: &[f64]) -> f64 {
        self.scale() * squared_distance(self.row(i), query).sqrt()
    }

    pub fn distance_between(&self, i: usize, j: usize) -> f64 {
        self.scale() * squared_distance(self.row(i), self.row(j)).sqrt()
    }

    pub fn sax_words(&self, bits: u8) -> Result<Vec<SaxWord>> {
        self.rows().map(|r| sax_from_values(r, bits)).collect()
    }

    /// The rows as a scaled DEA file (sum of squares `m` per row).
    pub fn to_dea_file(&self) -> Result<DeaFile> {
        let scale = self.scale();
        let data = self.values.iter().map(|v| (v * scale) as f32).collect();
        Ok(DeaFile {
            vectors: Dataset::new(data, self.n, self.l, false)?,
            source_m: self.source_m,
            scaled: true,
        })
    }
}
