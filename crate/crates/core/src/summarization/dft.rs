//! Truncated-spectrum embedding used as a non-learned DEA provider.
//!
//! Coefficients `1..=l/2` are kept (the DC term is zero for z-normalized
//! series) with orthonormal weights, so the embedding's sum of squares is the
//! energy the kept frequencies carry in the series.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

fn check(m: usize, l: usize) -> Result<()> {
    if l == 0 || !l.is_multiple_of(2) || l > m {
        return Err(Error::BadBudget { l, m });
    }
    Ok(())
}

/// Weight that makes bin `k` of a length-`m` transform energy-preserving.
fn weight(k: usize, m: usize) -> f64 {
    if 2 * k == m {
        (1.0 / m as f64).sqrt()
    } else {
        (2.0 / m as f64).sqrt()
    }
}

/// Reusable forward transform for series of length `m`.
#[derive(Clone)]
pub struct DftSummarizer {
    fft: Arc<dyn Fft<f64>>,
    m: usize,
    l: usize,
}

impl std::fmt::Debug for DftSummarizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DftSummarizer")
            .field("m", &self.m)
            .field("l", &self.l)
            .finish()
    }
}

impl DftSummarizer {
    pub fn new(m: usize, l: usize) -> Result<Self> {
        check(m, l)?;
        let fft = FftPlanner::new().plan_fft_forward(m);
        Ok(Self { fft, m, l })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn summarize<T: Copy + Into<f64>>(&self, series: &[T]) -> Result<Vec<f64>> {
        if series.len() != self.m {
            return Err(Error::LengthMismatch {
                left: self.m,
                right: series.len(),
            });
        }
        let mut buf: Vec<Complex<f64>> =
            series.iter().map(|&v| Complex::new(v.into(), 0.0)).collect();
        self.fft.process(&mut buf);
        let mut out = Vec::with_capacity(self.l);
        for (k, c) in buf.iter().enumerate().skip(1).take(self.l / 2) {
            let w = weight(k, self.m);
            out.push(c.re * w);
            out.push(c.im * w);
        }
        Ok(out)
    }
}

/// First `l/2` non-DC DFT coefficients of `series`, flattened as `(re, im)` pairs.
pub fn dft_summarize<T: Copy + Into<f64>>(series: &[T], l: usize) -> Result<Vec<f64>> {
    DftSummarizer::new(series.len(), l)?.summarize(series)
}

/// Inverse of [`dft_summarize`] with the missing coefficients (and DC) set to zero.
pub fn dft_reconstruct(coefficients: &[f64], m: usize) -> Result<Vec<f64>> {
    let l = coefficients.len();
    check(m, l)?;
    let mut spectrum = vec![Complex::new(0.0, 0.0); m];
    for (i, pair) in coefficients.chunks_exact(2).enumerate() {
        let k = i + 1;
        let w = weight(k, m);
        let c = Complex::new(pair[0] / w, pair[1] / w);
        spectrum[k] = c;
        if k != m - k {
            spectrum[m - k] = c.conj();
        }
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut spectrum);
    Ok(spectrum.iter().map(|c| c.re / m as f64).collect())
}
