//! Seeded synthetic datasets.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`): the generator for series
//! `i` of a dataset with seed `s` is `ChaCha8Rng::seed_from_u64(s)` switched to
//! stream `i`; query series use streams `2^63 + i`. Uniforms are
//! `((next_u64 >> 11) + 0.5) · 2⁻⁵³` and normals come from Box-Muller pairs
//! (cosine branch first). Each series therefore depends only on
//! `(seed, stream)` and can be generated in parallel or in another language.

use std::f64::consts::TAU;
use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::series::{znormalize_values, Dataset};

/// Default amplitude multiplier for the amplified low-frequency components.
pub const DEFAULT_AMP: f64 = 10.0;

const QUERY_STREAM_BASE: u64 = 1 << 63;

/// Standard-normal draws from one ChaCha8 stream.
#[derive(Debug, Clone)]
pub struct GaussianStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, spare: None }
    }

    /// Uniform in the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let r = (-2.0 * self.uniform().ln()).sqrt();
        let theta = TAU * self.uniform();
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    RandWalk,
    /// Random spectrum with components `1..=components` multiplied by `amp`.
    FSeries { components: usize, amp: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn randwalk(n: usize, m: usize, seed: u64) -> Self {
        Self {
            kind: GenKind::RandWalk,
            n,
            m,
            seed,
        }
    }

    pub fn fseries(n: usize, m: usize, components: usize, amp: f64, seed: u64) -> Self {
        Self {
            kind: GenKind::FSeries { components, amp },
            n,
            m,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidArgument(format!("m must be >= 2, got {}", self.m)));
        }
        if let GenKind::FSeries { components, amp } = self.kind {
            if 2 * components >= self.m {
                return Err(Error::InvalidArgument(format!(
                    "{components} amplified components need m > {}",
                    2 * components
                )));
            }
            if !(amp.is_finite() && amp > 0.0) {
                return Err(Error::InvalidArgument(format!("bad amplification {amp}")));
            }
        }
        Ok(())
    }
}

/// Un-normalized random walk: running sum of `m` standard-normal steps.
pub fn randwalk_raw(seed: u64, stream: u64, m: usize) -> Vec<f64> {
    let mut g = GaussianStream::new(seed, stream);
    let mut acc = 0.0;
    (0..m)
        .map(|_| {
            acc += g.next_normal();
            acc
        })
        .collect()
}

/// Random conjugate-symmetric spectrum of length `m` with zero DC.
pub fn fseries_spectrum(seed: u64, stream: u64, m: usize, components: usize, amp: f64) -> Vec<Complex<f64>> {
    let mut g = GaussianStream::new(seed, stream);
    let mut spectrum = vec![Complex::new(0.0, 0.0); m];
    for k in 1..=m / 2 {
        let gain = if k <= components { amp } else { 1.0 };
        let c = if 2 * k == m {
            Complex::new(g.next_normal(), 0.0)
        } else {
            Complex::new(g.next_normal(), g.next_normal())
        } * gain;
        spectrum[k] = c;
        spectrum[m - k] = c.conj();
    }
    spectrum
}

struct Generator {
    spec: GenSpec,
    ifft: Option<Arc<dyn Fft<f64>>>,
}

impl Generator {
    fn new(spec: GenSpec) -> Result<Self> {
        spec.validate()?;
        let ifft = match spec.kind {
            GenKind::FSeries { .. } => Some(FftPlanner::new().plan_fft_inverse(spec.m)),
            GenKind::RandWalk => None,
        };
        Ok(Self { spec, ifft })
    }

    fn series(&self, stream: u64) -> Result<Vec<f64>> {
        let GenSpec { m, seed, .. } = self.spec;
        let raw = match (self.spec.kind, &self.ifft) {
            (GenKind::FSeries { components, amp }, Some(ifft)) => {
                let mut spectrum = fseries_spectrum(seed, stream, m, components, amp);
                ifft.process(&mut spectrum);
                spectrum.iter().map(|c| c.re).collect()
            }
            _ => randwalk_raw(seed, stream, m),
        };
        znormalize_values(&raw)
    }

    fn batch(&self, streams: std::ops::Range<u64>) -> Result<Vec<Vec<f64>>> {
        streams
            .into_par_iter()
            .map(|s| self.series(s))
            .collect()
    }
}

/// Generates a z-normalized dataset.
pub fn generate(spec: &GenSpec) -> Result<Dataset> {
    if spec.n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let rows = Generator::new(*spec)?.batch(0..spec.n as u64)?;
    Ok(Dataset::from_rows(rows, true)?.with_seed(Some(spec.seed)))
}

pub fn gen_randwalk(n: usize, m: usize, seed: u64) -> Result<Dataset> {
    generate(&GenSpec::randwalk(n, m, seed))
}

pub fn gen_fseries(n: usize, m: usize, components: usize, amp: f64, seed: u64) -> Result<Dataset> {
    generate(&GenSpec::fseries(n, m, components, amp, seed))
}

/// `n_q` query series from the same distribution as `spec`, drawn from a
/// stream range the base dataset never uses.
pub fn gen_queries(spec: &GenSpec, n_q: usize) -> Result<Vec<Vec<f32>>> {
    let rows = Generator::new(*spec)?.batch(QUERY_STREAM_BASE..QUERY_STREAM_BASE + n_q as u64)?;
    Ok(rows
        .into_iter()
        .map(|r| r.into_iter().map(|v| v as f32).collect())
        .collect())
}

/// [`gen_queries`] packed as a dataset (`n_q >= 1`).
pub fn gen_query_dataset(spec: &GenSpec, n_q: usize) -> Result<Dataset> {
    let rows = gen_queries(spec, n_q)?;
    let m = spec.m;
    Dataset::new(rows.concat(), n_q, m, true).map(|d| d.with_seed(Some(spec.seed)))
}
