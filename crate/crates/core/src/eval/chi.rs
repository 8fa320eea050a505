//! Moments of the distance between two i.i.d. standard-Gaussian series.
//!
//! With `m` coordinates, each difference is `N(0, 2)`, so the distance follows
//! a scaled chi distribution with `m` degrees of freedom:
//! mean `2 · Γ((m+1)/2) / Γ(m/2)`, variance `4 · (m/2 − (Γ((m+1)/2) / Γ(m/2))²)`.

use std::fmt;

use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::datagen::GaussianStream;

/// Multiplier applied to both series before measuring their distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChiScale {
    /// Raw series.
    Unit,
    /// `√(reference / m)`: series stretched to the energy of a length-`reference` series.
    Sos { reference: usize },
    /// `√(1/m)`: the per-point scaling applied inside training losses.
    PerPoint,
}

impl ChiScale {
    pub fn factor(&self, m: usize) -> f64 {
        match *self {
            ChiScale::Unit => 1.0,
            ChiScale::Sos { reference } => (reference as f64 / m as f64).sqrt(),
            ChiScale::PerPoint => (1.0 / m as f64).sqrt(),
        }
    }
}

impl fmt::Display for ChiScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiScale::Unit => f.write_str("1"),
            ChiScale::Sos { reference } => write!(f, "sqrt({reference}/m)"),
            ChiScale::PerPoint => f.write_str("sqrt(1/m)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiStats {
    pub m: usize,
    pub scale: ChiScale,
    pub mean: f64,
    pub variance: f64,
}

/// `Γ((m+1)/2) / Γ(m/2)`, through log-gamma so large `m` cannot overflow.
pub fn gamma_ratio(m: usize) -> f64 {
    (ln_gamma((m as f64 + 1.0) / 2.0) - ln_gamma(m as f64 / 2.0)).exp()
}

pub fn chi_stats_analytic(m: usize, scale: ChiScale) -> ChiStats {
    assert!(m >= 1, "m must be >= 1");
    let r = gamma_ratio(m);
    let c = scale.factor(m);
    ChiStats {
        m,
        scale,
        mean: 2.0 * r * c,
        variance: 4.0 * (m as f64 / 2.0 - r * r) * c * c,
    }
}

/// Empirical moments plus their standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiEstimate {
    pub stats: ChiStats,
    pub n_pairs: usize,
    pub mean_se: f64,
    pub variance_se: f64,
}

impl ChiEstimate {
    /// Estimate from unscaled pair distances; the scale is applied here so
    /// one draw can serve every column of a table row.
    pub fn from_distances(distances: &[f64], m: usize, scale: ChiScale) -> Self {
        assert!(distances.len() >= 2, "need at least two pairs");
        let c = scale.factor(m);
        let n = distances.len() as f64;
        let mean = distances.iter().map(|x| x * c).sum::<f64>() / n;
        let (m2, m4) = distances.iter().fold((0.0, 0.0), |(a, b), &x| {
            let e = (x * c - mean) * (x * c - mean);
            (a + e, b + e * e)
        });
        let variance = m2 / (n - 1.0);
        let fourth = m4 / n;
        let pop_var = m2 / n;
        ChiEstimate {
            stats: ChiStats {
                m,
                scale,
                mean,
                variance,
            },
            n_pairs: distances.len(),
            mean_se: (variance / n).sqrt(),
            variance_se: ((fourth - pop_var * pop_var) / n).sqrt(),
        }
    }

    /// Largest deviation from `reference`, in standard errors.
    pub fn z_scores(&self, reference: &ChiStats) -> (f64, f64) {
        (
            (self.stats.mean - reference.mean).abs() / self.mean_se,
            (self.stats.variance - reference.variance).abs() / self.variance_se,
        )
    }
}

/// Distances between `n_pairs` pairs of i.i.d. `N(0,1)` series of length `m`.
/// Pair `i` draws from stream `i` of `seed`.
pub fn pair_distances(m: usize, n_pairs: usize, seed: u64) -> Vec<f64> {
    (0..n_pairs as u64)
        .into_par_iter()
        .map(|i| {
            let mut g = GaussianStream::new(seed, i);
            (0..m)
                .map(|_| {
                    let d = g.next_normal() - g.next_normal();
                    d * d
                })
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}

pub fn chi_stats_montecarlo(m: usize, scale: ChiScale, n_pairs: usize, seed: u64) -> ChiEstimate {
    ChiEstimate::from_distances(&pair_distances(m, n_pairs, seed), m, scale)
}
