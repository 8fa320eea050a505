use serde_json::{json, Value};
use statrs::function::gamma::ln_gamma;

use seaidx::datagen::{generate, gen_query_dataset, GenSpec, DEFAULT_AMP};
use seaidx::eval::{chi_stats_analytic, pair_distances, ChiEstimate, ChiScale};
use seaidx::index::ideal_tightness_curve;
use seaidx::summarization::{
    breakpoints, dft_reconstruct, dft_summarize, paa, paa_reconstruct, sax_from_paa, Summarizer,
};
use seaidx::{Error, Result};

const BUDGETS: [usize; 10] = [1, 2, 5, 10, 20, 50, 100, 200, 500, 1000];
const HISTOGRAM_BINS: usize = 40;

pub fn gen_spec(kind: &str, n: usize, m: usize, seed: u64) -> Result<GenSpec> {
    match kind {
        "randwalk" => Ok(GenSpec::randwalk(n, m, seed)),
        "f5" => Ok(GenSpec::fseries(n, m, 5, DEFAULT_AMP, seed)),
        "f10" => Ok(GenSpec::fseries(n, m, 10, DEFAULT_AMP, seed)),
        other => Err(Error::InvalidArgument(format!(
            "unknown dataset kind {other:?} (randwalk, f5, f10)"
        ))),
    }
}

fn rms(a: &[f64], b: &[f64]) -> f64 {
    (a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>() / a.len() as f64).sqrt()
}

pub fn series_view(kind: &str, m: usize, l: usize, bits: u8, seed: u64) -> Result<Value> {
    let data = generate(&gen_spec(kind, 1, m, seed)?)?;
    let series: Vec<f64> = data.series(0).iter().map(|&v| f64::from(v)).collect();
    let p = paa(&series, l)?;
    let paa_recon = paa_reconstruct(&p);
    let coefficients = dft_summarize(&series, l)?;
    let dft_recon = dft_reconstruct(&coefficients, m)?;
    let word = sax_from_paa(&p, bits)?;
    Ok(json!({
        "series": series,
        "paa": {
            "values": p.values,
            "reconstruction": paa_recon,
            "rms": rms(&series, &paa_recon),
        },
        "dft": {
            "coefficients": coefficients,
            "reconstruction": dft_recon,
            "rms": rms(&series, &dft_recon),
        },
        "sax": {
            "symbols": word.symbols(),
            "bits": bits,
            "breakpoints": breakpoints(bits),
        },
    }))
}

pub fn tightness_view(kind: &str, n: usize, m: usize, l: usize, n_queries: usize, seed: u64) -> Result<Value> {
    if n_queries == 0 {
        return Err(Error::InvalidArgument("need at least one query".into()));
    }
    let spec = gen_spec(kind, n, m, seed)?;
    let data = generate(&spec)?;
    let queries = gen_query_dataset(&spec, n_queries)?;
    let mut budgets: Vec<usize> = BUDGETS.iter().copied().filter(|&b| b < n).collect();
    budgets.push(n);
    let curve = |s: Summarizer| -> Result<Vec<f64>> {
        let base = s.summarize_dataset(&data)?;
        let qs = s.summarize_dataset(&queries)?;
        ideal_tightness_curve(&data, &queries, &base, &qs, &budgets)
    };
    let paa_curve = curve(Summarizer::paa(l))?;
    let dft_curve = curve(Summarizer::dft_dea(m, l)?)?;
    Ok(json!({
        "budgets": budgets,
        "paa": paa_curve,
        "dft_dea": dft_curve,
    }))
}

/// Density of `√2·χ_m`, the distance between two i.i.d. standard Gaussian series.
pub fn distance_density(m: usize, d: f64) -> f64 {
    if d <= 0.0 {
        return 0.0;
    }
    let x = d / std::f64::consts::SQRT_2;
    let half = m as f64 / 2.0;
    let ln = (m as f64 - 1.0) * x.ln() - x * x / 2.0 - (half - 1.0) * 2f64.ln() - ln_gamma(half);
    ln.exp() / std::f64::consts::SQRT_2
}

pub fn chi_view(m: usize, pairs: usize, seed: u64) -> Result<Value> {
    if m == 0 || pairs < 2 {
        return Err(Error::InvalidArgument("need m >= 1 and at least two pairs".into()));
    }
    let draws = pair_distances(m, pairs, seed);
    let rows: Vec<Value> = [ChiScale::Unit, ChiScale::Sos { reference: 256 }, ChiScale::PerPoint]
        .into_iter()
        .map(|scale| {
            let exact = chi_stats_analytic(m, scale);
            let sampled = ChiEstimate::from_distances(&draws, m, scale);
            json!({
                "scale": scale.to_string(),
                "mean": exact.mean,
                "variance": exact.variance,
                "sampled_mean": sampled.stats.mean,
                "sampled_variance": sampled.stats.variance,
            })
        })
        .collect();
    let lo = draws.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = draws.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = ((hi - lo) / HISTOGRAM_BINS as f64).max(f64::MIN_POSITIVE);
    let mut counts = vec![0usize; HISTOGRAM_BINS];
    for d in &draws {
        let bin = (((d - lo) / width) as usize).min(HISTOGRAM_BINS - 1);
        counts[bin] += 1;
    }
    let centers: Vec<f64> = (0..HISTOGRAM_BINS).map(|b| lo + (b as f64 + 0.5) * width).collect();
    let density: Vec<f64> = centers.iter().map(|&c| distance_density(m, c)).collect();
    Ok(json!({
        "m": m,
        "pairs": pairs,
        "rows": rows,
        "histogram": {
            "centers": centers,
            "width": width,
            "counts": counts,
            "density": density,
        },
    }))
}
