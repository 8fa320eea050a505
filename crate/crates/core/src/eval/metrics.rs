use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index::IsaxTree;
use crate::sampling::{seasam_from_words, uniform_sample, SampleSet, SampleStrategy};
use crate::series::{squared_distance, Dataset};
use crate::summarization::Summaries;

/// One evaluated measure with the configuration it ran under.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub name: String,
    pub value: f64,
    pub n_samples: usize,
    pub config: Vec<(String, String)>,
}

impl MetricReport {
    pub fn new(name: impl Into<String>, value: f64, n_samples: usize) -> Self {
        Self {
            name: name.into(),
            value,
            n_samples,
            config: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.config.push((key.to_string(), value.to_string()));
        self
    }

    pub fn csv_header() -> &'static str {
        "metric,value,n,config"
    }

    pub fn to_csv(&self) -> String {
        let config: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{},{},{},{}", self.name, self.value, self.n_samples, config.join(";"))
    }
}

impl fmt::Display for MetricReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "metric={} value={:.6} n={}", self.name, self.value, self.n_samples)?;
        for (k, v) in &self.config {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Mean of `|d'(i, j) − d(i, j)|` over `pairs`.
pub fn avg_distance_diff_with<D, S>(pairs: &[(usize, usize)], d: D, d_prime: S) -> Result<f64>
where
    D: Fn(usize, usize) -> f64,
    S: Fn(usize, usize) -> f64,
{
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("need at least one pair".into()));
    }
    let total: f64 = pairs.iter().map(|&(i, j)| (d_prime(i, j) - d(i, j)).abs()).sum();
    Ok(total / pairs.len() as f64)
}

/// [`avg_distance_diff_with`] using Euclidean distance on `dataset` and the
/// `√(m/l)`-scaled summary distance.
pub fn avg_distance_diff(dataset: &Dataset, summaries: &Summaries, pairs: &[(usize, usize)]) -> Result<f64> {
    if summaries.len() != dataset.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} summaries for {} series",
            summaries.len(),
            dataset.len()
        )));
    }
    avg_distance_diff_with(
        pairs,
        |i, j| squared_distance(dataset.series(i), dataset.series(j)).sqrt(),
        |i, j| summaries.distance_between(i, j),
    )
}

/// Pairs each sampled series with a different, uniformly drawn sampled series.
pub fn sample_pairs(sample: &SampleSet, seed: u64) -> Result<Vec<(usize, usize)>> {
    let ids = sample.indices();
    if ids.len() < 2 {
        return Err(Error::InvalidArgument("pairing needs at least two samples".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(ids
        .iter()
        .enumerate()
        .map(|(a, &i)| {
            let mut b = rng.gen_range(0..ids.len() - 1);
            if b >= a {
                b += 1;
            }
            (i, ids[b])
        })
        .collect())
}

/// Mean over series of the per-series root-mean-square error.
pub fn reconstruction_rms(original: &Dataset, reconstructed: &Dataset) -> Result<f64> {
    if original.len() != reconstructed.len() || original.series_len() != reconstructed.series_len() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            original.len(),
            original.series_len(),
            reconstructed.len(),
            reconstructed.series_len()
        )));
    }
    let m = original.series_len() as f64;
    let total: f64 = original
        .iter()
        .zip(reconstructed.iter())
        .map(|(a, b)| (squared_distance(a, b) / m).sqrt())
        .sum();
    Ok(total / original.len() as f64)
}

/// Identifiers of the `k` smallest distances, ties by identifier.
pub fn knn(distances: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..distances.len()).collect();
    let cmp = |a: &usize, b: &usize| distances[*a].total_cmp(&distances[*b]).then(a.cmp(b));
    if k < order.len() {
        order.select_nth_unstable_by(k, cmp);
        order.truncate(k);
    }
    order.sort_unstable_by(cmp);
    order
}

/// `|kNN_d ∩ kNN_d'| / k` for every `k` in `ks`, from one query's distances
/// to the base set in both spaces.
pub fn coverage_from_distances(true_d: &[f64], summary_d: &[f64], ks: &[usize]) -> Result<Vec<f64>> {
    let n = true_d.len();
    if summary_d.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: summary_d.len(),
        });
    }
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::BadK { k, n });
    }
    let kmax = ks.iter().copied().max().unwrap_or(0);
    let a = knn(true_d, kmax);
    let b = knn(summary_d, kmax);
    let mut in_b = vec![usize::MAX; n];
    for (rank, &id) in b.iter().enumerate() {
        in_b[id] = rank;
    }
    Ok(ks
        .iter()
        .map(|&k| {
            let hits = a[..k].iter().filter(|&&id| in_b[id] < k).count();
            hits as f64 / k as f64
        })
        .collect())
}

/// Mean NN coverage per `k` over the queries, against `base`.
pub fn nn_coverage(
    base: &Dataset,
    base_summaries: &Summaries,
    queries: &Dataset,
    query_summaries: &Summaries,
    ks: &[usize],
) -> Result<Vec<f64>> {
    if base_summaries.len() != base.len() || query_summaries.len() != queries.len() {
        return Err(Error::ShapeMismatch("summaries do not match their datasets".into()));
    }
    let per_query = (0..queries.len())
        .into_par_iter()
        .map(|q| {
            let query = queries.series(q);
            let qs = query_summaries.row(q);
            let true_d: Vec<f64> = base.iter().map(|s| squared_distance(query, s)).collect();
            let summary_d: Vec<f64> = base_summaries.rows().map(|r| squared_distance(r, qs)).collect();
            coverage_from_distances(&true_d, &summary_d, ks)
        })
        .collect::<Result<Vec<_>>>()?;
    let nq = per_query.len().max(1) as f64;
    Ok((0..ks.len())
        .map(|i| per_query.iter().map(|c| c[i]).sum::<f64>() / nq)
        .collect())
}

/// Number of distinct leaves holding at least one sampled series.
pub fn leaf_coverage(tree: &IsaxTree, sample: &SampleSet) -> usize {
    let mut leaves: Vec<usize> = sample.indices().iter().map(|&i| tree.leaf_of(i)).collect();
    leaves.sort_unstable();
    leaves.dedup();
    leaves.len()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageRow {
    pub strategy: SampleStrategy,
    pub n_prime: usize,
    /// Mean over seeds for uniform sampling; SEAsam is deterministic.
    pub coverage: f64,
    pub runs: usize,
}

/// Leaf coverage of SEAsam and uniform samples of each size, over a tree built
/// on the full dataset. SEAsam reuses the tree's SAX words.
pub fn leaf_coverage_experiment(tree: &IsaxTree, sample_sizes: &[usize], uniform_seeds: &[u64]) -> Result<Vec<CoverageRow>> {
    let mut rows = Vec::new();
    for &n_prime in sample_sizes {
        let seasam = seasam_from_words(tree.words(), n_prime)?;
        rows.push(CoverageRow {
            strategy: SampleStrategy::Seasam,
            n_prime,
            coverage: leaf_coverage(tree, &seasam) as f64,
            runs: 1,
        });
        let total = uniform_seeds
            .iter()
            .map(|&seed| Ok(leaf_coverage(tree, &uniform_sample(tree.len(), n_prime, seed)?)))
            .sum::<Result<usize>>()?;
        rows.push(CoverageRow {
            strategy: SampleStrategy::Uniform,
            n_prime,
            coverage: total as f64 / uniform_seeds.len().max(1) as f64,
            runs: uniform_seeds.len(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_line_format() {
        let r = MetricReport::new("rms", 0.5, 10).with("l", 16).with("m", 256);
        assert_eq!(r.to_string(), "metric=rms value=0.500000 n=10 l=16 m=256");
        assert_eq!(r.to_csv(), "rms,0.5,10,l=16;m=256");
    }

    #[test]
    fn distance_diff_examples() {
        let pairs = [(0, 1)];
        let v = avg_distance_diff_with(&pairs, |_, _| 5.0, |_, _| 3.0).unwrap();
        assert_eq!(v, 2.0);
        assert!(avg_distance_diff_with(&[], |_, _| 0.0, |_, _| 0.0).is_err());
    }

    #[test]
    fn knn_ties_by_id() {
        assert_eq!(knn(&[1.0, 0.5, 1.0, 0.5, 3.0], 3), vec![1, 3, 0]);
        assert_eq!(knn(&[2.0, 1.0], 5), vec![1, 0]);
    }

    #[test]
    fn coverage_examples() {
        let d = [0.3, 0.1, 0.9, 0.5];
        assert_eq!(coverage_from_distances(&d, &d, &[1, 2, 4]).unwrap(), vec![1.0; 3]);
        let reversed = [0.9, 0.5, 0.1, 0.3];
        let c = coverage_from_distances(&d, &reversed, &[1, 2, 4]).unwrap();
        assert_eq!(c, vec![0.0, 0.0, 1.0]);
        assert!(matches!(
            coverage_from_distances(&d, &d, &[5]),
            Err(Error::BadK { k: 5, n: 4 })
        ));
    }

    #[test]
    fn pairs_never_self() {
        let s = SampleSet::new((0..50).map(|i| i * 3).collect(), SampleStrategy::Seasam, None).unwrap();
        let pairs = sample_pairs(&s, 4).unwrap();
        assert_eq!(pairs.len(), 50);
        assert!(pairs.iter().all(|(a, b)| a != b && a % 3 == 0 && b % 3 == 0));
        assert_eq!(pairs, sample_pairs(&s, 4).unwrap());
    }
}
