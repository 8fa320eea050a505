use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seaidx::datagen::{generate, gen_query_dataset, GenSpec};
use seaidx::eval::{
    avg_distance_diff, chi_stats_montecarlo, leaf_coverage_experiment, nn_coverage,
    reconstruction_rms, sample_pairs, ChiScale,
};
use seaidx::index::IsaxTree;
use seaidx::sampling::{seasam, SampleStrategy};
use seaidx::series::squared_distance;
use seaidx::summarization::{Summaries, Summarizer, SummaryKind};
use seaidx::Dataset;

#[test]
fn montecarlo_means_near_table_values() {
    let a = chi_stats_montecarlo(256, ChiScale::Unit, 100_000, 1);
    assert!((a.stats.mean / 22.605 - 1.0).abs() < 0.005, "{}", a.stats.mean);
    let b = chi_stats_montecarlo(128, ChiScale::Unit, 100_000, 2);
    assert!((b.stats.mean / 15.969 - 1.0).abs() < 0.005, "{}", b.stats.mean);
}

#[test]
fn zero_reconstruction_has_unit_rms() {
    let data = generate(&GenSpec::randwalk(2_000, 128, 4)).unwrap();
    let zeros = Dataset::new(vec![0.0; 2_000 * 128], 2_000, 128, false).unwrap();
    let rms = reconstruction_rms(&data, &zeros).unwrap();
    assert!((rms - 1.0).abs() < 0.02, "{rms}");
    assert_eq!(reconstruction_rms(&data, &data).unwrap(), 0.0);
}

#[test]
fn rms_matches_scalar_oracle() {
    let a = generate(&GenSpec::randwalk(30, 40, 5)).unwrap();
    let b = generate(&GenSpec::randwalk(30, 40, 6)).unwrap();
    let mut total = 0.0;
    for i in 0..30 {
        let mut sq = 0.0;
        for j in 0..40 {
            let e = a.series(i)[j] as f64 - b.series(i)[j] as f64;
            sq += e * e;
        }
        total += (sq / 40.0).sqrt();
    }
    let got = reconstruction_rms(&a, &b).unwrap();
    assert!((got - total / 30.0).abs() < 1e-12);
}

fn scaled_copy(d: &Dataset, factor: f64) -> Summaries {
    let values = d.as_slice().iter().map(|&v| v as f64 * factor).collect();
    Summaries::new(values, d.len(), d.series_len(), d.series_len(), SummaryKind::Dea).unwrap()
}

#[test]
fn rank_preserving_summary_has_full_coverage() {
    let spec = GenSpec::randwalk(1_000, 32, 7);
    let base = generate(&spec).unwrap();
    let queries = gen_query_dataset(&spec, 20).unwrap();
    let ks = [1, 5, 50, 1_000];
    let cov = nn_coverage(&base, &scaled_copy(&base, 3.0), &queries, &scaled_copy(&queries, 3.0), &ks).unwrap();
    assert_eq!(cov, vec![1.0; 4]);
    let paa = Summarizer::paa(4);
    let cov = nn_coverage(
        &base,
        &paa.summarize_dataset(&base).unwrap(),
        &queries,
        &paa.summarize_dataset(&queries).unwrap(),
        &ks,
    )
    .unwrap();
    assert!(cov.iter().all(|c| (0.0..=1.0).contains(c)));
    assert_eq!(cov[3], 1.0);
}

#[test]
fn dft_dea_distances_closer_than_paa_on_seasam_pairs() {
    let data = generate(&GenSpec::randwalk(100_000, 256, 8)).unwrap();
    let sample = seasam(&data, 20_000, 16, 8).unwrap();
    let pairs = sample_pairs(&sample, 8).unwrap();
    let paa = Summarizer::paa(16).summarize_dataset(&data).unwrap();
    let dea = Summarizer::dft_dea(256, 16).unwrap().summarize_dataset(&data).unwrap();
    let paa_diff = avg_distance_diff(&data, &paa, &pairs).unwrap();
    let dea_diff = avg_distance_diff(&data, &dea, &pairs).unwrap();
    assert!(paa_diff > dea_diff, "PAA {paa_diff} vs DFT-DEA {dea_diff}");
    let identity = scaled_copy(&data, 1.0);
    assert!(avg_distance_diff(&data, &identity, &pairs).unwrap() < 1e-9);
}

#[test]
fn queries_follow_base_distance_distribution() {
    let spec = GenSpec::randwalk(4_000, 128, 9);
    let base = generate(&spec).unwrap();
    let queries = gen_query_dataset(&spec, 2_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut qb, mut bb) = (Vec::new(), Vec::new());
    for q in 0..2_000 {
        let (i, j) = (rng.gen_range(0..4_000), rng.gen_range(0..4_000));
        qb.push(squared_distance(queries.series(q), base.series(i)).sqrt());
        if i != j {
            bb.push(squared_distance(base.series(i), base.series(j)).sqrt());
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let sd = |v: &[f64]| {
        let m = mean(v);
        (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
    };
    let se = (sd(&qb).powi(2) / qb.len() as f64 + sd(&bb).powi(2) / bb.len() as f64).sqrt();
    let z = (mean(&qb) - mean(&bb)).abs() / se;
    assert!(z < 4.0, "query-to-base mean {} vs base pairs {} (z={z:.2})", mean(&qb), mean(&bb));
}

#[test]
fn coverage_examples() {
    let data = generate(&GenSpec::fseries(20_000, 256, 10, 10.0, 10)).unwrap();
    let words = Summarizer::paa(16).summarize_dataset(&data).unwrap().sax_words(8).unwrap();
    let tree = IsaxTree::build(words, 100, SummaryKind::Paa, 256).unwrap();
    let seeds: Vec<u64> = (0..10).collect();
    let rows = leaf_coverage_experiment(&tree, &[1, 100, 500, 1_000, 20_000], &seeds).unwrap();
    let leaves = tree.stats().leaves as f64;
    for pair in rows.chunks(2) {
        let (s, u) = (&pair[0], &pair[1]);
        assert_eq!((s.strategy, u.strategy), (SampleStrategy::Seasam, SampleStrategy::Uniform));
        match s.n_prime {
            1 => assert_eq!((s.coverage, u.coverage), (1.0, 1.0)),
            20_000 => assert_eq!((s.coverage, u.coverage), (leaves, leaves)),
            _ => assert!(s.coverage >= u.coverage, "n'={}: {} < {}", s.n_prime, s.coverage, u.coverage),
        }
    }
}
