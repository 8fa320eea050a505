//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.
//!
//! Run with `cargo test -p seaidx --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seaidx::datagen::{generate, gen_query_dataset, GenSpec, DEFAULT_AMP};
use seaidx::eval::{chi_stats_analytic, leaf_coverage_experiment, pair_distances, ChiEstimate, ChiScale};
use seaidx::index::{
    approx_query, exact_query_bruteforce, exact_query_pruned, ideal_tightness_curve, tightness,
    IsaxTree,
};
use seaidx::sampling::{deinterleave, invsax, invsax_order, seasam, SampleStrategy};
use seaidx::series::{squared_distance, Dataset};
use seaidx::summarization::{
    dea_scale, isax_mindist, paa, paa_distance, reduce_cardinality, SaxWord, Summarizer,
};

const M: usize = 256;
const L: usize = 16;
const BITS: u8 = 8;
const LEAF: usize = 100;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn randwalk(n: usize, seed: u64) -> GenSpec {
    GenSpec::randwalk(n, M, seed)
}

fn f5(n: usize, seed: u64) -> GenSpec {
    GenSpec::fseries(n, M, 5, DEFAULT_AMP, seed)
}

fn f10(n: usize, seed: u64) -> GenSpec {
    GenSpec::fseries(n, M, 10, DEFAULT_AMP, seed)
}

fn paa_tree(dataset: &Dataset, leaf: usize) -> Result<IsaxTree, String> {
    let words = Summarizer::paa(L)
        .summarize_dataset(dataset)
        .and_then(|s| s.sax_words(BITS))
        .map_err(err)?;
    IsaxTree::build(words, leaf, seaidx::summarization::SummaryKind::Paa, M).map_err(err)
}

/// `|got − table| <= half a unit in the table's 4th significant figure`, or
/// in its last printed digit when it prints fewer.
fn matches_table(got: f64, printed: &str) -> bool {
    let table: f64 = printed.parse().unwrap();
    let decimals = printed.split('.').nth(1).map_or(0, str::len) as i32;
    let exponent = table.abs().log10().floor() as i32;
    let place = (exponent - 3).max(-decimals);
    (got - table).abs() <= 0.5 * 10f64.powi(place) + 1e-12
}

fn chi_moment_table() -> Outcome {
    // length, then (mean, var) for scale 1, sqrt(256/m), sqrt(1/m)
    const TABLE: [(usize, [&str; 6]); 5] = [
        (256, ["22.605", "0.999", "22.605", "0.999", "1.4128", "0.0039"]),
        (128, ["15.969", "0.998", "22.583", "1.9961", "1.4115", "0.0078"]),
        (96, ["13.820", "0.997", "22.569", "2.6597", "1.4105", "0.0104"]),
        (16, ["5.5692", "0.984", "22.277", "15.743", "1.3923", "0.0615"]),
        (8, ["3.8772", "0.967", "21.933", "30.944", "1.3708", "0.1209"]),
    ];
    let scales = [ChiScale::Unit, ChiScale::Sos { reference: 256 }, ChiScale::PerPoint];
    let mut cells = 0;
    let mut worst_z: f64 = 0.0;
    for (m, row) in TABLE {
        let draws = pair_distances(m, 100_000, 2024);
        for (c, scale) in scales.iter().enumerate() {
            let a = chi_stats_analytic(m, *scale);
            for (got, printed) in [(a.mean, row[2 * c]), (a.variance, row[2 * c + 1])] {
                check(matches_table(got, printed), || {
                    format!("m={m} scale={scale}: analytic {got:.6} vs table {printed}")
                })?;
                cells += 1;
            }
            let mc = ChiEstimate::from_distances(&draws, m, *scale);
            let (zm, zv) = mc.z_scores(&a);
            worst_z = worst_z.max(zm).max(zv);
            check(zm <= 3.0 && zv <= 3.0, || {
                format!("m={m} scale={scale}: Monte Carlo off by z_mean={zm:.2} z_var={zv:.2}")
            })?;
        }
    }
    Ok(format!("{cells} analytic values match; Monte Carlo max |z| = {worst_z:.2} (limit 3)"))
}

fn sos_preservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst: f64 = 0.0;
    for d in 0..10 {
        let m = [96, 128, 256][d % 3];
        let n = 1_000;
        let mut sos = 0.0;
        for _ in 0..n {
            let offset = rng.gen_range(-50.0..50.0);
            let spread = rng.gen_range(0.01..100.0);
            let raw: Vec<f64> = (0..L).map(|_| offset + spread * rng.gen_range(-1.0..1.0)).collect();
            sos += dea_scale(&raw, m).map_err(err)?.sum_of_squares();
        }
        let target = (n * m) as f64;
        let rel = (sos - target).abs() / target;
        worst = worst.max(rel);
        check(rel <= 1e-5, || format!("dataset {d} (m={m}): SoS {sos} vs n*m {target}"))?;
    }
    Ok(format!("10 datasets, max relative SoS error {worst:.2e} (limit 1e-5)"))
}

fn lower_bounds() -> Outcome {
    let slack = 1e-9;
    let mut checked = 0;
    for (name, spec) in [("RandWalk", randwalk(4_000, 31)), ("F10", f10(4_000, 32))] {
        let data = generate(&spec).map_err(err)?;
        let paas: Vec<_> = data.iter().map(|s| paa(s, L)).collect::<Result<_, _>>().map_err(err)?;
        let words: Vec<SaxWord> = paas
            .iter()
            .map(|p| seaidx::summarization::sax_from_paa(p, BITS))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        for _ in 0..10_000 {
            let (q, s) = (rng.gen_range(0..data.len()), rng.gen_range(0..data.len()));
            let d = squared_distance(data.series(q), data.series(s)).sqrt();
            let lb_paa = paa_distance(&paas[q], &paas[s]).map_err(err)?;
            check(lb_paa <= d + slack, || format!("{name}: PAA bound {lb_paa} > {d}"))?;
            let full = reduce_cardinality(&words[s], &[BITS; L]).map_err(err)?;
            let md_full = isax_mindist(&paas[q].values, &full, M);
            check(md_full <= d + slack, || format!("{name}: mindist {md_full} > {d}"))?;
            let bits: Vec<u8> = (0..L).map(|_| rng.gen_range(0..=BITS)).collect();
            let reduced = reduce_cardinality(&words[s], &bits).map_err(err)?;
            let md_reduced = isax_mindist(&paas[q].values, &reduced, M);
            check(md_reduced <= md_full + slack, || {
                format!("{name}: reduced mindist {md_reduced} > full {md_full}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs: PAA bound, mindist and reduced-cardinality mindist all hold"))
}

fn exact_search() -> Outcome {
    let mut summary = Vec::new();
    for (name, spec) in [("RandWalk", randwalk(10_000, 41)), ("F5", f5(10_000, 42)), ("F10", f10(10_000, 43))] {
        let data = generate(&spec).map_err(err)?;
        let queries = gen_query_dataset(&spec, 100).map_err(err)?;
        let tree = paa_tree(&data, LEAF)?;
        let mut examined = 0;
        for (qi, q) in queries.iter().enumerate() {
            let qp = paa(q, L).map_err(err)?.values;
            let brute = exact_query_bruteforce(&data, q).map_err(err)?;
            let pruned = exact_query_pruned(&tree, &data, q, &qp).map_err(err)?;
            check(pruned.id == brute.0 && pruned.distance == brute.1, || {
                format!("{name} query {qi}: pruned ({}, {}) vs brute force {brute:?}", pruned.id, pruned.distance)
            })?;
            examined += pruned.series_examined;
        }
        let mean = examined as f64 / queries.len() as f64;
        check(mean < data.len() as f64, || format!("{name}: pruning examined {mean} of {}", data.len()))?;
        summary.push(format!("{name} examined {mean:.0}/{}", data.len()));
    }
    Ok(format!("300 queries agree; {}", summary.join(", ")))
}

fn tightness_contract() -> Outcome {
    let spec = randwalk(10_000, 51);
    let data = generate(&spec).map_err(err)?;
    let queries = gen_query_dataset(&spec, 100).map_err(err)?;
    let tree = paa_tree(&data, LEAF)?;
    let budgets = [100, 1_000, data.len()];
    let mut means = vec![0.0; budgets.len()];
    for (qi, q) in queries.iter().enumerate() {
        let qp = paa(q, L).map_err(err)?.values;
        let exact = exact_query_bruteforce(&data, q).map_err(err)?.1;
        for (b, &budget) in budgets.iter().enumerate() {
            let report = approx_query(&tree, &data, qi, q, &qp, budget).map_err(err)?;
            let t = tightness(exact, report.bsf());
            check(t > 0.0 && t <= 1.0, || format!("query {qi} budget {budget}: tightness {t}"))?;
            if budget == data.len() {
                check(t == 1.0, || format!("query {qi}: budget n gave tightness {t}"))?;
            }
            means[b] += t / queries.len() as f64;
        }
    }
    check(means.windows(2).all(|w| w[0] <= w[1]), || format!("mean tightness not monotone: {means:?}"))?;
    Ok(format!(
        "mean tightness {:.4} / {:.4} / {:.4} at budgets 100 / 1000 / n",
        means[0], means[1], means[2]
    ))
}

fn seasam_coverage() -> Outcome {
    let data = generate(&f10(100_000, 61)).map_err(err)?;
    let tree = paa_tree(&data, LEAF)?;
    let seeds: Vec<u64> = (0..10).collect();
    let rows = leaf_coverage_experiment(&tree, &[100, 1_000, 10_000], &seeds).map_err(err)?;
    let mut parts = Vec::new();
    for pair in rows.chunks(2) {
        let (s, u) = (&pair[0], &pair[1]);
        debug_assert_eq!((s.strategy, u.strategy), (SampleStrategy::Seasam, SampleStrategy::Uniform));
        check(s.coverage >= u.coverage, || {
            format!("n'={}: SEAsam {} < uniform {:.1}", s.n_prime, s.coverage, u.coverage)
        })?;
        parts.push(format!("n'={}: {} vs {:.1}", s.n_prime, s.coverage, u.coverage));
    }
    Ok(format!("{} leaves; SEAsam vs uniform coverage {}", tree.stats().leaves, parts.join(", ")))
}

fn seasam_properties() -> Outcome {
    for spec in [randwalk(10_000, 71), f5(10_000, 72), f10(10_000, 73)] {
        let data = generate(&spec).map_err(err)?;
        let words = Summarizer::paa(L)
            .summarize_dataset(&data)
            .and_then(|s| s.sax_words(BITS))
            .map_err(err)?;
        let order = invsax_order(&words);
        let mut rank = vec![0; order.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        for n_prime in [100, 333, 10_000] {
            let a = seasam(&data, n_prime, L, BITS).map_err(err)?;
            let b = seasam(&data, n_prime, L, BITS).map_err(err)?;
            check(a == b, || format!("seed {}: SEAsam not deterministic", spec.seed))?;
            check(a.len() == n_prime, || format!("sample of {} for n'={n_prime}", a.len()))?;
            let mut ranks: Vec<usize> = a.indices().iter().map(|&i| rank[i]).collect();
            ranks.sort_unstable();
            let stride = data.len() / n_prime;
            check(ranks[0] == 0, || "sampling must start at rank 0".into())?;
            check(ranks.windows(2).all(|w| w[1] - w[0] == stride), || {
                format!("n'={n_prime}: ranks not strided by {stride}")
            })?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(74);
    for _ in 0..10_000 {
        let bits = rng.gen_range(1..=8u8);
        let l = rng.gen_range(1..=32);
        let symbols = (0..l).map(|_| (rng.gen::<u16>() % (1 << bits)) as u8).collect();
        let w = SaxWord::new(symbols, bits).map_err(err)?;
        let back = deinterleave(&invsax(&w), l, bits).map_err(err)?;
        check(back == w, || format!("round trip failed for {w:?}"))?;
    }
    Ok("3 datasets deterministic with exact stride; 10000 InvSAX round trips exact".into())
}

fn dft_dea_dominates() -> Outcome {
    let budgets = [1, 2, 5, 10];
    let mut wins = 0;
    let mut lines = Vec::new();
    for seed in 0..5 {
        let spec = f10(10_000, 81 + seed);
        let data = generate(&spec).map_err(err)?;
        let queries = gen_query_dataset(&spec, 200).map_err(err)?;
        let curve = |s: &Summarizer| -> Result<Vec<f64>, String> {
            let base = s.summarize_dataset(&data).map_err(err)?;
            let qs = s.summarize_dataset(&queries).map_err(err)?;
            ideal_tightness_curve(&data, &queries, &base, &qs, &budgets).map_err(err)
        };
        let paa_curve = curve(&Summarizer::paa(L))?;
        let dft_curve = curve(&Summarizer::dft_dea(M, L).map_err(err)?)?;
        let dominates = dft_curve.iter().zip(&paa_curve).all(|(d, p)| d >= p);
        wins += usize::from(dominates);
        lines.push(format!(
            "seed {}: {} [{}] vs [{}]",
            spec.seed,
            if dominates { "win" } else { "loss" },
            fmt_curve(&dft_curve),
            fmt_curve(&paa_curve)
        ));
    }
    let detail = lines.join("; ");
    check(wins >= 3, || format!("DFT-DEA dominated in only {wins}/5 seeds: {detail}"))?;
    Ok(format!("{wins}/5 seeds dominate at budgets {budgets:?} (DFT-DEA vs PAA): {detail}"))
}

fn fmt_curve(c: &[f64]) -> String {
    c.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(" ")
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("chi-moment-table", Duration::from_secs(10), chi_moment_table),
        ("dea-sos-preservation", Duration::from_secs(5), sos_preservation),
        ("lower-bounding", Duration::from_secs(30), lower_bounds),
        ("exact-search-oracle", Duration::from_secs(60), exact_search),
        ("tightness-contract", Duration::from_secs(60), tightness_contract),
        ("seasam-leaf-coverage", Duration::from_secs(120), seasam_coverage),
        ("seasam-determinism-invsax-roundtrip", Duration::from_secs(10), seasam_properties),
        ("dft-dea-ideal-tightness", Duration::from_secs(120), dft_dea_dominates),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.1?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {name} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name} ({elapsed:.2?}): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
