use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use seaidx::datagen::{generate, gen_query_dataset, GenSpec};
use seaidx::eval::{
    avg_distance_diff, chi_stats_analytic, leaf_coverage_experiment, nn_coverage, pair_distances,
    reconstruction_rms, sample_pairs, ChiEstimate, ChiScale, MetricReport,
};
use seaidx::format::{
    load_dataset_base, load_dea, load_sample, load_sax, save_dataset_base, save_dea, save_sample,
    save_sax, with_suffix, SaxFile,
};
use seaidx::index::{
    approx_query, exact_query_bruteforce, ideal_tightness_curve, leaf_compactness, IsaxTree,
};
use seaidx::sampling::{seasam, seasam_from_words, uniform_sample};
use seaidx::summarization::{Summaries, Summarizer, SummaryKind};
use seaidx::{Dataset, Error};

use crate::{
    CliError, Command, EvalArgs, GenArgs, GenKindArg, IndexArgs, MetricArg, QueryArgs,
    QuerySummaryArg, SampleArgs, StatsArgs, StrategyArg, SummarizeArgs, SummaryArg,
};

type Out<'a> = &'a mut dyn Write;

pub fn dispatch(command: Command, out: Out) -> Result<(), CliError> {
    match command {
        Command::Gen(a) => gen(a),
        Command::Summarize(a) => summarize(a),
        Command::Sample(a) => sample(a),
        Command::Index(a) => index(a, out),
        Command::Query(a) => query(a, out),
        Command::Eval(a) => eval(a, out),
        Command::Stats(a) => stats(a, out),
    }
}

fn log(line: String) {
    eprintln!("{line}");
}

fn required<'a>(value: &'a Option<std::path::PathBuf>, flag: &str) -> Result<&'a Path, CliError> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("this operation needs --{flag}")))
}

/// Loads a dataset, z-normalizing it in memory if the file is raw.
fn load_series(path: &Path) -> Result<Dataset, CliError> {
    let data = load_dataset_base(path)?;
    if data.is_znormalized() {
        Ok(data)
    } else {
        Ok(data.znormalized()?)
    }
}

fn load_embedding(path: &Path, data: &Dataset) -> Result<Summaries, CliError> {
    let dea = load_dea(path)?;
    if dea.vectors.len() != data.len() {
        return Err(Error::SizeMismatch {
            what: format!("row count of {}", path.display()),
            expected: data.len() as u64,
            actual: dea.vectors.len() as u64,
        }
        .into());
    }
    if dea.source_m != data.series_len() {
        return Err(Error::SizeMismatch {
            what: format!("{} source_m", path.display()),
            expected: data.series_len() as u64,
            actual: dea.source_m as u64,
        }
        .into());
    }
    Ok(Summaries::from_dea_file(&dea)?)
}

fn summaries(
    kind: SummaryArg,
    data: &Dataset,
    l: usize,
    embedding: Option<&Path>,
) -> Result<Summaries, CliError> {
    match kind {
        SummaryArg::Paa => Ok(Summarizer::paa(l).summarize_dataset(data)?),
        SummaryArg::DftDea => Ok(Summarizer::dft_dea(data.series_len(), l)?.summarize_dataset(data)?),
        SummaryArg::Dea => {
            let path = embedding.ok_or_else(|| CliError::Usage("--summary dea needs an embedding file".into()))?;
            load_embedding(path, data)
        }
    }
}

fn summary_name(kind: SummaryArg) -> &'static str {
    match kind {
        SummaryArg::Paa => "paa",
        SummaryArg::DftDea => "dft-dea",
        SummaryArg::Dea => "dea",
    }
}

fn gen(a: GenArgs) -> Result<(), CliError> {
    let spec = match a.kind {
        GenKindArg::Randwalk => GenSpec::randwalk(a.n, a.m, a.seed),
        GenKindArg::F5 => GenSpec::fseries(a.n, a.m, 5, a.amp, a.seed),
        GenKindArg::F10 => GenSpec::fseries(a.n, a.m, 10, a.amp, a.seed),
    };
    let data = generate(&spec)?;
    save_dataset_base(&data, &a.out)?;
    if a.queries > 0 {
        let queries = gen_query_dataset(&spec, a.queries)?;
        save_dataset_base(&queries, &with_suffix(&a.out, ".queries"))?;
    }
    log(format!(
        "event=gen kind={:?} n={} m={} seed={} queries={} out={}",
        a.kind,
        a.n,
        a.m,
        a.seed,
        a.queries,
        a.out.display()
    )
    .to_lowercase());
    Ok(())
}

fn summarize(a: SummarizeArgs) -> Result<(), CliError> {
    if a.kind != SummaryArg::Dea && a.embedding.is_some() {
        return Err(CliError::Usage("--embedding only applies to --kind dea".into()));
    }
    if a.kind == SummaryArg::Dea && a.embedding.is_none() {
        return Err(CliError::Usage("--kind dea needs --embedding".into()));
    }
    let data = load_series(&a.dataset)?;
    let sums = summaries(a.kind, &data, a.l, a.embedding.as_deref())?;
    let sax = SaxFile {
        words: sums.sax_words(a.bits)?,
        l: sums.l(),
        bits: a.bits,
        kind: sums.kind(),
        source_m: data.series_len(),
    };
    save_sax(&sax, &a.out)?;
    if sums.kind() == SummaryKind::Dea {
        save_dea(&sums.to_dea_file()?, &a.out)?;
    }
    log(format!(
        "event=summarize kind={} n={} l={} bits={} out={}",
        summary_name(a.kind),
        data.len(),
        sums.l(),
        a.bits,
        a.out.display()
    ));
    Ok(())
}

fn sample(a: SampleArgs) -> Result<(), CliError> {
    let (set, n) = match a.strategy {
        StrategyArg::Seasam => match (&a.sax, &a.dataset) {
            (Some(sax), _) => {
                let words = load_sax(sax)?.words;
                (seasam_from_words(&words, a.n_prime)?, words.len())
            }
            (None, Some(path)) => {
                let data = load_series(path)?;
                (seasam(&data, a.n_prime, a.l, a.bits)?, data.len())
            }
            (None, None) => return Err(CliError::Usage("seasam needs --dataset or --sax".into())),
        },
        StrategyArg::Uniform => {
            let n = match (&a.sax, &a.dataset) {
                (Some(sax), _) => load_sax(sax)?.words.len(),
                (None, Some(path)) => load_dataset_base(path)?.len(),
                (None, None) => return Err(CliError::Usage("uniform needs --dataset or --sax".into())),
            };
            (uniform_sample(n, a.n_prime, a.seed)?, n)
        }
    };
    save_sample(&set, n, &a.out)?;
    log(format!(
        "event=sample strategy={} n_prime={} n={n} out={}",
        set.strategy(),
        set.len(),
        a.out.display()
    ));
    Ok(())
}

fn build_tree(sax_path: &Path, leaf_size: usize) -> Result<IsaxTree, CliError> {
    let sax = load_sax(sax_path)?;
    Ok(IsaxTree::build(sax.words, leaf_size, sax.kind, sax.source_m)?)
}

fn index(a: IndexArgs, out: Out) -> Result<(), CliError> {
    let tree = build_tree(&a.sax, a.leaf_size)?;
    writeln!(out, "{}", tree.stats())?;
    Ok(())
}

fn query_summaries(a: &QueryArgs, tree: &IsaxTree, queries: &Dataset) -> Result<Summaries, CliError> {
    if let Some(path) = &a.query_embedding {
        if tree.kind() != SummaryKind::Dea {
            return Err(CliError::Usage("--query-embedding needs a DEA tree".into()));
        }
        return load_embedding(path, queries);
    }
    let choice = match (a.query_summary, tree.kind()) {
        (Some(choice), _) => choice,
        (None, SummaryKind::Paa) => QuerySummaryArg::Paa,
        (None, SummaryKind::Dea) => {
            return Err(CliError::Usage(
                "DEA tree: pass --query-embedding or --query-summary dft-dea".into(),
            ))
        }
    };
    let s = match choice {
        QuerySummaryArg::Paa => Summarizer::paa(tree.segments()),
        QuerySummaryArg::DftDea => Summarizer::dft_dea(queries.series_len(), tree.segments())?,
    };
    if s.kind() != tree.kind() {
        return Err(CliError::Usage(format!(
            "query summary {:?} does not match a {} tree",
            choice,
            tree.kind()
        )));
    }
    Ok(s.summarize_dataset(queries)?)
}

fn query(a: QueryArgs, out: Out) -> Result<(), CliError> {
    if a.budgets.is_empty() || a.budgets.contains(&0) {
        return Err(CliError::Usage("--budgets must be positive".into()));
    }
    let data = load_series(&a.dataset)?;
    let queries = load_series(&a.queries)?;
    let tree = build_tree(&a.sax, a.leaf_size)?;
    if tree.len() != data.len() {
        return Err(Error::SizeMismatch {
            what: format!("word count of {}", a.sax.display()),
            expected: data.len() as u64,
            actual: tree.len() as u64,
        }
        .into());
    }
    let qs = query_summaries(&a, &tree, &queries)?;
    let mut sums = vec![0.0; a.budgets.len()];
    for q in 0..queries.len() {
        let exact = exact_query_bruteforce(&data, queries.series(q))?.1;
        for (b, &budget) in a.budgets.iter().enumerate() {
            let report = approx_query(&tree, &data, q, queries.series(q), qs.row(q), budget)?.with_exact(exact);
            sums[b] += report.tightness().expect("exact distance attached");
            if !a.summary_only {
                writeln!(out, "{report}")?;
            }
        }
    }
    for (b, &budget) in a.budgets.iter().enumerate() {
        writeln!(
            out,
            "mean budget={budget} tightness={:.6} queries={}",
            sums[b] / queries.len() as f64,
            queries.len()
        )?;
    }
    Ok(())
}

fn eval(a: EvalArgs, out: Out) -> Result<(), CliError> {
    let reports = match a.metric {
        MetricArg::Chi => eval_chi(&a)?,
        MetricArg::AvgDiff => {
            let data = load_series(required(&a.dataset, "dataset")?)?;
            let s = summaries(a.summary, &data, a.l, a.embedding.as_deref())?;
            let sample = seasam(&data, a.n_prime.min(data.len()), a.l, a.bits)?;
            let pairs = sample_pairs(&sample, a.seed)?;
            let v = avg_distance_diff(&data, &s, &pairs)?;
            vec![MetricReport::new("avg_distance_diff", v, pairs.len())
                .with("summary", summary_name(a.summary))
                .with("l", s.l())
                .with("m", data.series_len())]
        }
        MetricArg::Rms => {
            let data = load_dataset_base(required(&a.dataset, "dataset")?)?;
            let recon = load_dataset_base(required(&a.reconstruction, "reconstruction")?)?;
            let v = reconstruction_rms(&data, &recon)?;
            vec![MetricReport::new("reconstruction_rms", v, data.len()).with("m", data.series_len())]
        }
        MetricArg::NnCoverage => {
            let (data, queries, base_s, query_s) = paired_summaries(&a)?;
            let cov = nn_coverage(&data, &base_s, &queries, &query_s, &a.ks)?;
            a.ks.iter()
                .zip(cov)
                .map(|(&k, v)| {
                    MetricReport::new("nn_coverage", v, queries.len())
                        .with("summary", summary_name(a.summary))
                        .with("k", k)
                        .with("l", base_s.l())
                })
                .collect()
        }
        MetricArg::IdealTightness => {
            let (data, queries, base_s, query_s) = paired_summaries(&a)?;
            let curve = ideal_tightness_curve(&data, &queries, &base_s, &query_s, &a.budgets)?;
            a.budgets
                .iter()
                .zip(curve)
                .map(|(&k, v)| {
                    MetricReport::new("ideal_tightness", v, queries.len())
                        .with("summary", summary_name(a.summary))
                        .with("budget", k)
                        .with("l", base_s.l())
                })
                .collect()
        }
        MetricArg::LeafCoverage => {
            let data = load_series(required(&a.dataset, "dataset")?)?;
            let base_s = summaries(a.summary, &data, a.l, a.embedding.as_deref())?;
            let tree = IsaxTree::build(base_s.sax_words(a.bits)?, a.leaf_size, base_s.kind(), data.series_len())?;
            let seeds: Vec<u64> = (a.seed..a.seed + a.seeds).collect();
            let leaves = tree.stats().leaves;
            leaf_coverage_experiment(&tree, &a.sample_sizes, &seeds)?
                .into_iter()
                .map(|row| {
                    MetricReport::new("leaf_coverage", row.coverage, row.runs)
                        .with("strategy", row.strategy)
                        .with("n_prime", row.n_prime)
                        .with("leaves", leaves)
                        .with("leaf_size", a.leaf_size)
                })
                .collect()
        }
        MetricArg::Compactness => eval_compactness(&a)?,
    };
    for r in &reports {
        writeln!(out, "{r}")?;
    }
    if let Some(path) = &a.csv {
        let fresh = !path.exists();
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        if fresh {
            writeln!(file, "{}", MetricReport::csv_header())?;
        }
        for r in &reports {
            writeln!(file, "{}", r.to_csv())?;
        }
    }
    Ok(())
}

fn paired_summaries(a: &EvalArgs) -> Result<(Dataset, Dataset, Summaries, Summaries), CliError> {
    let data = load_series(required(&a.dataset, "dataset")?)?;
    let queries = load_series(required(&a.queries, "queries")?)?;
    let base_s = summaries(a.summary, &data, a.l, a.embedding.as_deref())?;
    let query_s = summaries(a.summary, &queries, a.l, a.query_embedding.as_deref())?;
    Ok((data, queries, base_s, query_s))
}

fn eval_chi(a: &EvalArgs) -> Result<Vec<MetricReport>, CliError> {
    if a.pairs < 2 {
        return Err(CliError::Usage("--pairs must be >= 2".into()));
    }
    let mut reports = Vec::new();
    for &m in &a.m {
        if m == 0 {
            return Err(CliError::Usage("--m values must be >= 1".into()));
        }
        let draws = pair_distances(m, a.pairs, a.seed);
        for scale in [ChiScale::Unit, ChiScale::Sos { reference: 256 }, ChiScale::PerPoint] {
            let exact = chi_stats_analytic(m, scale);
            let mc = ChiEstimate::from_distances(&draws, m, scale);
            let (zm, zv) = mc.z_scores(&exact);
            reports.push(
                MetricReport::new("chi_mean", mc.stats.mean, a.pairs)
                    .with("m", m)
                    .with("scale", scale)
                    .with("analytic", format!("{:.6}", exact.mean))
                    .with("z", format!("{zm:.2}")),
            );
            reports.push(
                MetricReport::new("chi_var", mc.stats.variance, a.pairs)
                    .with("m", m)
                    .with("scale", scale)
                    .with("analytic", format!("{:.6}", exact.variance))
                    .with("z", format!("{zv:.2}")),
            );
        }
    }
    Ok(reports)
}

fn eval_compactness(a: &EvalArgs) -> Result<Vec<MetricReport>, CliError> {
    let (data, queries, base_s, query_s) = paired_summaries(a)?;
    let tree = IsaxTree::build(base_s.sax_words(a.bits)?, a.leaf_size, base_s.kind(), data.series_len())?;
    let mut reports = Vec::new();
    for &budget in &a.budgets {
        let (mut total, mut counted) = (0.0, 0);
        for q in 0..queries.len() {
            let r = approx_query(&tree, &data, q, queries.series(q), query_s.row(q), budget)?;
            if let Some(c) = leaf_compactness(&tree, &data, &r.visited_leaves) {
                total += c;
                counted += 1;
            }
        }
        if counted > 0 {
            reports.push(
                MetricReport::new("leaf_compactness", total / counted as f64, counted)
                    .with("summary", summary_name(a.summary))
                    .with("budget", budget)
                    .with("leaf_size", a.leaf_size),
            );
        }
    }
    Ok(reports)
}

fn stats(a: StatsArgs, out: Out) -> Result<(), CliError> {
    if a.dataset.is_none() && a.dea.is_none() && a.sax.is_none() && a.sample.is_none() {
        return Err(CliError::Usage("give at least one of --dataset, --dea, --sax, --sample".into()));
    }
    if let Some(path) = &a.dataset {
        let d = load_dataset_base(path)?;
        let values = d.as_slice();
        let n = values.len() as f64;
        let mean = values.iter().map(|&v| f64::from(v)).sum::<f64>() / n;
        let var = values.iter().map(|&v| (f64::from(v) - mean).powi(2)).sum::<f64>() / n;
        let (min, max) = values
            .iter()
            .fold((f32::INFINITY, f32::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        writeln!(
            out,
            "dataset n={} m={} znormalized={} seed={} mean={mean:.6} std={:.6} min={min:.6} max={max:.6}",
            d.len(),
            d.series_len(),
            u8::from(d.is_znormalized()),
            d.seed().map_or_else(|| "none".into(), |s| s.to_string()),
            var.sqrt()
        )?;
    }
    if let Some(path) = &a.dea {
        let dea = load_dea(path)?;
        let mean_sos = dea
            .vectors
            .iter()
            .map(|r| r.iter().map(|&v| f64::from(v).powi(2)).sum::<f64>())
            .sum::<f64>()
            / dea.vectors.len() as f64;
        writeln!(
            out,
            "dea n={} l={} source_m={} scaled={} mean_sos={mean_sos:.6}",
            dea.vectors.len(),
            dea.vectors.series_len(),
            dea.source_m,
            u8::from(dea.scaled)
        )?;
    }
    if let Some(path) = &a.sax {
        let sax = load_sax(path)?;
        let distinct: HashSet<&[u8]> = sax.words.iter().map(|w| w.symbols()).collect();
        writeln!(
            out,
            "sax n={} l={} bits={} kind={} source_m={} distinct_words={}",
            sax.words.len(),
            sax.l,
            sax.bits,
            sax.kind,
            sax.source_m,
            distinct.len()
        )?;
        let tree = IsaxTree::build(sax.words, a.leaf_size, sax.kind, sax.source_m)?;
        writeln!(out, "{}", tree.stats())?;
    }
    if let Some(path) = &a.sample {
        let s = load_sample(path)?;
        writeln!(
            out,
            "sample n_prime={} strategy={} seed={}",
            s.len(),
            s.strategy(),
            s.seed().map_or_else(|| "none".into(), |v| v.to_string())
        )?;
    }
    Ok(())
}
