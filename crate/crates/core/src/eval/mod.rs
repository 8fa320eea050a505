//! Quality measures for summaries and approximate answers, and the
//! distance-distribution statistics behind SoS-preserving scaling.

mod chi;
mod metrics;

pub use chi::{
    chi_stats_analytic, chi_stats_montecarlo, gamma_ratio, pair_distances, ChiEstimate, ChiScale,
    ChiStats,
};
pub use metrics::{
    avg_distance_diff, avg_distance_diff_with, coverage_from_distances, knn, leaf_coverage,
    leaf_coverage_experiment, nn_coverage, reconstruction_rms, sample_pairs, CoverageRow,
    MetricReport,
};
