use proptest::prelude::*;

use seaidx::series::{euclidean, znormalize_values};
use seaidx::summarization::{
    dea_scale, isax_mindist, paa, paa_distance, reduce_cardinality, sax_from_paa,
};

fn series(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0f64..100.0, m)
}

/// Lower bounding is only claimed when l divides m; uneven segments keep
/// the √(m/l) scale as an approximation.
fn pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, usize)> {
    (1usize..=32, 1usize..=12)
        .prop_filter("m >= 2", |(l, k)| l * k >= 2)
        .prop_flat_map(|(l, k)| (series(l * k), series(l * k), Just(l)))
}

proptest! {
    #[test]
    fn paa_distance_lower_bounds((a, b, l) in pair()) {
        let d = euclidean(&a, &b).unwrap();
        let lb = paa_distance(&paa(&a, l).unwrap(), &paa(&b, l).unwrap()).unwrap();
        prop_assert!(lb <= d * (1.0 + 1e-12) + 1e-9, "{lb} > {d}");
    }

    #[test]
    fn mindist_lower_bounds_at_every_cardinality(
        (a, b, l) in pair(),
        bits in 1u8..=8,
        reduce in prop::collection::vec(0u8..=8, 32),
    ) {
        let (Ok(a), Ok(b)) = (znormalize_values(&a), znormalize_values(&b)) else {
            return Ok(());
        };
        let m = a.len();
        let d = euclidean(&a, &b).unwrap();
        let pa = paa(&a, l).unwrap();
        let word = sax_from_paa(&paa(&b, l).unwrap(), bits).unwrap();
        let full = isax_mindist(&pa.values, &reduce_cardinality(&word, &vec![bits; l]).unwrap(), m);
        let per: Vec<u8> = reduce[..l].iter().map(|&r| r.min(bits)).collect();
        let coarse = isax_mindist(&pa.values, &reduce_cardinality(&word, &per).unwrap(), m);
        prop_assert!(full <= d + 1e-9);
        prop_assert!(coarse <= full + 1e-12);
    }

    #[test]
    fn dea_scale_preserves_sos(raw in prop::collection::vec(-1e3f64..1e3, 2..64), m in 2usize..512) {
        if let Ok(v) = dea_scale(&raw, m) {
            prop_assert!((v.sum_of_squares() - m as f64).abs() <= 1e-9 * m as f64);
            let again = dea_scale(&v.values, m).unwrap();
            for (x, y) in again.values.iter().zip(&v.values) {
                prop_assert!((x - y).abs() <= 1e-9 * (1.0 + y.abs()));
            }
        }
    }
}

proptest! {
    #[test]
    fn truncated_dft_lower_bounds(
        (a, b) in (1usize..=64).prop_flat_map(|h| (series(2 * h), series(2 * h))),
        keep in 1usize..=32,
    ) {
        let m = a.len();
        let l = (2 * keep).min(m);
        let da = seaidx::summarization::dft_summarize(&a, l).unwrap();
        let db = seaidx::summarization::dft_summarize(&b, l).unwrap();
        let d = euclidean(&a, &b).unwrap();
        prop_assert!(euclidean(&da, &db).unwrap() <= d * (1.0 + 1e-9) + 1e-9);
    }
}
