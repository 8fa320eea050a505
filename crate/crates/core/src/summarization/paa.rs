use crate::error::{Error, Result};
use crate::series::squared_distance;

/// Piecewise Aggregate Approximation of a length-`m` series into `l` segment means.
#[derive(Debug, Clone, PartialEq)]
pub struct PaaVector {
    pub values: Vec<f64>,
    pub source_length: usize,
}

impl PaaVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Segment boundaries for `m` points in `l` segments. When `l` does not
/// divide `m`, the first `m % l` segments carry one extra point.
pub fn segments(m: usize, l: usize) -> impl Iterator<Item = std::ops::Range<usize>> {
    let base = m / l;
    let long = m % l;
    let mut start = 0;
    (0..l).map(move |j| {
        let len = base + usize::from(j < long);
        let r = start..start + len;
        start += len;
        r
    })
}

pub fn paa<T: Copy + Into<f64>>(series: &[T], l: usize) -> Result<PaaVector> {
    let m = series.len();
    if l == 0 || l > m {
        return Err(Error::BadSegmentCount { l, m });
    }
    let values = segments(m, l)
        .map(|seg| {
            let len = seg.len() as f64;
            series[seg].iter().map(|&v| v.into()).sum::<f64>() / len
        })
        .collect();
    Ok(PaaVector {
        values,
        source_length: m,
    })
}

/// `√(m/l)` scale that relates summary-space and series-space distances.
#[inline]
pub fn distance_scale(m: usize, l: usize) -> f64 {
    (m as f64 / l as f64).sqrt()
}

/// `√(m/l) · ‖a − b‖`, a lower bound of the distance between the source series.
pub fn paa_distance(a: &PaaVector, b: &PaaVector) -> Result<f64> {
    if a.len() != b.len() || a.source_length != b.source_length {
        return Err(Error::ShapeMismatch(format!(
            "PAA ({}, m={}) vs ({}, m={})",
            a.len(),
            a.source_length,
            b.len(),
            b.source_length
        )));
    }
    Ok(distance_scale(a.source_length, a.len()) * squared_distance(&a.values, &b.values).sqrt())
}

/// Step-function reconstruction of the source series.
pub fn paa_reconstruct(paa: &PaaVector) -> Vec<f64> {
    let mut out = vec![0.0; paa.source_length];
    for (seg, &v) in segments(paa.source_length, paa.len()).zip(&paa.values) {
        out[seg].fill(v);
    }
    out
}
