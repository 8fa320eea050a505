//! Series and dataset types, z-normalization and Euclidean distance.
//!
//! Datasets keep their values as `f32`, the on-disk representation, so a
//! save/load round trip is bit-exact. Every reduction accumulates in `f64`.

use crate::error::{Error, Result};

/// Population standard deviation below which a series counts as constant.
pub const CONSTANT_STDDEV: f64 = 1e-12;

/// A single data series of length `m >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSeries {
    values: Vec<f64>,
}

impl DataSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a series needs at least 2 points, got {}",
                values.len()
            )));
        }
        Ok(Self { values })
    }

    pub fn from_f32(values: &[f32]) -> Result<Self> {
        Self::new(values.iter().map(|&v| f64::from(v)).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Mean and population standard deviation.
pub fn mean_std<T: Copy + Into<f64>>(values: &[T]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().map(|&v| v.into()).sum::<f64>() / n;
    let var = values
        .iter()
        .map(|&v| {
            let d = v.into() - mean;
            d * d
        })
        .sum::<f64>()
        / n;
    (mean, var.sqrt())
}

/// Z-normalizes `values` (population standard deviation).
pub fn znormalize_values<T: Copy + Into<f64>>(values: &[T]) -> Result<Vec<f64>> {
    let (mean, std) = mean_std(values);
    if std.is_nan() || std < CONSTANT_STDDEV {
        return Err(Error::ConstantSeries);
    }
    Ok(values.iter().map(|&v| (v.into() - mean) / std).collect())
}

/// Shifts and scales a series to mean 0 and population standard deviation 1.
pub fn znormalize(series: &DataSeries) -> Result<DataSeries> {
    Ok(DataSeries {
        values: znormalize_values(&series.values)?,
    })
}

/// Squared Euclidean distance. Callers guarantee equal lengths.
#[inline]
pub fn squared_distance<A, B>(a: &[A], b: &[B]) -> f64
where
    A: Copy + Into<f64>,
    B: Copy + Into<f64>,
{
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x.into() - y.into();
            d * d
        })
        .sum()
}

/// Euclidean distance between two equal-length sequences.
pub fn euclidean<A, B>(a: &[A], b: &[B]) -> Result<f64>
where
    A: Copy + Into<f64>,
    B: Copy + Into<f64>,
{
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(squared_distance(a, b).sqrt())
}

/// A collection of `n` series of identical length `m`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    data: Vec<f32>,
    n: usize,
    m: usize,
    znormalized: bool,
    seed: Option<u64>,
}

impl Dataset {
    pub fn new(data: Vec<f32>, n: usize, m: usize, znormalized: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("a dataset needs n >= 1".into()));
        }
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "series length must be >= 2, got {m}"
            )));
        }
        if data.len() != n * m {
            return Err(Error::SizeMismatch {
                what: "dataset values".into(),
                expected: (n * m) as u64,
                actual: data.len() as u64,
            });
        }
        Ok(Self {
            data,
            n,
            m,
            znormalized,
            seed: None,
        })
    }

    /// Builds a dataset from rows, narrowing each value to `f32`.
    pub fn from_rows<I, R>(rows: I, znormalized: bool) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[f64]>,
    {
        let mut data = Vec::new();
        let mut n = 0;
        let mut m = None;
        for row in rows {
            let row = row.as_ref();
            match m {
                None => m = Some(row.len()),
                Some(len) if len != row.len() => {
                    return Err(Error::LengthMismatch {
                        left: len,
                        right: row.len(),
                    })
                }
                _ => {}
            }
            data.extend(row.iter().map(|&v| v as f32));
            n += 1;
        }
        Self::new(data, n, m.unwrap_or(0), znormalized)
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    /// Number of series.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Length of every series.
    pub fn series_len(&self) -> usize {
        self.m
    }

    pub fn is_znormalized(&self) -> bool {
        self.znormalized
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn series(&self, i: usize) -> &[f32] {
        &self.data[i * self.m..(i + 1) * self.m]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, f32> {
        self.data.chunks_exact(self.m)
    }

    pub fn as_slice(&self) -> &[f32] {
        &self.data
    }

    /// Z-normalizes every series.
    pub fn znormalized(&self) -> Result<Self> {
        let mut data = Vec::with_capacity(self.data.len());
        for row in self.iter() {
            data.extend(znormalize_values(row)?.into_iter().map(|v| v as f32));
        }
        Ok(Self {
            data,
            znormalized: true,
            ..*self
        })
    }

    /// The series at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(indices.len() * self.m);
        for &i in indices {
            if i >= self.n {
                return Err(Error::InvalidArgument(format!(
                    "series index {i} out of range for n = {}",
                    self.n
                )));
            }
            data.extend_from_slice(self.series(i));
        }
        Ok(Self::new(data, indices.len(), self.m, self.znormalized)?.with_seed(self.seed))
    }
}
