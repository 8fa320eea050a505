use super::paa::distance_scale;
use crate::error::{Error, Result};
use crate::series::{mean_std, squared_distance, CONSTANT_STDDEV};

/// An `l`-dimensional embedding of a length-`m` series.
///
/// A scaled DEA has mean 0 and population standard deviation `√(m/l)`, so its
/// sum of squares equals `m`, the sum of squares of a z-normalized series.
#[derive(Debug, Clone, PartialEq)]
pub struct DeaVector {
    pub values: Vec<f64>,
    pub source_length: usize,
    pub scaled: bool,
}

impl DeaVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// Values in unit-variance (PAA-comparable) units, ready for SAX.
    pub fn unit_values(&self) -> Vec<f64> {
        if !self.scaled {
            return self.values.clone();
        }
        let s = distance_scale(self.source_length, self.len());
        self.values.iter().map(|v| v / s).collect()
    }

    /// Euclidean distance between two DEAs of the same shape.
    pub fn distance(&self, other: &DeaVector) -> Result<f64> {
        if self.len() != other.len() || self.source_length != other.source_length {
            return Err(Error::ShapeMismatch(format!(
                "DEA ({}, m={}) vs ({}, m={})",
                self.len(),
                self.source_length,
                other.len(),
                other.source_length
            )));
        }
        Ok(squared_distance(&self.values, &other.values).sqrt())
    }
}

/// Z-normalizes a raw embedding and multiplies it by `√(m/l)`.
pub fn dea_scale(embedding: &[f64], m: usize) -> Result<DeaVector> {
    let l = embedding.len();
    if l == 0 {
        return Err(Error::DegenerateEmbedding);
    }
    let (mean, std) = mean_std(embedding);
    if std.is_nan() || std <= CONSTANT_STDDEV {
        return Err(Error::DegenerateEmbedding);
    }
    let factor = distance_scale(m, l) / std;
    Ok(DeaVector {
        values: embedding.iter().map(|v| (v - mean) * factor).collect(),
        source_length: m,
        scaled: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn dea_scale_examples() {
        let e = [1.0, -1.0, 1.0, -1.0];
        let d = dea_scale(&e, 4).unwrap();
        assert_eq!(d.values, e.to_vec());

        let d = dea_scale(&[1.0, -1.0], 16).unwrap();
        let r8 = 8f64.sqrt();
        assert!((d.values[0] - r8).abs() < 1e-12 && (d.values[1] + r8).abs() < 1e-12);
        assert!((d.sum_of_squares() - 16.0).abs() < 1e-12);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let raw: Vec<f64> = (0..16).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let d = dea_scale(&raw, 256).unwrap();
        assert!((d.sum_of_squares() - 256.0).abs() / 256.0 < 1e-5);
        let (mean, std) = mean_std(&d.values);
        assert!(mean.abs() < 1e-12);
        assert!((std - 4.0).abs() < 1e-5);
    }

    #[test]
    fn degenerate_embedding() {
        assert!(matches!(
            dea_scale(&[0.3; 16], 256),
            Err(Error::DegenerateEmbedding)
        ));
        assert!(matches!(dea_scale(&[], 256), Err(Error::DegenerateEmbedding)));
    }

    #[test]
    fn scaling_is_idempotent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let raw: Vec<f64> = (0..16).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let once = dea_scale(&raw, 128).unwrap();
        let twice = dea_scale(&once.values, 128).unwrap();
        for (a, b) in once.values.iter().zip(&twice.values) {
            assert!((a - b).abs() < 1e-12);
        }
        let unit = once.unit_values();
        assert!((mean_std(&unit).1 - 1.0).abs() < 1e-12);
    }
}
