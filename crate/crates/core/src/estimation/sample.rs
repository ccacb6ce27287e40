use serde::{Deserialize, Serialize};

use crate::error::{NtleError, Result};
use crate::rng::mix64;

/// Positive observations stored as order statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Smallest sample that identifies three parameters.
    pub const MIN_SIZE: usize = 3;

    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.len() < Self::MIN_SIZE {
            return Err(NtleError::domain(format!(
                "a sample needs at least {} observations, got {}",
                Self::MIN_SIZE,
                values.len()
            )));
        }
        if let Some((i, bad)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(NtleError::domain(format!(
                "observation {} is {bad}; all observations must be positive and finite",
                i + 1
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn median(&self) -> f64 {
        let n = self.values.len();
        if n % 2 == 1 {
            self.values[n / 2]
        } else {
            0.5 * (self.values[n / 2 - 1] + self.values[n / 2])
        }
    }

    /// `(1/n) Σ yᵢ^k`
    pub fn raw_moment(&self, k: i32) -> f64 {
        self.values.iter().map(|y| y.powi(k)).sum::<f64>() / self.values.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.raw_moment(1)
    }

    /// Order-sensitive 64-bit fingerprint of the exact bit patterns.
    pub fn checksum(&self) -> u64 {
        self.values
            .iter()
            .fold(mix64(self.values.len() as u64), |acc, v| mix64(acc ^ v.to_bits()))
    }
}

impl TryFrom<Vec<f64>> for Sample {
    type Error = NtleError;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Sample::new(v)
    }
}

impl From<Sample> for Vec<f64> {
    fn from(s: Sample) -> Self {
        s.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_validates() {
        let s = Sample::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
        assert_eq!(s.median(), 2.0);
        assert!(Sample::new(vec![1.0, 2.0]).is_err());
        assert!(Sample::new(vec![1.0, -2.0, 3.0]).is_err());
        assert!(Sample::new(vec![1.0, 0.0, 3.0]).is_err());
        assert!(Sample::new(vec![1.0, f64::NAN, 3.0]).is_err());
    }

    #[test]
    fn checksum_tracks_content() {
        let a = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
        let b = Sample::new(vec![3.0, 2.0, 1.0]).unwrap();
        let c = Sample::new(vec![1.0, 2.0, 3.0000001]).unwrap();
        assert_eq!(a.checksum(), b.checksum());
        assert_ne!(a.checksum(), c.checksum());
    }
}
