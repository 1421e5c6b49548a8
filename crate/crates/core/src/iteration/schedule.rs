use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cutoff exponents `sigma_1 >= sigma_2 >= ...`, each in `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaSchedule(Vec<f64>);

impl SigmaSchedule {
    pub fn new(sigmas: Vec<f64>) -> Result<Self> {
        for (i, &s) in sigmas.iter().enumerate() {
            if !(s > 0.0 && s < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "sigma[{i}] = {s} outside (0, 1)"
                )));
            }
            if i > 0 && s > sigmas[i - 1] {
                return Err(Error::ScheduleNotMonotone {
                    index: i,
                    prev: sigmas[i - 1],
                    next: s,
                });
            }
        }
        Ok(Self(sigmas))
    }

    pub fn uniform(sigma: f64, len: usize) -> Result<Self> {
        Self::new(vec![sigma; len])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sigma_n` with the 1-based indexing of the recursion.
    pub fn sigma(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.0.get(i)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_non_increasing() {
        let s = SigmaSchedule::new(vec![0.9, 0.9, 0.8]).unwrap();
        assert_eq!(s.sigma(1), Some(0.9));
        assert_eq!(s.sigma(3), Some(0.8));
        assert_eq!(s.sigma(0), None);
        assert_eq!(s.sigma(4), None);
    }

    #[test]
    fn rejects_increase_and_out_of_range() {
        assert!(matches!(
            SigmaSchedule::new(vec![0.8, 0.9]),
            Err(Error::ScheduleNotMonotone { index: 1, .. })
        ));
        assert!(SigmaSchedule::new(vec![1.0]).is_err());
        assert!(SigmaSchedule::uniform(0.0, 2).is_err());
    }
}
