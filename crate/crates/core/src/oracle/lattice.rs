use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite set of sites in `R^d` with Euclidean metric and unit minimum spacing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    dim: usize,
    positions: Vec<Vec<f64>>,
}

impl Lattice {
    /// Open chain `0, 1, ..., n-1`.
    pub fn chain(n: usize) -> Self {
        Self {
            dim: 1,
            positions: (0..n).map(|i| vec![i as f64]).collect(),
        }
    }

    /// `side x side` square patch, site `i = x + side * y`.
    pub fn square(side: usize) -> Self {
        let mut positions = Vec::with_capacity(side * side);
        for y in 0..side {
            for x in 0..side {
                positions.push(vec![x as f64, y as f64]);
            }
        }
        Self { dim: 2, positions }
    }

    /// Arbitrary positions, rescaled so the smallest pairwise distance is 1.
    pub fn from_positions(positions: Vec<Vec<f64>>) -> Result<Self> {
        let dim = positions.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::InvalidParameter("lattice needs at least one site".into()));
        }
        if positions.iter().any(|p| p.len() != dim || p.iter().any(|c| !c.is_finite())) {
            return Err(Error::InvalidParameter(
                "site coordinates must be finite with a common dimension".into(),
            ));
        }
        let mut lattice = Self { dim, positions };
        let n = lattice.len();
        let mut spacing = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                spacing = spacing.min(lattice.distance(i, j));
            }
        }
        if spacing == 0.0 {
            return Err(Error::InvalidParameter("two sites share a position".into()));
        }
        if spacing.is_finite() {
            for p in &mut lattice.positions {
                p.iter_mut().for_each(|c| *c /= spacing);
            }
        }
        Ok(lattice)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, i: usize) -> &[f64] {
        &self.positions[i]
    }

    pub fn check_site(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::SiteOutOfRange {
                index: i,
                n_sites: self.len(),
            })
        }
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.positions[i]
            .iter()
            .zip(&self.positions[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// `min_{x in a, y in b} d(x, y)`.
    pub fn set_distance(&self, a: &[usize], b: &[usize]) -> f64 {
        let mut best = f64::INFINITY;
        for &x in a {
            for &y in b {
                best = best.min(self.distance(x, y));
            }
        }
        best
    }

    /// Largest pairwise distance within `sites` (0 for one site).
    pub fn diameter_of(&self, sites: &[usize]) -> f64 {
        let mut best = 0.0f64;
        for (k, &x) in sites.iter().enumerate() {
            for &y in &sites[k + 1..] {
                best = best.max(self.distance(x, y));
            }
        }
        best
    }

    pub fn diameter(&self) -> f64 {
        let all: Vec<usize> = (0..self.len()).collect();
        self.diameter_of(&all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_square_metrics() {
        let c = Lattice::chain(5);
        assert_eq!(c.distance(0, 4), 4.0);
        assert_eq!(c.diameter(), 4.0);
        let s = Lattice::square(3);
        assert!((s.distance(0, 8) - 8f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.set_distance(&[0, 1], &[5, 8]), 2f64.sqrt());
    }

    #[test]
    fn positions_are_normalized() {
        let l = Lattice::from_positions(vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.0, 2.0]]).unwrap();
        assert!((l.distance(0, 1) - 1.0).abs() < 1e-15);
        assert!((l.distance(0, 2) - 4.0).abs() < 1e-15);
        assert!(Lattice::from_positions(vec![vec![1.0], vec![1.0]]).is_err());
    }
}
