//! Pauli strings on qubit registers. Basis state `b` has site `i` in state
//! `(b >> i) & 1`.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidParameter(format!(
                "operator '{other}' is not one of I, X, Y, Z"
            ))),
        }
    }
}

pub fn parse_ops(ops: &str) -> Result<Vec<Pauli>> {
    ops.chars().map(Pauli::from_char).collect()
}

/// Bit-mask form of a Pauli string: `P |b> = phase(b) |b ^ flip>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Masks {
    pub flip: usize,
    pub sign: usize,
    /// Number of `Y` factors mod 4 (each contributes a factor `i`).
    pub y_count: u32,
}

impl Masks {
    pub fn new(sites: &[usize], ops: &[Pauli]) -> Self {
        let mut m = Masks {
            flip: 0,
            sign: 0,
            y_count: 0,
        };
        for (&s, &p) in sites.iter().zip(ops) {
            let bit = 1usize << s;
            match p {
                Pauli::I => {}
                Pauli::X => m.flip |= bit,
                Pauli::Z => m.sign |= bit,
                Pauli::Y => {
                    m.flip |= bit;
                    m.sign |= bit;
                    m.y_count += 1;
                }
            }
        }
        m.y_count %= 4;
        m
    }

    /// Phase `<b ^ flip| P |b>`.
    pub fn phase(&self, b: usize) -> C64 {
        let base = match self.y_count {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
        if (b & self.sign).count_ones() % 2 == 1 {
            -base
        } else {
            base
        }
    }

    /// Real when the string has an even number of `Y`s.
    pub fn is_real(&self) -> bool {
        self.y_count.is_multiple_of(2)
    }

    /// Adds `coeff * P` to `m`.
    pub fn accumulate(&self, coeff: f64, m: &mut DMatrix<C64>) {
        for b in 0..m.ncols() {
            m[(b ^ self.flip, b)] += self.phase(b) * coeff;
        }
    }

    pub fn to_matrix(&self, n_qubits: usize) -> DMatrix<C64> {
        let dim = 1usize << n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        self.accumulate(1.0, &mut m);
        m
    }

    /// `P M P` via index permutation.
    pub fn conjugate(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        let dim = m.nrows();
        let phases: Vec<C64> = (0..dim).map(|b| self.phase(b)).collect();
        DMatrix::from_fn(dim, dim, |a, b| {
            phases[a ^ self.flip] * m[(a ^ self.flip, b ^ self.flip)] * phases[b]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn single_site_matrices() {
        let y = Masks::new(&[0], &[Pauli::Y]).to_matrix(1);
        assert_eq!(y[(0, 1)], c(0.0, -1.0));
        assert_eq!(y[(1, 0)], c(0.0, 1.0));
        let z = Masks::new(&[0], &[Pauli::Z]).to_matrix(1);
        assert_eq!((z[(0, 0)], z[(1, 1)]), (c(1.0, 0.0), c(-1.0, 0.0)));
    }

    #[test]
    fn conjugation_matches_products() {
        let p = Masks::new(&[0, 2], &[Pauli::Y, Pauli::X]);
        let pm = p.to_matrix(3);
        let m = DMatrix::from_fn(8, 8, |i, j| c((i * 3 + j) as f64, (i as f64) - (j as f64) * 0.5));
        let direct = &pm * &m * &pm;
        assert!((p.conjugate(&m) - direct).norm() < 1e-12);
    }

    #[test]
    fn xy_equals_iz() {
        let x = Masks::new(&[0], &[Pauli::X]).to_matrix(1);
        let y = Masks::new(&[0], &[Pauli::Y]).to_matrix(1);
        let z = Masks::new(&[0], &[Pauli::Z]).to_matrix(1);
        assert!((&x * &y - z * c(0.0, 1.0)).norm() < 1e-15);
    }
}
