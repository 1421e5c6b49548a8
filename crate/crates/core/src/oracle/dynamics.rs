//! Exact Heisenberg evolution `tau_t(A) = e^{iHt} A e^{-iHt}` from one
//! spectral decomposition of `H`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::hamiltonian::{HamiltonianSpec, ObservableSpec};
use super::linalg::{max_singular_value, op_norm};
use super::pauli::{Masks, C64};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
enum Spectrum {
    /// Real symmetric `H` (even number of `Y`s in every term).
    Real {
        energies: DVector<f64>,
        vectors: DMatrix<f64>,
    },
    Complex {
        energies: DVector<f64>,
        vectors: DMatrix<C64>,
    },
}

/// `A` in the eigenbasis of `H`, ready to be evolved to any time.
#[derive(Debug, Clone)]
pub struct Prepared(DMatrix<C64>);

#[derive(Debug, Clone)]
pub struct Evolver {
    n_sites: usize,
    spectrum: Spectrum,
}

fn split(m: &DMatrix<C64>) -> (DMatrix<f64>, DMatrix<f64>) {
    (m.map(|z| z.re), m.map(|z| z.im))
}

fn join(re: &DMatrix<f64>, im: &DMatrix<f64>) -> DMatrix<C64> {
    re.zip_map(im, C64::new)
}

impl Evolver {
    pub fn new(h: &HamiltonianSpec) -> Result<Self> {
        let m = h.matrix()?;
        let spectrum = if h.is_real() {
            let re = m.map(|z| z.re);
            let eig = SymmetricEigen::try_new(re, f64::EPSILON, 0)
                .ok_or_else(|| Error::Decomposition("real symmetric solver did not converge".into()))?;
            Spectrum::Real {
                energies: eig.eigenvalues,
                vectors: eig.eigenvectors,
            }
        } else {
            let eig = SymmetricEigen::try_new(m, f64::EPSILON, 0)
                .ok_or_else(|| Error::Decomposition("Hermitian solver did not converge".into()))?;
            Spectrum::Complex {
                energies: eig.eigenvalues,
                vectors: eig.eigenvectors,
            }
        };
        Ok(Self {
            n_sites: h.n_sites(),
            spectrum,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    fn energies(&self) -> &DVector<f64> {
        match &self.spectrum {
            Spectrum::Real { energies, .. } | Spectrum::Complex { energies, .. } => energies,
        }
    }

    /// `V^dagger A V`.
    pub fn prepare(&self, a: &DMatrix<C64>) -> Prepared {
        Prepared(match &self.spectrum {
            Spectrum::Real { vectors, .. } => {
                let (re, im) = split(a);
                let vt = vectors.transpose();
                join(&(&vt * re * vectors), &(&vt * im * vectors))
            }
            Spectrum::Complex { vectors, .. } => vectors.adjoint() * a * vectors,
        })
    }

    pub fn evolve_prepared(&self, p: &Prepared, t: f64) -> DMatrix<C64> {
        let e = self.energies();
        let phases: Vec<C64> = e.iter().map(|&ek| C64::from_polar(1.0, ek * t)).collect();
        let rotated = DMatrix::from_fn(p.0.nrows(), p.0.ncols(), |k, l| {
            p.0[(k, l)] * phases[k] * phases[l].conj()
        });
        match &self.spectrum {
            Spectrum::Real { vectors, .. } => {
                let (re, im) = split(&rotated);
                let vt = vectors.transpose();
                join(&(vectors * re * &vt), &(vectors * im * &vt))
            }
            Spectrum::Complex { vectors, .. } => vectors * rotated * vectors.adjoint(),
        }
    }

    pub fn evolve(&self, a: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
        self.evolve_prepared(&self.prepare(a), t)
    }

    pub fn evolve_observable(&self, a: &ObservableSpec, t: f64) -> DMatrix<C64> {
        self.evolve(&a.matrix(self.n_sites), t)
    }

    /// `||[tau_t(A), B]||`.
    pub fn commutator_norm(&self, a: &ObservableSpec, b: &ObservableSpec, t: f64) -> f64 {
        pauli_commutator_norm(&self.evolve_observable(a, t), &b.masks())
    }

    /// `||tau_t^{H1}(O) - tau_t^{H2}(O)||` with `other` evolving under `H2`.
    pub fn perturbation_diff(&self, other: &Evolver, o: &ObservableSpec, t: f64) -> f64 {
        let a = o.matrix(self.n_sites);
        op_norm(&(self.evolve(&a, t) - other.evolve(&a, t)))
    }
}

type SparseVec = Vec<(usize, C64)>;

/// Eigenvectors of `P` with eigenvalue `lambda`, each with at most two entries.
fn pauli_eigenvectors(p: &Masks, dim: usize, lambda: f64) -> Vec<SparseVec> {
    if p.flip == 0 {
        return (0..dim)
            .filter(|&b| p.phase(b).re * lambda > 0.0)
            .map(|b| vec![(b, C64::new(1.0, 0.0))])
            .collect();
    }
    let pivot = p.flip & p.flip.wrapping_neg();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    (0..dim)
        .filter(|b| b & pivot == 0)
        .map(|b| vec![(b, C64::new(h, 0.0)), (b ^ p.flip, p.phase(b) * (lambda * h))])
        .collect()
}

fn block(m: &DMatrix<C64>, rows: &[SparseVec], cols: &[SparseVec]) -> DMatrix<C64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for &(a, ca) in &rows[i] {
            for &(c, cc) in &cols[j] {
                acc += ca.conj() * cc * m[(a, c)];
            }
        }
        acc
    })
}

/// `||[M, P]||` for a Pauli string `P`. `M - P M P` anticommutes with `P`, so
/// in the eigenbasis of `P` only the off-diagonal blocks survive, each equal
/// to twice the matching block of `M`.
pub fn pauli_commutator_norm(m: &DMatrix<C64>, p: &Masks) -> f64 {
    let dim = m.nrows();
    let plus = pauli_eigenvectors(p, dim, 1.0);
    let minus = pauli_eigenvectors(p, dim, -1.0);
    if plus.is_empty() || minus.is_empty() {
        return 0.0;
    }
    let upper = max_singular_value(&block(m, &plus, &minus));
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let hermitian = m
        .iter()
        .zip(m.adjoint().iter())
        .all(|(a, b)| (a - b).norm() <= 1e-13 * scale);
    let lower = if hermitian {
        upper
    } else {
        max_singular_value(&block(m, &minus, &plus))
    };
    2.0 * upper.max(lower)
}

pub fn heisenberg_evolve(h: &HamiltonianSpec, a: &ObservableSpec, t: f64) -> Result<DMatrix<C64>> {
    a.check(&h.lattice)?;
    Ok(Evolver::new(h)?.evolve_observable(a, t))
}

pub fn commutator_norm(h: &HamiltonianSpec, a: &ObservableSpec, b: &ObservableSpec, t: f64) -> Result<f64> {
    a.check(&h.lattice)?;
    b.check(&h.lattice)?;
    Ok(Evolver::new(h)?.commutator_norm(a, b, t))
}

pub fn perturbation_diff(
    h1: &HamiltonianSpec,
    h2: &HamiltonianSpec,
    o: &ObservableSpec,
    t: f64,
) -> Result<f64> {
    if h1.lattice != h2.lattice {
        return Err(Error::LatticeMismatch);
    }
    o.check(&h1.lattice)?;
    Ok(Evolver::new(h1)?.perturbation_diff(&Evolver::new(h2)?, o, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hamiltonian::Term;
    use crate::oracle::lattice::Lattice;
    use crate::oracle::pauli::Pauli;

    fn random_matrix(dim: usize, seed: u64, hermitian: bool) -> DMatrix<C64> {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = DMatrix::from_fn(dim, dim, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        if hermitian {
            &m + m.adjoint()
        } else {
            m
        }
    }

    #[test]
    fn block_commutator_matches_dense() {
        let strings: [(&[usize], &str); 6] = [
            (&[1], "X"),
            (&[0, 2], "YZ"),
            (&[3], "Z"),
            (&[0, 1, 3], "ZZY"),
            (&[2], "Y"),
            (&[], ""),
        ];
        for (seed, hermitian) in [(1, true), (2, false), (3, true)] {
            let m = random_matrix(16, seed, hermitian);
            for (sites, ops) in strings {
                let masks = Masks::new(sites, &crate::oracle::pauli::parse_ops(ops).unwrap());
                let p = masks.to_matrix(4);
                let dense = op_norm(&(&m * &p - &p * &m));
                let fast = pauli_commutator_norm(&m, &masks);
                assert!((dense - fast).abs() < 1e-12 * dense.max(1.0), "{ops}: {dense} vs {fast}");
            }
        }
    }

    fn zz() -> HamiltonianSpec {
        HamiltonianSpec::new(Lattice::chain(2), vec![Term::new(vec![0, 1], "ZZ", 1.0).unwrap()]).unwrap()
    }

    #[test]
    fn identity_at_time_zero() {
        let a = ObservableSpec::single(0, Pauli::X);
        let m = heisenberg_evolve(&zz(), &a, 0.0).unwrap();
        assert!((m - a.matrix(2)).norm() < 1e-12);
    }

    /// Independent two-site solution: `X (x) 1` precesses into `Y (x) Z`.
    #[test]
    fn two_site_precession() {
        let a = ObservableSpec::single(0, Pauli::X);
        let yz = ObservableSpec::new(vec![0, 1], "YZ").unwrap().matrix(2);
        let ev = Evolver::new(&zz()).unwrap();
        for t in [0.1f64, 0.7, 2.0] {
            let expected = a.matrix(2) * C64::new((2.0 * t).cos(), 0.0) - &yz * C64::new((2.0 * t).sin(), 0.0);
            assert!((ev.evolve_observable(&a, t) - expected).norm() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn complex_path_matches_real_path() {
        let mut h = zz();
        h.push(Term::new(vec![0], "X", 0.3).unwrap()).unwrap();
        let real = Evolver::new(&h).unwrap();
        h.push(Term::new(vec![1], "Y", 0.0).unwrap()).unwrap();
        let complex = Evolver::new(&h).unwrap();
        assert!(matches!(complex.spectrum, Spectrum::Complex { .. }));
        let a = ObservableSpec::new(vec![0, 1], "YX").unwrap();
        let d = real.evolve_observable(&a, 0.9) - complex.evolve_observable(&a, 0.9);
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn analytic_commutator() {
        let a = ObservableSpec::single(0, Pauli::X);
        let b = ObservableSpec::single(1, Pauli::X);
        let v = commutator_norm(&zz(), &a, &b, std::f64::consts::FRAC_PI_4).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn conserved_observable_is_static() {
        let a = ObservableSpec::single(1, Pauli::Z);
        let m = heisenberg_evolve(&zz(), &a, 1.3).unwrap();
        assert!((m - a.matrix(2)).norm() < 1e-12);
    }
}
