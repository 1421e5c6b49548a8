use rand::seq::index::sample;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hamiltonian::{HamiltonianSpec, Term};
use super::lattice::Lattice;
use crate::error::Result;

/// Seed used by the randomized checks unless one is supplied.
pub const DEFAULT_SEED: u64 = 20_181_030;

/// Random multi-body Hamiltonian on an `n_sites` chain: `n_terms` Pauli
/// strings on supports of 1 to `max_support` sites, coefficients uniform in
/// `[-1, 1]`.
pub fn random_hamiltonian(
    n_sites: usize,
    n_terms: usize,
    max_support: usize,
    rng: &mut ChaCha8Rng,
) -> Result<HamiltonianSpec> {
    let lattice = Lattice::chain(n_sites);
    let mut terms = Vec::with_capacity(n_terms);
    for _ in 0..n_terms {
        let k = rng.random_range(1..=max_support.min(n_sites));
        let support: Vec<usize> = sample(rng, n_sites, k).into_vec();
        let ops: String = (0..k).map(|_| ['X', 'Y', 'Z'][rng.random_range(0..3)]).collect();
        let coeff = rng.random_range(-1.0..=1.0);
        terms.push(Term::new(support, &ops, coeff)?);
    }
    HamiltonianSpec::new(lattice, terms)
}

/// One seeded `(H1, H2)` pair where `H2 = H1 + Delta`, both on 6 sites with
/// supports of at most 3 sites.
pub fn random_pair(seed: u64) -> Result<(HamiltonianSpec, HamiltonianSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h1 = random_hamiltonian(6, 12, 3, &mut rng)?;
    let delta = random_hamiltonian(6, 4, 3, &mut rng)?;
    let mut h2 = h1.clone();
    h2.terms.extend(delta.terms);
    Ok((h1, h2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_bounded() {
        let (a1, a2) = random_pair(DEFAULT_SEED).unwrap();
        let (b1, b2) = random_pair(DEFAULT_SEED).unwrap();
        assert_eq!((a1.clone(), a2), (b1, b2));
        for t in &a1.terms {
            assert!(t.support.len() <= 3 && t.coeff.abs() <= 1.0);
        }
    }
}
