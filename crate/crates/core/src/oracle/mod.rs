//! Exact small-lattice dynamics used as ground truth for the bounds: qubit
//! Hamiltonians built from Pauli strings, the assumption functionals, exact
//! Heisenberg evolution and commutator fronts.

mod dynamics;
mod front;
mod hamiltonian;
mod lattice;
mod linalg;
mod pauli;
mod random;

pub use dynamics::{
    commutator_norm, heisenberg_evolve, pauli_commutator_norm, perturbation_diff, Evolver,
    Prepared,
};
pub use front::{dominance_report, fitted_params, front_scan, DominanceReport, FrontMeta, FrontRow, FrontTable};
pub use hamiltonian::{
    build_power_law_ising, decay_profile, delta_j, difference_norms, fit_decay,
    interaction_budget, per_site_budget, total_difference, HamiltonianSpec, ObservableSpec,
    ShortRange, Term, MAX_SITES,
};
pub use lattice::Lattice;
pub use linalg::{hermitian_norm, max_singular_value, op_norm, DENSE_NORM_MAX_DIM};
pub use pauli::{Masks, Pauli, C64};
pub use random::{random_hamiltonian, random_pair, DEFAULT_SEED};
