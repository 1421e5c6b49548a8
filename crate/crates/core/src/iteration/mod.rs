//! The bound-derivation engine and numerical checks of the auxiliary lemmas.

mod integral;
mod lemmas;
mod recursion;
mod schedule;

pub use integral::{information_integral, IntegralBound, TermContribution};
pub use lemmas::{
    check_incomplete_gamma, check_sum_vs_integral, incomplete_gamma_tail,
};
pub use recursion::{
    derive_bound, derive_stages, initial_bound, iterate_step, mu1_closed, n_star,
    theorem_bound, MAX_MONOMIALS,
};
pub use schedule::SigmaSchedule;
