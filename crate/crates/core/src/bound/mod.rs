//! Bound functions `lambda(r, t)` and their pointwise evaluation.

mod descriptor;
mod params;
mod poly;

pub use descriptor::{
    eval_bound, BoundDescriptor, Cutoff, LeadingBehavior, PowerLawTerm, TRIVIAL_BOUND,
};
pub use params::{ConstantRegistry, ModelParams};
pub use poly::{Monomial, TauPolynomial};
