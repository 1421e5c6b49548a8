//! Iterated Lieb-Robinson bounds for power-law interacting lattices, their
//! light-cone exponents, and an exact-diagonalization oracle to test them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound;
pub mod cli;
pub mod error;
pub mod fmt;
pub mod iteration;
pub mod lightcone;
pub mod oracle;
pub mod quad;

pub use error::{Error, Result};
