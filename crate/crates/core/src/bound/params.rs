use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Named constants the bounds leave unspecified.
///
/// `c` is the generic constant of the recursion (the Lemma-1 constant and the
/// one multiplying each integral bound), `c1`..`c3` belong to the closed-form
/// bound, `c2` sets the velocity and `lattice` is the sum-to-integral
/// constant. All default to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantRegistry {
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub lattice: f64,
}

impl Default for ConstantRegistry {
    fn default() -> Self {
        Self {
            c: 1.0,
            c1: 1.0,
            c2: 1.0,
            c3: 1.0,
            lattice: 1.0,
        }
    }
}

impl ConstantRegistry {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("c", self.c),
            ("c1", self.c1),
            ("c2", self.c2),
            ("c3", self.c3),
            ("lattice", self.lattice),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "constant {name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Model assumptions: power-law exponent, dimension, decay strength `J`,
/// interaction budget `C0`, the derived velocity and the support size of the
/// evolved observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub alpha: f64,
    pub dim: u32,
    pub j_const: f64,
    pub c0: f64,
    pub velocity: f64,
    pub x_size: u32,
    pub constants: ConstantRegistry,
}

impl ModelParams {
    /// Builds the parameter bundle; the velocity is `c2 * max(J, C0)`.
    pub fn new(
        alpha: f64,
        dim: u32,
        j_const: f64,
        c0: f64,
        x_size: u32,
        constants: ConstantRegistry,
    ) -> Result<Self> {
        constants.validate()?;
        let params = Self {
            alpha,
            dim,
            j_const,
            c0,
            velocity: constants.c2 * j_const.max(c0),
            x_size,
            constants,
        };
        params.validate()?;
        Ok(params)
    }

    /// Unit couplings (`J = C0 = 1`), `|X| = 1`, default constants.
    pub fn unit(alpha: f64, dim: u32) -> Result<Self> {
        Self::new(alpha, dim, 1.0, 1.0, 1, ConstantRegistry::default())
    }

    pub fn with_x_size(mut self, x_size: u32) -> Result<Self> {
        self.x_size = x_size;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        if self.dim == 0 {
            return Err(Error::InvalidParameter("dim must be positive".into()));
        }
        if !(self.alpha.is_finite() && self.alpha > self.dim as f64) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} must exceed dim = {}",
                self.alpha, self.dim
            )));
        }
        if !(self.j_const >= 0.0 && self.c0 >= 0.0) {
            return Err(Error::InvalidParameter(
                "J and C0 must be non-negative".into(),
            ));
        }
        if !(self.velocity.is_finite() && self.velocity > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "velocity must be positive, got {}",
                self.velocity
            )));
        }
        if self.x_size == 0 {
            return Err(Error::InvalidParameter("|X| must be at least 1".into()));
        }
        Ok(())
    }

    pub fn d(&self) -> f64 {
        self.dim as f64
    }

    /// `tau = v t`.
    pub fn tau(&self, t: f64) -> f64 {
        self.velocity * t
    }

    /// Ratio `J / v` that converts `J t` into `tau`.
    pub fn coupling_ratio(&self) -> f64 {
        self.j_const / self.velocity
    }
}
