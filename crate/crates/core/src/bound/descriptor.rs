use serde::{Deserialize, Serialize};

use super::params::ModelParams;
use super::poly::TauPolynomial;
use crate::error::{Error, Result};

/// Trivial commutator bound for unit-norm observables.
pub const TRIVIAL_BOUND: f64 = 2.0;

/// Outer interaction range `R`. Serialized as a number, or `null` when
/// infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "Option<f64>", into = "Option<f64>")]
pub enum Cutoff {
    Finite(f64),
    Infinite,
}

impl From<Option<f64>> for Cutoff {
    fn from(v: Option<f64>) -> Self {
        match v {
            Some(r) if r.is_finite() => Cutoff::Finite(r),
            _ => Cutoff::Infinite,
        }
    }
}

impl From<Cutoff> for Option<f64> {
    fn from(c: Cutoff) -> Self {
        match c {
            Cutoff::Finite(r) => Some(r),
            Cutoff::Infinite => None,
        }
    }
}

impl Cutoff {
    fn value(&self) -> f64 {
        match self {
            Cutoff::Finite(r) => *r,
            Cutoff::Infinite => f64::INFINITY,
        }
    }
}

/// `F(tau) r^mu`, switched off by `Theta(R - r^sigma)` when a gate is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawTerm {
    pub r_exponent: f64,
    pub prefactor: TauPolynomial,
    pub cutoff_power: Option<f64>,
}

impl PowerLawTerm {
    /// Gate is open when `R >= r^sigma` (equality counts as inside).
    fn gate_open(&self, cutoff: Cutoff, r: f64) -> bool {
        match (self.cutoff_power, cutoff) {
            (None, _) | (_, Cutoff::Infinite) => true,
            (Some(s), Cutoff::Finite(big_r)) => big_r >= r.powf(s),
        }
    }
}

/// A bound `lambda(r, t)`: one exponential term plus power-law terms.
///
/// `sigma_exp = None` marks the short-range seed whose exponent is
/// `v t - r / R`; otherwise the exponent is `v t - r^{1 - sigma_exp}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundDescriptor {
    pub params: ModelParams,
    pub sigma_exp: Option<f64>,
    pub exp_prefactor: TauPolynomial,
    pub poly_terms: Vec<PowerLawTerm>,
    pub cutoff: Cutoff,
    pub iteration_count: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingBehavior {
    /// Slowest spatial decay among the power-law terms.
    pub spatial_exponent: f64,
    /// Largest power of `tau` in any power-law prefactor.
    pub temporal_exponent: f64,
    /// Largest `|X|` power attached to that leading `tau` power.
    pub x_power: u32,
}

impl BoundDescriptor {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if let Some(s) = self.sigma_exp {
            if !(s > 0.0 && s < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "sigma_exp = {s} outside (0, 1)"
                )));
            }
        }
        if let Cutoff::Finite(r) = self.cutoff {
            if !(r > 0.0) {
                return Err(Error::InvalidParameter(format!("cutoff R = {r} must be positive")));
            }
        }
        Ok(())
    }

    /// Raw (unclamped) value for `r >= 1`.
    pub fn raw_value(&self, r: f64, t: f64) -> f64 {
        let tau = self.params.tau(t);
        let x = self.params.x_size as f64;
        let exponent = match self.sigma_exp {
            None => tau - r / self.cutoff.value(),
            Some(s) => tau - r.powf(1.0 - s),
        };
        let mut value = self.exp_prefactor.eval(tau, x) * exponent.exp();
        for term in &self.poly_terms {
            if term.gate_open(self.cutoff, r) {
                value += term.prefactor.eval(tau, x) * r.powf(term.r_exponent);
            }
        }
        value
    }

    /// Clamped bound: `2` for `r < 1` or whenever the raw value exceeds `2`.
    pub fn eval(&self, r: f64, t: f64) -> f64 {
        if r < 1.0 {
            return TRIVIAL_BOUND;
        }
        let raw = self.raw_value(r, t);
        if raw.is_nan() || raw > TRIVIAL_BOUND {
            TRIVIAL_BOUND
        } else {
            raw
        }
    }

    pub fn leading_behavior(&self) -> Result<LeadingBehavior> {
        if self.poly_terms.is_empty() {
            return Err(Error::NoPowerLawTerms);
        }
        let spatial_exponent = self
            .poly_terms
            .iter()
            .map(|t| t.r_exponent)
            .max_by(f64::total_cmp)
            .expect("non-empty");
        let mut temporal: Option<(f64, u32)> = None;
        for term in &self.poly_terms {
            let (Some(g), Some(p)) = (
                term.prefactor.max_tau_power(),
                term.prefactor.leading_x_power(),
            ) else {
                continue;
            };
            temporal = match temporal {
                Some((best, _)) if g > best + 1e-12 * best.abs().max(1.0) => Some((g, p)),
                Some((best, bp)) if (g - best).abs() <= 1e-12 * best.abs().max(1.0) => {
                    Some((best, bp.max(p)))
                }
                None => Some((g, p)),
                keep => keep,
            };
        }
        let (temporal_exponent, x_power) = temporal.ok_or(Error::NoPowerLawTerms)?;
        Ok(LeadingBehavior {
            spatial_exponent,
            temporal_exponent,
            x_power,
        })
    }

    pub fn with_cutoff(mut self, cutoff: Cutoff) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let bound: BoundDescriptor = serde_json::from_str(s)
            .map_err(|e| Error::InvalidParameter(format!("bound JSON: {e}")))?;
        bound.validate()?;
        Ok(bound)
    }
}

/// Free-function form of [`BoundDescriptor::eval`].
pub fn eval_bound(bound: &BoundDescriptor, r: f64, t: f64) -> f64 {
    bound.eval(r, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound::params::ModelParams;

    fn exp_only(sigma: f64) -> BoundDescriptor {
        BoundDescriptor {
            params: ModelParams::unit(2.0, 1).unwrap(),
            sigma_exp: Some(sigma),
            exp_prefactor: TauPolynomial::monomial(2.0, 0.0, 1),
            poly_terms: vec![],
            cutoff: Cutoff::Infinite,
            iteration_count: 1,
        }
    }

    fn single_poly() -> BoundDescriptor {
        BoundDescriptor {
            exp_prefactor: TauPolynomial::zero(),
            poly_terms: vec![PowerLawTerm {
                r_exponent: -2.0,
                prefactor: TauPolynomial::monomial(1.0, 1.0, 0),
                cutoff_power: None,
            }],
            ..exp_only(0.5)
        }
    }

    #[test]
    fn clamps_below_unit_distance() {
        assert_eq!(exp_only(0.5).eval(0.5, 0.0), 2.0);
        assert_eq!(exp_only(0.5).eval(0.5, 3.0), 2.0);
    }

    #[test]
    fn stretched_exponential_value() {
        let v = exp_only(0.5).eval(4.0, 1.0);
        assert!((v - 2.0 * (1.0f64 - 2.0).exp()).abs() < 1e-15);
        assert!((v - 0.735_758_882_342_884_6).abs() < 1e-12);
    }

    #[test]
    fn single_power_law_term() {
        assert!((single_poly().eval(10.0, 1.0) - 0.01).abs() < 1e-15);
    }

    #[test]
    fn leading_behavior_of_single_term() {
        let lb = single_poly().leading_behavior().unwrap();
        assert_eq!((lb.spatial_exponent, lb.temporal_exponent), (-2.0, 1.0));
        assert_eq!(exp_only(0.5).leading_behavior(), Err(Error::NoPowerLawTerms));
    }

    #[test]
    fn gate_closes_beyond_cutoff_and_is_open_at_equality() {
        let mut b = single_poly();
        b.poly_terms[0].cutoff_power = Some(0.5);
        b.cutoff = Cutoff::Finite(3.0);
        assert!(b.eval(9.0, 1.0) > 0.0);
        assert_eq!(b.eval(9.5, 1.0), 0.0);
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let mut b = single_poly();
        b.poly_terms[0].prefactor = TauPolynomial::monomial(0.1 + 0.2, 1.0 / 3.0, 2);
        b.cutoff = Cutoff::Finite(std::f64::consts::PI);
        let back = BoundDescriptor::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
        let inf = BoundDescriptor::from_json(&single_poly().to_json()).unwrap();
        assert_eq!(inf.cutoff, Cutoff::Infinite);
    }
}
