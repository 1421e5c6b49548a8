//! Finite sums `sum_k c_k tau^{g_k} |X|^{p_k}` used as time prefactors.
//!
//! Exponents of `tau` are real and may be negative: the recursion divides by
//! powers of `tau` once the integral of a decaying term is bounded by its
//! lower limit. Coefficients are strictly positive; zero monomials are
//! dropped on construction.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Exponents closer than this are treated as the same monomial.
const EXPONENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub tau_power: f64,
    pub x_power: u32,
}

impl Monomial {
    pub fn eval(&self, tau: f64, x: f64) -> f64 {
        self.coeff * tau.powf(self.tau_power) * x.powi(self.x_power as i32)
    }

    fn same_key(&self, other: &Monomial) -> bool {
        self.x_power == other.x_power
            && (self.tau_power - other.tau_power).abs()
                <= EXPONENT_TOL * self.tau_power.abs().max(1.0)
    }

    fn key_cmp(&self, other: &Monomial) -> Ordering {
        self.x_power
            .cmp(&other.x_power)
            .then(self.tau_power.total_cmp(&other.tau_power))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TauPolynomial {
    monomials: Vec<Monomial>,
}

impl TauPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: f64, tau_power: f64, x_power: u32) -> Self {
        Self::from_monomials(vec![Monomial {
            coeff,
            tau_power,
            x_power,
        }])
    }

    pub fn constant(coeff: f64) -> Self {
        Self::monomial(coeff, 0.0, 0)
    }

    /// Canonicalizes: sorts by `(x_power, tau_power)`, merges equal keys and
    /// drops non-positive coefficients.
    pub fn from_monomials(mut monomials: Vec<Monomial>) -> Self {
        monomials.retain(|m| m.coeff > 0.0);
        monomials.sort_by(Monomial::key_cmp);
        let mut merged: Vec<Monomial> = Vec::with_capacity(monomials.len());
        for m in monomials {
            match merged.last_mut() {
                Some(last) if last.same_key(&m) => last.coeff += m.coeff,
                _ => merged.push(m),
            }
        }
        Self { monomials: merged }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn add(&self, other: &TauPolynomial) -> TauPolynomial {
        let mut all = self.monomials.clone();
        all.extend_from_slice(&other.monomials);
        Self::from_monomials(all)
    }

    pub fn scale(&self, factor: f64) -> TauPolynomial {
        Self::from_monomials(
            self.monomials
                .iter()
                .map(|m| Monomial {
                    coeff: m.coeff * factor,
                    ..*m
                })
                .collect(),
        )
    }

    /// Multiplies every monomial by `coeff * tau^tau_power * |X|^x_power`.
    pub fn mul_monomial(&self, coeff: f64, tau_power: f64, x_power: u32) -> TauPolynomial {
        Self::from_monomials(
            self.monomials
                .iter()
                .map(|m| Monomial {
                    coeff: m.coeff * coeff,
                    tau_power: m.tau_power + tau_power,
                    x_power: m.x_power + x_power,
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &TauPolynomial) -> TauPolynomial {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.monomials {
            for b in &other.monomials {
                out.push(Monomial {
                    coeff: a.coeff * b.coeff,
                    tau_power: a.tau_power + b.tau_power,
                    x_power: a.x_power + b.x_power,
                });
            }
        }
        Self::from_monomials(out)
    }

    /// Evaluates at `tau` with `|X| = x`. A negative power at `tau = 0` gives
    /// `+inf`.
    pub fn eval(&self, tau: f64, x: f64) -> f64 {
        self.monomials.iter().map(|m| m.eval(tau, x)).sum()
    }

    /// Largest exponent of `tau`, `None` for the zero polynomial.
    pub fn max_tau_power(&self) -> Option<f64> {
        self.monomials
            .iter()
            .map(|m| m.tau_power)
            .max_by(f64::total_cmp)
    }

    /// Largest `|X|` exponent among the monomials carrying the top `tau`
    /// power.
    pub fn leading_x_power(&self) -> Option<u32> {
        let top = self.max_tau_power()?;
        self.monomials
            .iter()
            .filter(|m| (m.tau_power - top).abs() <= EXPONENT_TOL * top.abs().max(1.0))
            .map(|m| m.x_power)
            .max()
    }

    pub fn max_x_power(&self) -> Option<u32> {
        self.monomials.iter().map(|m| m.x_power).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn merges_equal_keys_and_drops_zeros() {
        let p = TauPolynomial::from_monomials(vec![
            Monomial { coeff: 1.0, tau_power: 2.0, x_power: 1 },
            Monomial { coeff: 0.0, tau_power: 3.0, x_power: 1 },
            Monomial { coeff: 2.5, tau_power: 2.0, x_power: 1 },
            Monomial { coeff: 1.0, tau_power: 2.0, x_power: 2 },
        ]);
        assert_eq!(p.len(), 2);
        assert_eq!(p.monomials()[0].coeff, 3.5);
    }

    #[test]
    fn eval_at_zero_returns_constant_coefficient() {
        let p = TauPolynomial::constant(3.0)
            .add(&TauPolynomial::monomial(5.0, 1.5, 0))
            .add(&TauPolynomial::monomial(7.0, 2.0, 1));
        assert_eq!(p.eval(0.0, 2.0), 3.0);
    }

    #[test]
    fn negative_power_at_zero_is_infinite() {
        let p = TauPolynomial::monomial(1.0, -3.0, 0);
        assert_eq!(p.eval(0.0, 1.0), f64::INFINITY);
        assert_eq!(p.eval(2.0, 1.0), 0.125);
    }

    #[test]
    fn leading_powers() {
        let p = TauPolynomial::monomial(1.0, 11.0, 2)
            .add(&TauPolynomial::monomial(1.0, 1.0, 5))
            .add(&TauPolynomial::monomial(1.0, 11.0, 1));
        assert_eq!(p.max_tau_power(), Some(11.0));
        assert_eq!(p.leading_x_power(), Some(2));
        assert_eq!(p.max_x_power(), Some(5));
        assert_eq!(TauPolynomial::zero().max_tau_power(), None);
    }

    fn arb_poly() -> impl Strategy<Value = TauPolynomial> {
        prop::collection::vec((0.01f64..10.0, -3i32..6, 0u32..4), 0..6).prop_map(|v| {
            TauPolynomial::from_monomials(
                v.into_iter()
                    .map(|(c, g, p)| Monomial {
                        coeff: c,
                        tau_power: g as f64 * 0.5,
                        x_power: p,
                    })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn sum_and_product_are_commutative_and_associative(
            a in arb_poly(), b in arb_poly(), c in arb_poly(),
            tau in 0.1f64..4.0, x in 1.0f64..3.0,
        ) {
            let close = |u: f64, v: f64| (u - v).abs() <= 1e-9 * u.abs().max(v.abs()).max(1.0);
            prop_assert!(close(a.add(&b).eval(tau, x), b.add(&a).eval(tau, x)));
            prop_assert!(close(a.add(&b).add(&c).eval(tau, x), a.add(&b.add(&c)).eval(tau, x)));
            prop_assert!(close(a.mul(&b).eval(tau, x), b.mul(&a).eval(tau, x)));
            prop_assert!(close(a.mul(&b).mul(&c).eval(tau, x), a.mul(&b.mul(&c)).eval(tau, x)));
            prop_assert!(close(a.add(&b).eval(tau, x), a.eval(tau, x) + b.eval(tau, x)));
            prop_assert!(close(a.mul_monomial(2.0, 1.5, 1).eval(tau, x),
                               2.0 * tau.powf(1.5) * x * a.eval(tau, x)));
        }
    }
}
