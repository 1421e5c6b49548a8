//! The spread integral `I[lambda] = lambda(0) + int_{1/2}^inf rho^{d-1} lambda(rho) d rho`,
//! bounded symbolically as a function of `tau` and the inner cutoff `R'`.

use crate::bound::{BoundDescriptor, TauPolynomial};
use crate::error::{Error, Result};

/// Margin below which `d + mu` counts as zero.
const LOG_CASE_TOL: f64 = 1e-12;

/// Contribution of one power-law term of the bound to `I[lambda]`.
#[derive(Debug, Clone, PartialEq)]
pub enum TermContribution {
    /// `d + mu > 0`: bounded at the upper limit, `P(tau) R'^{exponent}`.
    CutoffDependent {
        prefactor: TauPolynomial,
        rprime_exponent: f64,
    },
    /// `d + mu < 0`: bounded at the lower limit, independent of `R'`.
    CutoffFree { prefactor: TauPolynomial },
}

/// `I[lambda] <= rprime_independent(tau) + P(tau) R'^{e}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralBound {
    /// `C |X| (1 + tau^{d/(1-sigma)})`, or `C |X|` for the seed.
    pub budget: TauPolynomial,
    /// One entry per power-law term of the bound, in order; the seed yields a
    /// single cutoff-dependent entry.
    pub contributions: Vec<TermContribution>,
}

impl IntegralBound {
    /// Everything that does not grow with `R'`.
    pub fn rprime_independent(&self) -> TauPolynomial {
        self.contributions
            .iter()
            .fold(self.budget.clone(), |acc, c| match c {
                TermContribution::CutoffFree { prefactor } => acc.add(prefactor),
                TermContribution::CutoffDependent { .. } => acc,
            })
    }

    /// The `R'`-dependent piece; bounds produced by the recursion carry at
    /// most one.
    pub fn rprime_term(&self) -> Option<(TauPolynomial, f64)> {
        self.contributions.iter().find_map(|c| match c {
            TermContribution::CutoffDependent {
                prefactor,
                rprime_exponent,
            } => Some((prefactor.clone(), *rprime_exponent)),
            TermContribution::CutoffFree { .. } => None,
        })
    }

    /// Evaluates the bound at `tau`, `R'`.
    pub fn eval(&self, tau: f64, rprime: f64, x: f64) -> f64 {
        let mut v = self.budget.eval(tau, x);
        for c in &self.contributions {
            v += match c {
                TermContribution::CutoffDependent {
                    prefactor,
                    rprime_exponent,
                } => prefactor.eval(tau, x) * rprime.powf(*rprime_exponent),
                TermContribution::CutoffFree { prefactor } => prefactor.eval(tau, x),
            };
        }
        v
    }
}

/// Symbolic bound on `I[lambda]` for the seed or an iterated bound.
///
/// The seed (linear exponent) gives `C|X|(1 + (R' tau)^d)`. An iterated bound
/// with stretched exponent `sigma` gives `C|X|(1 + tau^{d/(1-sigma)})` plus,
/// per term `F r^mu`, either `C F R'^{(d+mu)/sigma}` (`d + mu > 0`) or
/// `C F tau^{(d+mu)/(1-sigma)}` (`d + mu < 0`).
pub fn information_integral(bound: &BoundDescriptor) -> Result<IntegralBound> {
    let p = &bound.params;
    let c = p.constants.c;
    let d = p.d();
    let Some(sigma) = bound.sigma_exp else {
        return Ok(IntegralBound {
            budget: TauPolynomial::monomial(c, 0.0, 1),
            contributions: vec![TermContribution::CutoffDependent {
                prefactor: TauPolynomial::monomial(c, d, 1),
                rprime_exponent: d,
            }],
        });
    };
    let budget = TauPolynomial::monomial(c, 0.0, 1).add(&TauPolynomial::monomial(
        c,
        d / (1.0 - sigma),
        1,
    ));
    let mut contributions = Vec::with_capacity(bound.poly_terms.len());
    for term in &bound.poly_terms {
        let excess = d + term.r_exponent;
        if excess.abs() <= LOG_CASE_TOL {
            return Err(Error::LogarithmicCase {
                mu: term.r_exponent,
            });
        }
        contributions.push(if excess > 0.0 {
            TermContribution::CutoffDependent {
                prefactor: term.prefactor.scale(c),
                rprime_exponent: excess / sigma,
            }
        } else {
            TermContribution::CutoffFree {
                prefactor: term.prefactor.mul_monomial(c, excess / (1.0 - sigma), 0),
            }
        });
    }
    Ok(IntegralBound {
        budget,
        contributions,
    })
}
