//! Seed bound, one step of the cutoff recursion, and the folded derivation.

use super::integral::{information_integral, TermContribution};
use super::schedule::SigmaSchedule;
use crate::bound::{BoundDescriptor, Cutoff, ModelParams, PowerLawTerm, TauPolynomial};
use crate::error::{Error, Result};

/// Monomial cap per prefactor.
pub const MAX_MONOMIALS: usize = 256;

/// Short-range seed `Delta_r(2|X| e^{vt - r/R})`, no power-law terms.
pub fn initial_bound(params: &ModelParams, cutoff: Cutoff) -> BoundDescriptor {
    BoundDescriptor {
        params: *params,
        sigma_exp: None,
        exp_prefactor: TauPolynomial::monomial(2.0, 0.0, 1),
        poly_terms: Vec::new(),
        cutoff,
        iteration_count: 0,
    }
}

/// `n* = ceil(sigma d / (sigma alpha - d))`: the first iteration whose leading
/// spatial exponent falls below `-d` for a uniform schedule.
pub fn n_star(sigma: f64, params: &ModelParams) -> Result<u32> {
    let d = params.d();
    let gap = sigma * params.alpha - d;
    if !(gap > 0.0) {
        return Err(Error::NoFiniteNStar {
            product: sigma * params.alpha,
            dim: d,
        });
    }
    let ratio = sigma * d / gap;
    Ok(((ratio - 1e-12).ceil() as u32).max(1))
}

/// One application of the recursion with inner cutoff `R' = r^{sigma_next}`.
///
/// Every power-law term of the input maps to one output term: a
/// cutoff-dependent contribution `P R'^e` becomes `r^{sigma_next (e - alpha)}`
/// and a cutoff-free one becomes `r^{-sigma_next alpha}`. The budget
/// `C|X|(1 + ...)` joins the last cutoff-free term (it becomes a term of its
/// own after the seed). Every prefactor is multiplied by `C (J/v) tau |X|`.
pub fn iterate_step(bound: &BoundDescriptor, sigma_next: f64) -> Result<BoundDescriptor> {
    let p = &bound.params;
    if !(sigma_next > 0.0 && sigma_next < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "sigma = {sigma_next} outside (0, 1)"
        )));
    }
    if let Some(prev) = bound.sigma_exp {
        if sigma_next > prev {
            return Err(Error::ScheduleNotMonotone {
                index: bound.iteration_count as usize,
                prev,
                next: sigma_next,
            });
        }
    }
    if sigma_next * p.alpha <= p.d() {
        return Err(Error::InvalidParameter(format!(
            "sigma = {sigma_next} must exceed d/alpha = {}",
            p.d() / p.alpha
        )));
    }

    let integral = information_integral(bound)?;
    let hop = p.constants.c * p.coupling_ratio();
    let long_range = -sigma_next * p.alpha;

    let mut terms: Vec<PowerLawTerm> = Vec::with_capacity(integral.contributions.len() + 1);
    let mut last_free = None;
    for contribution in &integral.contributions {
        let (prefactor, r_exponent) = match contribution {
            TermContribution::CutoffDependent {
                prefactor,
                rprime_exponent,
            } => (prefactor, sigma_next * (rprime_exponent - p.alpha)),
            TermContribution::CutoffFree { prefactor } => {
                last_free = Some(terms.len());
                (prefactor, long_range)
            }
        };
        terms.push(PowerLawTerm {
            r_exponent,
            prefactor: prefactor.mul_monomial(hop, 1.0, 1),
            cutoff_power: Some(sigma_next),
        });
    }
    let budget_term = integral.budget.mul_monomial(hop, 1.0, 1);
    match last_free {
        Some(i) => terms[i].prefactor = terms[i].prefactor.add(&budget_term),
        None => terms.push(PowerLawTerm {
            r_exponent: long_range,
            prefactor: budget_term,
            cutoff_power: Some(sigma_next),
        }),
    }
    if terms.iter().any(|t| t.prefactor.len() > MAX_MONOMIALS) {
        return Err(Error::TooManyMonomials { cap: MAX_MONOMIALS });
    }

    Ok(BoundDescriptor {
        params: *p,
        sigma_exp: Some(sigma_next),
        exp_prefactor: bound.exp_prefactor.clone(),
        poly_terms: terms,
        cutoff: bound.cutoff,
        iteration_count: bound.iteration_count + 1,
    })
}

/// Closed form `mu_1^{(n)} = (1 + sum_{j<n} 1/sigma_j) sigma_n d - n sigma_n alpha`.
pub fn mu1_closed(schedule: &SigmaSchedule, n: usize, params: &ModelParams) -> Result<f64> {
    let sigma_n = schedule.sigma(n).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "n = {n} outside schedule of length {}",
            schedule.len()
        ))
    })?;
    let inverse_sum: f64 = schedule.as_slice()[..n - 1].iter().map(|s| 1.0 / s).sum();
    Ok((1.0 + inverse_sum) * sigma_n * params.d() - n as f64 * sigma_n * params.alpha)
}

/// All stages `lambda_0, ..., lambda_m` of the recursion.
pub fn derive_stages(params: &ModelParams, schedule: &SigmaSchedule) -> Result<Vec<BoundDescriptor>> {
    params.validate()?;
    let mut stages = Vec::with_capacity(schedule.len() + 1);
    stages.push(initial_bound(params, Cutoff::Infinite));
    for &sigma in schedule.as_slice() {
        let next = iterate_step(stages.last().expect("seed present"), sigma)?;
        stages.push(next);
    }
    Ok(stages)
}

/// Folds the recursion over `schedule` and takes `R -> infinity`.
pub fn derive_bound(params: &ModelParams, schedule: &SigmaSchedule) -> Result<BoundDescriptor> {
    let last = derive_stages(params, schedule)?
        .pop()
        .expect("at least the seed");
    Ok(last.with_cutoff(Cutoff::Infinite))
}

/// Closed form `2|X| e^{vt - r^{1-sigma}} + C1 C3 (tau + tau^{1+d/(1-sigma)}) |X|^{n*+2} r^{-sigma alpha}`
/// valid for `(d+1)/(alpha+1) < sigma < 1`.
pub fn theorem_bound(params: &ModelParams, sigma: f64) -> Result<BoundDescriptor> {
    params.validate()?;
    let d = params.d();
    let lower = (d + 1.0) / (params.alpha + 1.0);
    if !(sigma > lower && sigma < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "sigma = {sigma} outside ({lower}, 1)"
        )));
    }
    let n = n_star(sigma, params)?;
    let k = params.constants.c1 * params.constants.c3;
    let prefactor = TauPolynomial::monomial(k, 1.0, n + 2).add(&TauPolynomial::monomial(
        k,
        1.0 + d / (1.0 - sigma),
        n + 2,
    ));
    Ok(BoundDescriptor {
        params: *params,
        sigma_exp: Some(sigma),
        exp_prefactor: TauPolynomial::monomial(2.0, 0.0, 1),
        poly_terms: vec![PowerLawTerm {
            r_exponent: -sigma * params.alpha,
            prefactor,
            cutoff_power: None,
        }],
        cutoff: Cutoff::Infinite,
        iteration_count: n + 1,
    })
}
