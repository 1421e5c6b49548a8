//! Light-cone exponents read off the derived bound family directly.
//!
//! Along `r = t^gamma` the stretched exponential vanishes once
//! `gamma > 1/(1 - sigma)`; a term `tau^g r^mu` vanishes once `gamma > g/(-mu)`
//! (LC1), and its volume-and-time integral once `gamma > (1 + g)/(-mu - d)`
//! (LC2, only when `mu + d < 0`). The exponent is the infimum over `(sigma, n)`
//! of the largest of these thresholds.

use rayon::prelude::*;

use super::closed_form::{Branch, ExponentResult, Which};
use crate::bound::{BoundDescriptor, Cutoff, ModelParams};
use crate::error::{Error, Result};
use crate::iteration::{initial_bound, iterate_step, n_star};

const EDGE: f64 = 1e-6;
const NUDGE: f64 = 1e-9;
const GOLDEN_TOL: f64 = 1e-8;
const EXTRA_ITERATIONS: u32 = 3;

#[derive(Debug, Clone, Copy)]
struct Candidate {
    value: f64,
    n: u32,
    exp_active: bool,
}

impl Candidate {
    const NONE: Candidate = Candidate {
        value: f64::INFINITY,
        n: 0,
        exp_active: false,
    };
}

fn threshold(bound: &BoundDescriptor, which: Which, sigma: f64) -> (f64, f64) {
    let d = bound.params.d();
    let exp = 1.0 / (1.0 - sigma);
    let mut poly = f64::NEG_INFINITY;
    for term in &bound.poly_terms {
        let Some(g) = term.prefactor.max_tau_power() else {
            continue;
        };
        let mu = term.r_exponent;
        let need = match which {
            Which::Lc1 if mu < 0.0 => g / -mu,
            Which::Lc2 if mu + d < 0.0 => (1.0 + g) / (-mu - d),
            _ => f64::INFINITY,
        };
        poly = poly.max(need);
    }
    (exp, poly)
}

fn best_over_n(params: &ModelParams, which: Which, sigma: f64, n_max: u32) -> Result<Candidate> {
    let n_hi = n_max.min(n_star(sigma, params)?.saturating_add(EXTRA_ITERATIONS));
    let mut bound = initial_bound(params, Cutoff::Infinite);
    let mut best = Candidate::NONE;
    for n in 1..=n_hi {
        bound = match iterate_step(&bound, sigma) {
            Ok(b) => b,
            Err(Error::TooManyMonomials { .. }) => break,
            Err(e) => return Err(e),
        };
        let (exp, poly) = threshold(&bound, which, sigma);
        let value = exp.max(poly);
        if value < best.value {
            best = Candidate {
                value,
                n,
                exp_active: exp >= poly - 1e-5 * exp,
            };
        }
    }
    Ok(best)
}

fn objective(params: &ModelParams, which: Which, sigma: f64, n_max: u32) -> Result<Candidate> {
    match best_over_n(params, which, sigma, n_max) {
        Err(Error::LogarithmicCase { .. }) => match best_over_n(params, which, sigma + NUDGE, n_max) {
            Err(Error::LogarithmicCase { .. }) => best_over_n(params, which, sigma - NUDGE, n_max),
            other => other,
        },
        other => other,
    }
}

fn golden_section<F>(mut a: f64, mut b: f64, f: F) -> Result<(f64, Candidate)>
where
    F: Fn(f64) -> Result<Candidate>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > GOLDEN_TOL {
        if f1.value <= f2.value {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1.value <= f2.value { (x1, f1) } else { (x2, f2) })
}

/// Numerically optimized light-cone exponent of the derived bound family,
/// scanning `grid` uniform-schedule values of `sigma` above `(d+1)/(alpha+1)`
/// and iteration counts `1..=min(n_max, n* + 3)`, then refining by golden
/// section.
pub fn lc_exponent_numeric(
    params: &ModelParams,
    which: Which,
    n_max: u32,
    grid: usize,
) -> Result<ExponentResult> {
    params.validate()?;
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    if grid < 3 {
        return Err(Error::InvalidParameter(format!("sigma grid of {grid} points is too coarse")));
    }
    let lo = (params.d() + 1.0) / (params.alpha + 1.0) + EDGE;
    let hi = 1.0 - EDGE;
    let step = (hi - lo) / (grid - 1) as f64;
    let sigmas: Vec<f64> = (0..grid).map(|i| lo + step * i as f64).collect();
    let scan: Vec<Candidate> = sigmas
        .par_iter()
        .map(|&s| objective(params, which, s, n_max))
        .collect::<Result<_>>()?;

    let (i_best, best) = scan
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.value.total_cmp(&b.1.value))
        .expect("non-empty grid");
    if !best.value.is_finite() {
        return Ok(ExponentResult {
            value: None,
            optimizer_sigma: None,
            optimizer_n: None,
            branch: Branch::PolyMinimum,
        });
    }
    let a = sigmas[i_best.saturating_sub(1)];
    let b = sigmas[(i_best + 1).min(grid - 1)];
    let (sigma_g, refined) = golden_section(a, b, |s| objective(params, which, s, n_max))?;
    let (sigma, cand) = if refined.value <= best.value {
        (sigma_g, refined)
    } else {
        (sigmas[i_best], *best)
    };
    Ok(ExponentResult {
        value: Some(cand.value),
        optimizer_sigma: Some(sigma),
        optimizer_n: Some(cand.n),
        branch: if cand.exp_active {
            Branch::ExpPoly
        } else {
            Branch::PolyMinimum
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lc1_at_alpha_two() {
        let p = ModelParams::unit(2.0, 1).unwrap();
        let r = lc_exponent_numeric(&p, Which::Lc1, 6, 2000).unwrap();
        assert!((r.value.unwrap() - 3.0).abs() < 1e-3, "{r:?}");
    }

    #[test]
    fn lc2_above_crossover() {
        let p = ModelParams::unit(5.0, 1).unwrap();
        let r = lc_exponent_numeric(&p, Which::Lc2, 6, 2000).unwrap();
        assert!((r.value.unwrap() - 7.0 / 3.0).abs() < 1e-3, "{r:?}");
        assert_eq!(r.branch, Branch::ExpPoly);
    }

    #[test]
    fn lc2_below_crossover_hits_interior_minimum() {
        let p = ModelParams::unit(2.0, 1).unwrap();
        let r = lc_exponent_numeric(&p, Which::Lc2, 12, 2000).unwrap();
        assert!((r.value.unwrap() - (6.0 + 4.0 * 2f64.sqrt())).abs() < 1e-3, "{r:?}");
        assert_eq!(r.branch, Branch::PolyMinimum);
        assert!((r.optimizer_sigma.unwrap() - (1.5 - 2f64.sqrt() / 2.0)).abs() < 1e-3);
    }

    #[test]
    fn single_iteration_has_no_lc2_below_two_d() {
        let p = ModelParams::unit(2.0, 1).unwrap();
        assert_eq!(lc_exponent_numeric(&p, Which::Lc2, 1, 200).unwrap().value, None);
    }
}
