//! Numerical checks of the two auxiliary inequalities behind the integral steps:
//! the stretched incomplete-gamma tail and the lattice sum versus integral bound.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::Lattice;
use crate::quad::{integrate, Tolerance};

const TAIL_REL: f64 = 1e-14;
const MAX_GROWTH: u32 = 200;

fn validate_gamma_args(mu: f64, nu: f64, rho: f64) -> Result<()> {
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::InvalidParameter(format!("nu = {nu} must be positive")));
    }
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParameter(format!("rho = {rho} must be positive")));
    }
    if !mu.is_finite() {
        return Err(Error::InvalidParameter(format!("mu = {mu} must be finite")));
    }
    Ok(())
}

/// `int_a^inf e^{-(u - a)} u^{s-1} du`, truncated once the tail estimate drops
/// below `1e-14` of the accumulated integral.
fn scaled_upper_gamma(s: f64, a: f64) -> Result<f64> {
    let peak = s - 1.0;
    let f = |u: f64| (-(u - a) + (s - 1.0) * u.ln()).exp();
    let tol = Tolerance {
        abs: 1e-300,
        rel: 1e-13,
    };
    let mut lo = a;
    let mut hi = a.max(peak) + 16.0;
    let mut total = integrate(f, lo, hi, &[peak], tol)?;
    for _ in 0..MAX_GROWTH {
        let factor = if s <= 1.0 {
            Some(1.0)
        } else if hi > 2.0 * peak {
            Some(2.0)
        } else {
            None
        };
        if let Some(k) = factor {
            let tail = k * (-(hi - a) + (s - 1.0) * hi.ln()).exp();
            if tail <= TAIL_REL * total {
                return Ok(total);
            }
        }
        lo = hi;
        hi = lo + (lo - a).max(16.0);
        total += integrate(f, lo, hi, &[peak], tol)?;
    }
    Err(Error::QuadratureFailed {
        a,
        b: hi,
        estimate: f64::NAN,
    })
}

/// `int_rho^inf e^{-x^nu} x^mu dx`.
pub fn incomplete_gamma_tail(mu: f64, nu: f64, rho: f64) -> Result<f64> {
    validate_gamma_args(mu, nu, rho)?;
    let a = rho.powf(nu);
    Ok((-a).exp() * scaled_upper_gamma((mu + 1.0) / nu, a)? / nu)
}

/// Smallest `C` with `int_rho^inf e^{-x^nu} x^mu dx <= C e^{-rho^nu} (1 + rho^{mu-nu+1})`
/// over every `rho` in the grid.
pub fn check_incomplete_gamma(mu: f64, nu: f64, rho_grid: &[f64]) -> Result<f64> {
    if rho_grid.is_empty() {
        return Err(Error::InvalidParameter("empty rho grid".into()));
    }
    let ratios: Vec<f64> = rho_grid
        .par_iter()
        .map(|&rho| {
            validate_gamma_args(mu, nu, rho)?;
            let a = rho.powf(nu);
            let j = scaled_upper_gamma((mu + 1.0) / nu, a)?;
            Ok(j / (nu * (1.0 + rho.powf(mu - nu + 1.0))))
        })
        .collect::<Result<_>>()?;
    Ok(ratios.into_iter().fold(0.0, f64::max))
}

/// Smallest `C` with `sum_{z: 1 <= d(z,x) <= R} decay(d(z,x)) <= C int_{1/2}^R decay(r) r^{d-1} dr`
/// over every site `x`.
pub fn check_sum_vs_integral<F>(lattice: &Lattice, decay: F, big_r: f64) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    if !(big_r.is_finite()) {
        return Err(Error::InvalidParameter(format!("R = {big_r} must be finite")));
    }
    let n = lattice.len();
    let worst = (0..n)
        .into_par_iter()
        .map(|x| {
            (0..n)
                .map(|z| lattice.distance(x, z))
                .filter(|&r| (1.0..=big_r).contains(&r))
                .map(&decay)
                .sum::<f64>()
        })
        .reduce(|| 0.0, f64::max);
    if worst == 0.0 {
        return Ok(0.0);
    }
    let d = lattice.dim() as i32;
    let integral = if big_r > 0.5 {
        integrate(
            |r| decay(r) * r.powi(d - 1),
            0.5,
            big_r,
            &[1.0],
            Tolerance::default(),
        )?
    } else {
        0.0
    };
    if !(integral > 0.0) {
        return Err(Error::ZeroIntegral { sum: worst });
    }
    Ok(worst / integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::{gamma, gamma_ur};

    /// Closed form through the regularized upper incomplete gamma function.
    fn reference_tail(mu: f64, nu: f64, rho: f64) -> f64 {
        let s = (mu + 1.0) / nu;
        gamma(s) * gamma_ur(s, rho.powf(nu)) / nu
    }

    #[test]
    fn exponential_tail_is_exact() {
        for rho in [0.5, 1.0, 2.0, 5.0] {
            let v = incomplete_gamma_tail(0.0, 1.0, rho).unwrap();
            assert!((v / (-rho).exp() - 1.0).abs() < 1e-12, "{rho}: {v:e}");
        }
        let c = check_incomplete_gamma(0.0, 1.0, &[0.5, 1.0, 2.0, 5.0]).unwrap();
        assert!((c - 0.5).abs() < 1e-12);
    }

    #[test]
    fn matches_gamma_function_reference() {
        for (mu, nu) in [(1.0, 0.5), (2.0, 1.0), (0.0, 0.1), (1.0, 0.1), (-0.5, 1.0)] {
            for rho in [0.3, 1.0, 4.0, 10.0] {
                let v = incomplete_gamma_tail(mu, nu, rho).unwrap();
                let r = reference_tail(mu, nu, rho);
                assert!((v - r).abs() <= 1e-9 * r, "mu={mu} nu={nu} rho={rho}: {v} vs {r}");
            }
        }
    }

    #[test]
    fn negative_mu_fits_under_unit_constant() {
        assert!(check_incomplete_gamma(-1.0, 1.0, &[2.0]).unwrap() <= 1.0);
        let v = incomplete_gamma_tail(-1.0, 1.0, 2.0).unwrap();
        assert!(v <= (-2.0f64).exp() / 2.0);
    }

    #[test]
    fn large_mu_gives_finite_constant() {
        let grid: Vec<f64> = (1..=40).map(|k| 0.25 * k as f64).collect();
        let c = check_incomplete_gamma(2.0, 1.0, &grid).unwrap();
        assert!(c.is_finite() && c > 0.0);
    }

    #[test]
    fn chain_sum_against_integral() {
        let lattice = Lattice::chain(101);
        let c = check_sum_vs_integral(&lattice, |r| r.powi(-3), 50.0).unwrap();
        let sum: f64 = 2.0 * (1..=50).map(|k| (k as f64).powi(-3)).sum::<f64>();
        let integral = 2.0 - 1.0 / 5000.0;
        assert!((c - sum / integral).abs() < 1e-12, "{c}");
        assert!((c - 1.20195).abs() < 1e-4);
    }

    #[test]
    fn zero_decay_returns_zero() {
        assert_eq!(check_sum_vs_integral(&Lattice::chain(10), |_| 0.0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn square_patch_is_finite() {
        let c = check_sum_vs_integral(&Lattice::square(21), |r| r.powi(-4), 10.0).unwrap();
        assert!(c.is_finite() && c > 0.0);
    }
}
