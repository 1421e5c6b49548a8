//! Adaptive quadrature on finite intervals.
//!
//! Each piece is integrated with the double-exponential rule from the
//! `quadrature` crate; pieces whose error estimate misses the tolerance are
//! bisected.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-12,
            rel: 1e-13,
        }
    }
}

/// Integrates `f` over `[a, b]`, splitting first at every point of `breaks`
/// that lies strictly inside the interval (kinks, the integrand maximum).
pub fn integrate<F>(f: F, a: f64, b: f64, breaks: &[f64], tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, breaks, tol).map(|v| -v);
    }
    let mut points = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    points.extend(inner);
    points.push(b);
    let pieces = (points.len() - 1) as f64;
    let mut total = 0.0;
    for w in points.windows(2) {
        total += adapt(&f, w[0], w[1], tol.abs / pieces, tol.rel, 0)?;
    }
    Ok(total)
}

fn adapt<F>(f: &F, a: f64, b: f64, abs: f64, rel: f64, depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let out = quadrature::integrate(f, a, b, abs);
    let target = abs.max(rel * out.integral.abs());
    if out.error_estimate <= target {
        return Ok(out.integral);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::QuadratureFailed {
            a,
            b,
            estimate: out.error_estimate,
        });
    }
    let mid = 0.5 * (a + b);
    Ok(adapt(f, a, mid, abs / 2.0, rel, depth + 1)? + adapt(f, mid, b, abs / 2.0, rel, depth + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_integrals() {
        let v = integrate(|x: f64| x.exp(), 0.0, 1.0, &[], Tolerance::default()).unwrap();
        assert!((v - (1.0f64.exp() - 1.0)).abs() < 1e-13);
        let v = integrate(|x: f64| x.powi(-3), 0.5, 50.0, &[], Tolerance::default()).unwrap();
        assert!((v - (2.0 - 1.0 / 5000.0)).abs() < 1e-12);
    }

    #[test]
    fn kinked_integrand_with_break() {
        let f = |x: f64| (2.0f64).min(2.0 * (1.0 - x / 2.0).exp());
        let v = integrate(f, 0.5, 80.0, &[2.0], Tolerance::default()).unwrap();
        let exact = 2.0 * 1.5 + 4.0 * (1.0 - (1.0f64 - 40.0).exp());
        assert!((v - exact).abs() < 1e-11, "{v} vs {exact}");
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = integrate(|x: f64| x, 1.0, 0.0, &[], Tolerance::default()).unwrap();
        assert!((v + 0.5).abs() < 1e-14, "{v:e}");
    }
}
