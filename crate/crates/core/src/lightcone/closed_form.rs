use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ThisWork,
    FossFeig,
    Matsuta,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::ThisWork, Method::FossFeig, Method::Matsuta];

    pub fn name(self) -> &'static str {
        match self {
            Method::ThisWork => "this_work",
            Method::FossFeig => "foss_feig",
            Method::Matsuta => "matsuta",
        }
    }
}

/// Light-cone definition: the bound itself vanishes (`Lc1`) or the volume
/// integral of the bound over space and time vanishes (`Lc2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum Which {
    #[serde(rename = "LC1")]
    #[value(name = "lc1", alias = "LC1")]
    Lc1,
    #[serde(rename = "LC2")]
    #[value(name = "lc2", alias = "LC2")]
    Lc2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LightconeQuery {
    pub alpha: f64,
    pub dim: u32,
    pub method: Method,
    pub which: Which,
}

impl LightconeQuery {
    pub fn new(alpha: f64, dim: u32, method: Method, which: Which) -> Result<Self> {
        let q = Self {
            alpha,
            dim,
            method,
            which,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidParameter("dim must be positive".into()));
        }
        if !(self.alpha > self.dim as f64) || !self.alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} must exceed dim = {}",
                self.alpha, self.dim
            )));
        }
        Ok(())
    }
}

/// Which constraint fixes the optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// Stretched-exponential and power-law constraints cross.
    #[serde(rename = "exp∩poly")]
    ExpPoly,
    /// Interior minimum of the power-law constraint.
    #[serde(rename = "poly-minimum")]
    PolyMinimum,
    #[serde(rename = "closed-form")]
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentResult {
    /// `None` when no finite power-law light cone exists.
    pub value: Option<f64>,
    pub optimizer_sigma: Option<f64>,
    pub optimizer_n: Option<u32>,
    pub branch: Branch,
}

impl ExponentResult {
    fn closed(value: Option<f64>) -> Self {
        Self {
            value,
            optimizer_sigma: None,
            optimizer_n: None,
            branch: Branch::ClosedForm,
        }
    }
}

/// Optimal cutoff exponents for fixed `alpha`, `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaOptima {
    /// `(d+1)/(alpha+1)`.
    pub lc1: f64,
    /// `(2d+2)/(alpha+2)`.
    pub lc2_exp: f64,
    /// `1 + d/2 - (d/2) sqrt(1 + 2/d - 2/alpha)`.
    pub lc2_min: f64,
}

pub fn sigma_optima(alpha: f64, dim: u32) -> SigmaOptima {
    let d = dim as f64;
    SigmaOptima {
        lc1: (d + 1.0) / (alpha + 1.0),
        lc2_exp: (2.0 * d + 2.0) / (alpha + 2.0),
        lc2_min: 1.0 + d / 2.0 - (d / 2.0) * (1.0 + 2.0 / d - 2.0 / alpha).sqrt(),
    }
}

/// Crossover above which the n = 1 exponent `(alpha+2)/(alpha-2d)` is optimal.
pub fn alpha_m(dim: u32) -> f64 {
    let d = dim as f64;
    1.5 * d * (1.0 + (1.0 + 8.0 / (9.0 * d)).sqrt())
}

/// `2/(alpha-d)^2 [alpha - d + alpha d (1 + sqrt(1 + 2/d - 2/alpha))]`.
pub fn beta_tilde(alpha: f64, dim: u32) -> f64 {
    let d = dim as f64;
    let gap = alpha - d;
    2.0 / (gap * gap) * (gap + alpha * d * (1.0 + (1.0 + 2.0 / d - 2.0 / alpha).sqrt()))
}

fn n1_lc2(alpha: f64, d: f64) -> f64 {
    (alpha + 2.0) / (alpha - 2.0 * d)
}

/// `(alpha+1)/(alpha-d)` for every method.
pub fn lc1_exponent(q: &LightconeQuery) -> Result<ExponentResult> {
    q.validate()?;
    let d = q.dim as f64;
    let value = (q.alpha + 1.0) / (q.alpha - d);
    Ok(match q.method {
        Method::ThisWork => ExponentResult {
            value: Some(value),
            optimizer_sigma: Some(sigma_optima(q.alpha, q.dim).lc1),
            optimizer_n: None,
            branch: Branch::ExpPoly,
        },
        Method::FossFeig | Method::Matsuta => ExponentResult::closed(Some(value)),
    })
}

pub fn lc2_exponent(q: &LightconeQuery) -> Result<ExponentResult> {
    q.validate()?;
    let (alpha, d) = (q.alpha, q.dim as f64);
    Ok(match q.method {
        Method::ThisWork if alpha < alpha_m(q.dim) => ExponentResult {
            value: Some(beta_tilde(alpha, q.dim)),
            optimizer_sigma: Some(sigma_optima(alpha, q.dim).lc2_min),
            optimizer_n: None,
            branch: Branch::PolyMinimum,
        },
        Method::ThisWork => ExponentResult {
            value: Some(n1_lc2(alpha, d)),
            optimizer_sigma: Some(sigma_optima(alpha, q.dim).lc2_exp),
            optimizer_n: None,
            branch: Branch::ExpPoly,
        },
        Method::Matsuta if alpha <= 2.0 * d => ExponentResult::closed(None),
        Method::Matsuta => ExponentResult::closed(Some(n1_lc2(alpha, d))),
        Method::FossFeig => ExponentResult::closed(Some(
            (alpha + d) / alpha * (alpha + 1.0) / (alpha - d) + 1.0 / alpha,
        )),
    })
}

pub fn exponent(q: &LightconeQuery) -> Result<ExponentResult> {
    match q.which {
        Which::Lc1 => lc1_exponent(q),
        Which::Lc2 => lc2_exponent(q),
    }
}
