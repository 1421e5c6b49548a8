//! Power-law light-cone exponents: closed forms for the three bounds, a
//! numerical optimizer over the derived bound family, and curve export.

mod closed_form;
mod curve;
mod numeric;

pub use closed_form::{
    alpha_m, beta_tilde, exponent, lc1_exponent, lc2_exponent, sigma_optima, Branch,
    ExponentResult, LightconeQuery, Method, SigmaOptima, Which,
};
pub use curve::{curve, curve_csv, curve_json, CurveRow};
pub use numeric::lc_exponent_numeric;
