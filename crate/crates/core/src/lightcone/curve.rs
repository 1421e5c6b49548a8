use rayon::prelude::*;
use serde::Serialize;

use super::closed_form::{exponent, LightconeQuery, Method, Which};
use crate::error::{Error, Result};
use crate::fmt::{csv_float, csv_opt};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub alpha: f64,
    pub this_work: Option<f64>,
    pub foss_feig: Option<f64>,
    pub matsuta: Option<f64>,
}

impl CurveRow {
    pub fn get(&self, method: Method) -> Option<f64> {
        match method {
            Method::ThisWork => self.this_work,
            Method::FossFeig => self.foss_feig,
            Method::Matsuta => self.matsuta,
        }
    }
}

/// Light-cone exponents of all three methods on a uniform `alpha` grid
/// (endpoints included).
pub fn curve(dim: u32, alpha_min: f64, alpha_max: f64, steps: usize, which: Which) -> Result<Vec<CurveRow>> {
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("steps = {steps} must be at least 2")));
    }
    if !(alpha_max > alpha_min) || !alpha_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "alpha range ({alpha_min}, {alpha_max}) is empty"
        )));
    }
    LightconeQuery::new(alpha_min, dim, Method::ThisWork, which)?;
    let h = (alpha_max - alpha_min) / (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let alpha = if i == steps - 1 {
                alpha_max
            } else {
                alpha_min + h * i as f64
            };
            let value = |m| exponent(&LightconeQuery::new(alpha, dim, m, which)?).map(|r| r.value);
            Ok(CurveRow {
                alpha,
                this_work: value(Method::ThisWork)?,
                foss_feig: value(Method::FossFeig)?,
                matsuta: value(Method::Matsuta)?,
            })
        })
        .collect()
}

/// CSV with header `alpha,<methods>`; an empty field means no finite cone.
pub fn curve_csv(rows: &[CurveRow], methods: &[Method]) -> String {
    let mut out = String::from("alpha");
    for m in methods {
        out.push(',');
        out.push_str(m.name());
    }
    out.push('\n');
    for row in rows {
        out.push_str(&csv_float(row.alpha));
        for &m in methods {
            out.push(',');
            out.push_str(&csv_opt(row.get(m)));
        }
        out.push('\n');
    }
    out
}

/// JSON array of rows with explicit `null` for absent cones.
pub fn curve_json(rows: &[CurveRow], methods: &[Method]) -> String {
    let value: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let mut obj = serde_json::Map::new();
            obj.insert("alpha".into(), row.alpha.into());
            for &m in methods {
                obj.insert(m.name().into(), row.get(m).into());
            }
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::to_string_pretty(&value).expect("rows serialize")
}
