use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dynamics::{pauli_commutator_norm, Evolver};
use super::hamiltonian::{fit_decay, interaction_budget, HamiltonianSpec, ObservableSpec};
use super::lattice::Lattice;
use super::pauli::Pauli;
use crate::bound::{BoundDescriptor, ConstantRegistry, ModelParams};
use crate::error::{Error, Result};
use crate::fmt::csv_float;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontRow {
    pub r: f64,
    pub t: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontMeta {
    pub sites: usize,
    pub alpha: f64,
    pub model: String,
    pub seed: Option<u64>,
}

/// Measured `||[tau_t(A), B]||`, one row per `(r, t)` keeping the largest
/// value over probes at the same distance. Rows sorted by `r`, then `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontTable {
    pub meta: FrontMeta,
    pub rows: Vec<FrontRow>,
}

impl FrontTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,t,value\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                csv_float(row.r),
                csv_float(row.t),
                csv_float(row.value)
            ));
        }
        out
    }

    pub fn meta_json(&self) -> String {
        serde_json::to_string_pretty(&self.meta).expect("metadata serializes")
    }

    /// Largest value at `r` over all times.
    pub fn max_at(&self, r: f64) -> Option<f64> {
        self.rows
            .iter()
            .filter(|row| row.r == r)
            .map(|row| row.value)
            .max_by(f64::total_cmp)
    }
}

/// Commutator front of `a` against unit-norm Pauli probes `probe` on each of
/// `probe_sites`, with one spectral decomposition shared by all times.
pub fn front_scan(
    evolver: &Evolver,
    lattice: &Lattice,
    a: &ObservableSpec,
    probe_sites: &[usize],
    probe: Pauli,
    times: &[f64],
    meta: FrontMeta,
) -> Result<FrontTable> {
    if lattice.len() != evolver.n_sites() {
        return Err(Error::LatticeMismatch);
    }
    a.check(lattice)?;
    for &s in probe_sites {
        lattice.check_site(s)?;
    }
    let prepared = evolver.prepare(&a.matrix(evolver.n_sites()));
    let probes: Vec<(f64, ObservableSpec)> = probe_sites
        .iter()
        .map(|&s| (lattice.set_distance(&a.support, &[s]), ObservableSpec::single(s, probe)))
        .collect();
    let per_time: Vec<Vec<FrontRow>> = times
        .par_iter()
        .map(|&t| {
            let m = evolver.evolve_prepared(&prepared, t);
            probes
                .iter()
                .map(|(r, b)| FrontRow {
                    r: *r,
                    t,
                    value: pauli_commutator_norm(&m, &b.masks()),
                })
                .collect()
        })
        .collect();
    let mut merged: BTreeMap<(u64, u64), FrontRow> = BTreeMap::new();
    for row in per_time.into_iter().flatten() {
        let key = (row.r.to_bits(), row.t.to_bits());
        merged
            .entry(key)
            .and_modify(|e| e.value = e.value.max(row.value))
            .or_insert(row);
    }
    let mut rows: Vec<FrontRow> = merged.into_values().collect();
    rows.sort_by(|x, y| x.r.total_cmp(&y.r).then(x.t.total_cmp(&y.t)));
    Ok(FrontTable { meta, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    /// Smallest `kappa` with `kappa * bound(r, t) >= value` at every row with `r >= 1`.
    pub kappa: f64,
    /// Row where `value / bound` peaks; `None` when every value is zero.
    pub r: Option<f64>,
    pub t: Option<f64>,
}

/// Bound parameters with `J` and `C0` measured on `h` instead of assumed.
pub fn fitted_params(h: &HamiltonianSpec, alpha: f64, x_size: u32) -> Result<ModelParams> {
    ModelParams::new(
        alpha,
        h.lattice.dim() as u32,
        fit_decay(h, alpha),
        interaction_budget(h),
        x_size,
        ConstantRegistry::default(),
    )
}

pub fn dominance_report(front: &FrontTable, bound: &BoundDescriptor) -> DominanceReport {
    let mut report = DominanceReport {
        kappa: 0.0,
        r: None,
        t: None,
    };
    for row in front.rows.iter().filter(|row| row.r >= 1.0 && row.value > 0.0) {
        let b = bound.eval(row.r, row.t);
        let ratio = if b > 0.0 { row.value / b } else { f64::INFINITY };
        if ratio > report.kappa {
            report = DominanceReport {
                kappa: ratio,
                r: Some(row.r),
                t: Some(row.t),
            };
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound::{Cutoff, PowerLawTerm, TauPolynomial};
    use crate::oracle::hamiltonian::{build_power_law_ising, ShortRange};

    fn meta() -> FrontMeta {
        FrontMeta {
            sites: 6,
            alpha: 2.0,
            model: "ising".into(),
            seed: None,
        }
    }

    fn power_bound() -> BoundDescriptor {
        BoundDescriptor {
            params: ModelParams::unit(2.0, 1).unwrap(),
            sigma_exp: Some(0.5),
            exp_prefactor: TauPolynomial::zero(),
            poly_terms: vec![PowerLawTerm {
                r_exponent: -2.0,
                prefactor: TauPolynomial::monomial(1.0, 1.0, 0),
                cutoff_power: None,
            }],
            cutoff: Cutoff::Infinite,
            iteration_count: 1,
        }
    }

    #[test]
    fn scan_shape_and_zero_time() {
        let h = build_power_law_ising(6, 2.0, 1, 1.0, ShortRange::default()).unwrap();
        let ev = Evolver::new(&h).unwrap();
        let a = ObservableSpec::single(0, Pauli::Z);
        let sites: Vec<usize> = (1..6).collect();
        let front = front_scan(&ev, &h.lattice, &a, &sites, Pauli::X, &[0.0, 0.1, 0.5], meta()).unwrap();
        assert_eq!(front.rows.len(), 15);
        for row in &front.rows {
            assert!(row.value <= 2.0 + 1e-12);
            if row.t == 0.0 {
                assert!(row.value < 1e-12);
            }
        }
        let near = front.rows.iter().find(|r| r.r == 1.0 && r.t == 0.1).unwrap().value;
        let far = front.rows.iter().find(|r| r.r == 5.0 && r.t == 0.1).unwrap().value;
        assert!(far < near);
        assert!(front.to_csv().starts_with("r,t,value\n1,0,"));
    }

    #[test]
    fn dominance_trivial_cases() {
        let b = power_bound();
        let zeros = FrontTable {
            meta: meta(),
            rows: vec![FrontRow { r: 2.0, t: 1.0, value: 0.0 }],
        };
        assert_eq!(dominance_report(&zeros, &b).kappa, 0.0);
        let rows: Vec<FrontRow> = [(2.0, 1.0), (3.0, 1.5), (5.0, 0.4)]
            .iter()
            .map(|&(r, t)| FrontRow { r, t, value: b.eval(r, t) })
            .collect();
        let same = FrontTable { meta: meta(), rows };
        assert!((dominance_report(&same, &b).kappa - 1.0).abs() < 1e-15);
    }
}
