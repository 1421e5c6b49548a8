use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    Command, DeriveArgs, Format, LatticeKind, LemmaGammaArgs, LemmaSumArgs, LightconeArgs, Model,
    PerturbArgs, VerifyArgs,
};
use crate::bound::{BoundDescriptor, Cutoff, ModelParams};
use crate::error::Error;
use crate::fmt::csv_float;
use crate::iteration::{
    check_incomplete_gamma, check_sum_vs_integral, derive_bound, initial_bound, n_star,
    SigmaSchedule,
};
use crate::lightcone::{curve, curve_csv, curve_json};
use crate::oracle::{
    build_power_law_ising, difference_norms, dominance_report, fitted_params, front_scan,
    op_norm, Evolver, FrontMeta, FrontTable, HamiltonianSpec, Lattice, ObservableSpec, Pauli,
    ShortRange, Term, MAX_SITES,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Other(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::QuadratureFailed { .. } | Error::Decomposition(_) => {
                CliError::Invariant(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

const SIGMA_NUDGE: f64 = 1e-9;

type CliResult<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn emit(out: &Option<PathBuf>, content: &str) -> CliResult<()> {
    let mut text = content.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(CliError::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(CliError::from)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn time_grid(tmax: f64, steps: usize) -> CliResult<Vec<f64>> {
    if !(tmax >= 0.0 && tmax.is_finite()) {
        return Err(invalid(format!("tmax = {tmax} must be finite and non-negative")));
    }
    if steps < 2 {
        return Err(invalid(format!("steps = {steps} must be at least 2")));
    }
    Ok((0..steps)
        .map(|i| tmax * i as f64 / (steps - 1) as f64)
        .collect())
}

fn check_theorem_sigma(sigma: f64, params: &ModelParams, loose: bool) -> CliResult<()> {
    let lower = if loose {
        params.d() / params.alpha
    } else {
        (params.d() + 1.0) / (params.alpha + 1.0)
    };
    if !(sigma > lower && sigma < 1.0) {
        return Err(invalid(format!("sigma = {sigma} outside ({lower}, 1)")));
    }
    Ok(())
}

fn fresh_bound(params: &ModelParams, sigma: f64, iterations: Option<usize>) -> CliResult<BoundDescriptor> {
    check_theorem_sigma(sigma, params, false)?;
    let m = match iterations {
        Some(m) => m,
        None => n_star(sigma, params)? as usize + 2,
    };
    if m == 0 {
        return Ok(initial_bound(params, Cutoff::Infinite));
    }
    uniform_bound(params, sigma, m)
}

/// Uniform-schedule bound; a schedule landing exactly on `d + mu = 0` is
/// retried with `sigma` moved by `SIGMA_NUDGE`.
fn uniform_bound(params: &ModelParams, sigma: f64, m: usize) -> CliResult<BoundDescriptor> {
    let mut last = None;
    for s in [sigma, sigma + SIGMA_NUDGE, sigma - SIGMA_NUDGE] {
        if !(s < 1.0) {
            continue;
        }
        match derive_bound(params, &SigmaSchedule::uniform(s, m)?) {
            Err(e @ Error::LogarithmicCase { .. }) => last = Some(e),
            other => return Ok(other?),
        }
    }
    Err(last.expect("at least one attempt").into())
}

pub fn dispatch(command: &Command) -> CliResult<()> {
    match command {
        Command::Derive(a) => cmd_derive(a),
        Command::Lightcone(a) => cmd_lightcone(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Perturb(a) => cmd_perturb(a),
        Command::LemmaGamma(a) => cmd_lemma_gamma(a),
        Command::LemmaSum(a) => cmd_lemma_sum(a),
    }
}

fn cmd_derive(a: &DeriveArgs) -> CliResult<()> {
    let params = ModelParams::new(
        a.alpha,
        a.dim,
        a.j_const,
        a.c0,
        a.x_size,
        Default::default(),
    )?;
    check_theorem_sigma(a.sigma, &params, a.allow_loose_sigma)?;
    let bound = if a.iterations == 0 {
        initial_bound(&params, Cutoff::Infinite)
    } else {
        uniform_bound(&params, a.sigma, a.iterations)?
    };
    emit(&a.out, &bound.to_json())
}

fn cmd_lightcone(a: &LightconeArgs) -> CliResult<()> {
    if !(a.alpha_min > a.dim as f64) {
        return Err(invalid(format!(
            "alpha-min = {} must exceed dim = {}",
            a.alpha_min, a.dim
        )));
    }
    let rows = curve(a.dim, a.alpha_min, a.alpha_max, a.steps, a.which)?;
    let methods = a.method.methods();
    let text = match a.format {
        Format::Csv => curve_csv(&rows, &methods),
        Format::Json => curve_json(&rows, &methods),
    };
    emit(&a.out, &text)
}

#[derive(Serialize)]
struct FrontSummary {
    rows: usize,
    distances: Vec<f64>,
    times: usize,
    max_value: f64,
    min_value: f64,
}

#[derive(Serialize)]
struct Invariants {
    unitarity_max_error: f64,
    zero_at_t0_max: f64,
    max_value: f64,
    analytic_max_error: Option<f64>,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a VerifyArgs,
    sites: usize,
    bound_sigma: Option<f64>,
    bound_iterations: u32,
    kappa: f64,
    kappa_r: Option<f64>,
    kappa_t: Option<f64>,
    front: FrontSummary,
    invariants: Invariants,
}

fn summarize(front: &FrontTable) -> FrontSummary {
    let mut distances: Vec<f64> = front.rows.iter().map(|r| r.r).collect();
    distances.dedup();
    let values = front.rows.iter().map(|r| r.value);
    FrontSummary {
        rows: front.rows.len(),
        times: front.rows.len() / distances.len().max(1),
        distances,
        max_value: values.clone().fold(0.0, f64::max),
        min_value: values.fold(f64::INFINITY, f64::min),
    }
}

fn write_front(path: &Path, front: &FrontTable) -> CliResult<()> {
    emit(&Some(path.to_path_buf()), &front.to_csv())?;
    emit(&Some(path.with_extension("meta.json")), &front.meta_json())
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<()> {
    let times = time_grid(a.tmax, a.steps)?;
    if a.sites > MAX_SITES {
        return Err(invalid(format!("sites = {} exceeds the cap of {MAX_SITES}", a.sites)));
    }
    let (h, obs, probe_sites, probe) = match a.model {
        Model::Ising => {
            let h = build_power_law_ising(a.sites, a.alpha, 1, 1.0, ShortRange::default())?;
            let probes: Vec<usize> = (1..a.sites).collect();
            (h, ObservableSpec::single(0, Pauli::Z), probes, Pauli::X)
        }
        Model::TwoSite => {
            let h = HamiltonianSpec::new(Lattice::chain(2), vec![Term::new(vec![0, 1], "ZZ", 1.0)?])?;
            (h, ObservableSpec::single(0, Pauli::X), vec![1], Pauli::X)
        }
    };
    let bound = match &a.bound_file {
        Some(path) => BoundDescriptor::from_json(&read(path)?)?,
        None => fresh_bound(&fitted_params(&h, a.alpha, 1)?, a.sigma, a.iterations)?,
    };
    let evolver = Evolver::new(&h)?;
    let meta = FrontMeta {
        sites: h.n_sites(),
        alpha: a.alpha,
        model: match a.model {
            Model::Ising => "power_law_ising".into(),
            Model::TwoSite => "two_site_zz".into(),
        },
        seed: None,
    };
    let front = front_scan(&evolver, &h.lattice, &obs, &probe_sites, probe, &times, meta)?;
    if let Some(path) = &a.front_out {
        write_front(path, &front)?;
    }
    let dominance = dominance_report(&front, &bound);

    let prepared = evolver.prepare(&obs.matrix(h.n_sites()));
    let unitarity_max_error = times
        .par_iter()
        .map(|&t| (op_norm(&evolver.evolve_prepared(&prepared, t)) - 1.0).abs())
        .reduce(|| 0.0, f64::max);
    let zero_at_t0_max = front
        .rows
        .iter()
        .filter(|r| r.t == 0.0 && r.r > 0.0)
        .map(|r| r.value)
        .fold(0.0, f64::max);
    let summary = summarize(&front);
    let analytic_max_error = (a.model == Model::TwoSite).then(|| {
        front
            .rows
            .iter()
            .map(|r| (r.value - 2.0 * (2.0 * r.t).sin().abs()).abs())
            .fold(0.0, f64::max)
    });
    let passed = unitarity_max_error <= 1e-9
        && zero_at_t0_max <= 1e-12
        && summary.max_value <= 2.0 + 1e-9
        && analytic_max_error.is_none_or(|e| e <= 1e-10);
    let report = VerifyReport {
        config: a,
        sites: h.n_sites(),
        bound_sigma: bound.sigma_exp,
        bound_iterations: bound.iteration_count,
        kappa: dominance.kappa,
        kappa_r: dominance.r,
        kappa_t: dominance.t,
        front: summary,
        invariants: Invariants {
            unitarity_max_error,
            zero_at_t0_max,
            max_value: 0.0,
            analytic_max_error,
            passed,
        },
    };
    let report = VerifyReport {
        invariants: Invariants {
            max_value: report.front.max_value,
            ..report.invariants
        },
        ..report
    };
    emit(&a.out, &to_json(&report))?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Invariant(format!(
            "unitarity error {unitarity_max_error:e}, t = 0 commutator {zero_at_t0_max:e}, analytic error {analytic_max_error:?}"
        )))
    }
}

#[derive(Serialize)]
struct PerturbRow {
    t: f64,
    lhs: f64,
    duhamel: f64,
    bound: f64,
}

#[derive(Serialize)]
struct PerturbReport<'a> {
    config: &'a PerturbArgs,
    delta_terms: usize,
    delta_total: f64,
    delta_j: f64,
    kappa: f64,
    rows: Vec<PerturbRow>,
}

fn cmd_perturb(a: &PerturbArgs) -> CliResult<()> {
    let times = time_grid(a.tmax, a.steps)?;
    if a.sites > MAX_SITES {
        return Err(invalid(format!("sites = {} exceeds the cap of {MAX_SITES}", a.sites)));
    }
    let h1 = build_power_law_ising(a.sites, a.alpha, 1, 1.0, ShortRange::default())?;
    h1.lattice.check_site(a.site)?;
    let obs = ObservableSpec::single(a.site, Pauli::Z);
    let delta: Vec<Term> = match &a.delta_file {
        Some(path) => {
            let raw: Vec<Term> = serde_json::from_str(&read(path)?)
                .map_err(|e| invalid(format!("delta file: {e}")))?;
            let mut terms = Vec::with_capacity(raw.len());
            for t in raw {
                let t = Term::new(t.support, &t.ops, t.coeff)?;
                t.support.iter().try_for_each(|&s| h1.lattice.check_site(s))?;
                let r = h1.lattice.set_distance(&obs.support, &t.support);
                if r < a.r_min {
                    return Err(invalid(format!(
                        "perturbation on {:?} lies at distance {r} < r_min = {}",
                        t.support, a.r_min
                    )));
                }
                terms.push(t);
            }
            terms
        }
        None => h1
            .terms
            .iter()
            .filter(|t| h1.lattice.set_distance(&obs.support, &t.support) >= a.r_min)
            .map(|t| Term {
                coeff: t.coeff * a.scale,
                ..t.clone()
            })
            .collect(),
    };
    let mut h2 = h1.clone();
    h2.terms.extend(delta.iter().cloned());
    let norms = difference_norms(&h2, &h1)?;
    let delta_total: f64 = norms.iter().map(|p| p.1).sum();
    let delta_j = crate::oracle::delta_j(&h2, &h1)?;

    let ev1 = Evolver::new(&h1)?;
    let ev2 = if delta.is_empty() {
        ev1.clone()
    } else {
        Evolver::new(&h2)?
    };
    let bound = fresh_bound(&fitted_params(&h1, a.alpha, 1)?, a.sigma, None)?;
    let probes: Vec<usize> = (0..a.sites).filter(|&s| s != a.site).collect();
    let meta = FrontMeta {
        sites: a.sites,
        alpha: a.alpha,
        model: "power_law_ising".into(),
        seed: None,
    };
    let front = front_scan(&ev1, &h1.lattice, &obs, &probes, Pauli::X, &times, meta)?;
    let kappa = dominance_report(&front, &bound).kappa;
    let distances: Vec<(f64, f64)> = norms
        .iter()
        .map(|(z, n)| (h1.lattice.set_distance(&obs.support, z), *n))
        .collect();
    let rows: Vec<PerturbRow> = times
        .par_iter()
        .map(|&t| PerturbRow {
            t,
            lhs: ev1.perturbation_diff(&ev2, &obs, t),
            duhamel: 2.0 * t * delta_total,
            bound: kappa * t * distances.iter().map(|&(r, n)| n * bound.eval(r, t)).sum::<f64>(),
        })
        .collect();
    let text = match a.format {
        Format::Json => to_json(&PerturbReport {
            config: a,
            delta_terms: delta.len(),
            delta_total,
            delta_j,
            kappa,
            rows,
        }),
        Format::Csv => {
            let mut out = String::from("t,lhs,duhamel,bound\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_float(r.t),
                    csv_float(r.lhs),
                    csv_float(r.duhamel),
                    csv_float(r.bound)
                ));
            }
            out
        }
    };
    emit(&a.out, &text)
}

fn cmd_lemma_gamma(a: &LemmaGammaArgs) -> CliResult<()> {
    if a.rho.is_empty() {
        return Err(invalid("empty rho grid"));
    }
    let rho_min = a.rho.iter().copied().fold(f64::INFINITY, f64::min);
    let rho_max = a.rho.iter().copied().fold(0.0, f64::max);
    let mut out = String::from("mu,nu,rho_min,rho_max,points,c\n");
    for &mu in &a.mu {
        for &nu in &a.nu {
            let c = check_incomplete_gamma(mu, nu, &a.rho)?;
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_float(mu),
                csv_float(nu),
                csv_float(rho_min),
                csv_float(rho_max),
                a.rho.len(),
                csv_float(c)
            ));
        }
    }
    emit(&a.out, &out)
}

fn cmd_lemma_sum(a: &LemmaSumArgs) -> CliResult<()> {
    if a.size == 0 {
        return Err(invalid("lattice size must be positive"));
    }
    let (lattice, name) = match a.lattice {
        LatticeKind::Chain => (Lattice::chain(a.size), "chain"),
        LatticeKind::Square => (Lattice::square(a.size), "square"),
    };
    let mut out = String::from("lattice,size,decay_exponent,radius,c\n");
    for &p in &a.decay_exponent {
        if !(p > 0.0) {
            return Err(invalid(format!("decay exponent {p} must be positive")));
        }
        let c = check_sum_vs_integral(&lattice, |r| r.powf(-p), a.radius)?;
        out.push_str(&format!(
            "{name},{},{},{},{}\n",
            a.size,
            csv_float(p),
            csv_float(a.radius),
            csv_float(c)
        ));
    }
    emit(&a.out, &out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(Error::InvalidParameter("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(Error::LogarithmicCase { mu: -1.0 }).exit_code(), 2);
        assert_eq!(CliError::from(Error::Decomposition("x".into())).exit_code(), 3);
        assert_eq!(CliError::Other(anyhow::anyhow!("io")).exit_code(), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        super::super::Cli::command().debug_assert();
    }

    #[test]
    fn time_grid_endpoints() {
        let g = time_grid(2.0, 5).unwrap();
        assert_eq!(g, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!(time_grid(2.0, 1).is_err());
        assert!(time_grid(-1.0, 3).is_err());
    }
}
