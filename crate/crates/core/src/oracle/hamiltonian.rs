use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::lattice::Lattice;
use super::linalg::hermitian_norm;
use super::pauli::{parse_ops, Masks, Pauli, C64};
use crate::error::{Error, Result};

/// Largest register the oracle will build.
pub const MAX_SITES: usize = 14;

/// `coeff * ops[0] (x) ops[1] (x) ...` acting on `support` (sorted, distinct).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub support: Vec<usize>,
    pub ops: String,
    pub coeff: f64,
}

impl Term {
    /// Sorts the support (permuting operators alongside) and validates.
    pub fn new(support: Vec<usize>, ops: &str, coeff: f64) -> Result<Self> {
        let paulis = parse_ops(ops)?;
        if paulis.len() != support.len() {
            return Err(Error::InvalidParameter(format!(
                "operator string '{ops}' does not match support of size {}",
                support.len()
            )));
        }
        if !coeff.is_finite() {
            return Err(Error::InvalidParameter(format!("coefficient {coeff} is not finite")));
        }
        let mut pairs: Vec<(usize, char)> = support.into_iter().zip(ops.chars()).collect();
        pairs.sort_by_key(|p| p.0);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter("support lists a site twice".into()));
        }
        if pairs.is_empty() {
            return Err(Error::InvalidParameter("term has empty support".into()));
        }
        Ok(Self {
            support: pairs.iter().map(|p| p.0).collect(),
            ops: pairs.iter().map(|p| p.1).collect(),
            coeff,
        })
    }

    pub fn paulis(&self) -> Vec<Pauli> {
        parse_ops(&self.ops).expect("validated on construction")
    }

    pub fn masks(&self) -> Masks {
        Masks::new(&self.support, &self.paulis())
    }
}

/// Lattice plus Pauli-string terms; `H_Z` is the sum of all terms whose
/// support is exactly `Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    pub lattice: Lattice,
    pub terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct HamiltonianJson {
    dim: usize,
    sites: Vec<Vec<f64>>,
    terms: Vec<Term>,
}

impl HamiltonianSpec {
    pub fn new(lattice: Lattice, terms: Vec<Term>) -> Result<Self> {
        let h = Self { lattice, terms };
        h.validate()?;
        Ok(h)
    }

    pub fn empty(lattice: Lattice) -> Self {
        Self {
            lattice,
            terms: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for t in &self.terms {
            let normalized = Term::new(t.support.clone(), &t.ops, t.coeff)?;
            if &normalized != t {
                return Err(Error::InvalidParameter(
                    "term supports must be sorted ascending".into(),
                ));
            }
            for &s in &t.support {
                self.lattice.check_site(s)?;
            }
        }
        Ok(())
    }

    pub fn n_sites(&self) -> usize {
        self.lattice.len()
    }

    pub fn push(&mut self, term: Term) -> Result<()> {
        for &s in &term.support {
            self.lattice.check_site(s)?;
        }
        self.terms.push(term);
        Ok(())
    }

    /// `H` with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut h = self.clone();
        h.terms.iter_mut().for_each(|t| t.coeff *= factor);
        h
    }

    /// Terms grouped by support, same-operator terms merged.
    pub fn grouped(&self) -> BTreeMap<Vec<usize>, BTreeMap<String, f64>> {
        let mut groups: BTreeMap<Vec<usize>, BTreeMap<String, f64>> = BTreeMap::new();
        for t in &self.terms {
            *groups
                .entry(t.support.clone())
                .or_default()
                .entry(t.ops.clone())
                .or_insert(0.0) += t.coeff;
        }
        groups
    }

    /// `||H_Z||` for every support `Z`.
    pub fn support_norms(&self) -> Vec<(Vec<usize>, f64)> {
        self.grouped()
            .into_iter()
            .map(|(z, ops)| {
                let n = group_norm(z.len(), &ops);
                (z, n)
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = HamiltonianJson {
            dim: self.lattice.dim(),
            sites: (0..self.n_sites())
                .map(|i| self.lattice.position(i).to_vec())
                .collect(),
            terms: self.terms.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: HamiltonianJson = serde_json::from_str(s)
            .map_err(|e| Error::InvalidParameter(format!("Hamiltonian JSON: {e}")))?;
        if doc.sites.iter().any(|p| p.len() != doc.dim) {
            return Err(Error::InvalidParameter("site coordinates do not match dim".into()));
        }
        let lattice = Lattice::from_positions(doc.sites)?;
        let terms = doc
            .terms
            .into_iter()
            .map(|t| Term::new(t.support, &t.ops, t.coeff))
            .collect::<Result<_>>()?;
        Self::new(lattice, terms)
    }

    /// Dense `2^n x 2^n` matrix.
    pub fn matrix(&self) -> Result<DMatrix<C64>> {
        let n = self.n_sites();
        if n > MAX_SITES {
            return Err(Error::HilbertTooLarge {
                sites: n,
                max: MAX_SITES,
            });
        }
        let dim = 1usize << n;
        let mut m = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            t.masks().accumulate(t.coeff, &mut m);
        }
        Ok(m)
    }

    /// True when every term has an even number of `Y` factors.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.masks().is_real())
    }
}

/// Exact norm of `sum_k c_k P_k` on `k` local qubits.
fn group_norm(n_local: usize, ops: &BTreeMap<String, f64>) -> f64 {
    let nonzero: Vec<(&String, f64)> = ops.iter().map(|(o, &c)| (o, c)).filter(|p| p.1 != 0.0).collect();
    match nonzero.len() {
        0 => 0.0,
        1 => nonzero[0].1.abs(),
        _ => {
            let local: Vec<usize> = (0..n_local).collect();
            let dim = 1usize << n_local;
            let mut m = DMatrix::zeros(dim, dim);
            for (o, c) in nonzero {
                Masks::new(&local, &parse_ops(o).expect("validated")).accumulate(c, &mut m);
            }
            hermitian_norm(&m)
        }
    }
}

/// Unit-norm Pauli-string observable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableSpec {
    pub support: Vec<usize>,
    pub ops: String,
}

impl ObservableSpec {
    pub fn new(support: Vec<usize>, ops: &str) -> Result<Self> {
        let t = Term::new(support, ops, 1.0)?;
        Ok(Self {
            support: t.support,
            ops: t.ops,
        })
    }

    pub fn single(site: usize, op: Pauli) -> Self {
        let c = match op {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        };
        Self {
            support: vec![site],
            ops: c.to_string(),
        }
    }

    pub fn masks(&self) -> Masks {
        Masks::new(&self.support, &parse_ops(&self.ops).expect("validated"))
    }

    pub fn check(&self, lattice: &Lattice) -> Result<()> {
        Term::new(self.support.clone(), &self.ops, 1.0)?;
        self.support.iter().try_for_each(|&s| lattice.check_site(s))
    }

    pub fn matrix(&self, n_sites: usize) -> DMatrix<C64> {
        self.masks().to_matrix(n_sites)
    }
}

/// Short-range part added to the power-law couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShortRange {
    None,
    /// `h sum_i X_i`.
    TransverseField(f64),
}

impl Default for ShortRange {
    fn default() -> Self {
        ShortRange::TransverseField(1.0)
    }
}

/// `J sum_{i<j} Z_i Z_j / r_ij^{d+alpha}` on an `L`-site chain (`dim = 1`) or
/// `L x L` square (`dim = 2`), plus the short-range part.
pub fn build_power_law_ising(
    l: usize,
    alpha: f64,
    dim: u32,
    coupling: f64,
    short_range: ShortRange,
) -> Result<HamiltonianSpec> {
    if l < 2 {
        return Err(Error::InvalidParameter(format!("L = {l} must be at least 2")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must be positive")));
    }
    let lattice = match dim {
        1 => Lattice::chain(l),
        2 => {
            if l * l > MAX_SITES {
                return Err(Error::HilbertTooLarge {
                    sites: l * l,
                    max: MAX_SITES,
                });
            }
            Lattice::square(l)
        }
        _ => return Err(Error::InvalidParameter(format!("dim = {dim} not in {{1, 2}}"))),
    };
    if lattice.len() > MAX_SITES {
        return Err(Error::HilbertTooLarge {
            sites: lattice.len(),
            max: MAX_SITES,
        });
    }
    let n = lattice.len();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let r = lattice.distance(i, j);
            terms.push(Term::new(vec![i, j], "ZZ", coupling / r.powf(dim as f64 + alpha))?);
        }
    }
    if let ShortRange::TransverseField(h) = short_range {
        for i in 0..n {
            terms.push(Term::new(vec![i], "X", h)?);
        }
    }
    HamiltonianSpec::new(lattice, terms)
}

/// `f(R) = sup_z sum_{Z containing z, diam Z >= R} ||H_Z||`.
pub fn decay_profile(h: &HamiltonianSpec, big_r: f64) -> f64 {
    let norms = h.support_norms();
    per_site_max(h.n_sites(), norms.iter().filter(|(z, _)| h.lattice.diameter_of(z) >= big_r))
}

fn per_site_max<'a>(n: usize, norms: impl Iterator<Item = &'a (Vec<usize>, f64)>) -> f64 {
    let mut acc = vec![0.0; n];
    for (z, v) in norms {
        for &s in z {
            acc[s] += v;
        }
    }
    acc.into_iter().fold(0.0, f64::max)
}

/// `sup_z sum_{Z containing z} ||H_Z||`.
pub fn per_site_budget(h: &HamiltonianSpec) -> f64 {
    decay_profile(h, 0.0)
}

/// `C0 = sup_x sum_y sum_{Z containing x and y} ||H_Z||`, `y` running over all
/// sites including `x`.
pub fn interaction_budget(h: &HamiltonianSpec) -> f64 {
    let norms = h.support_norms();
    let mut acc = vec![0.0; h.n_sites()];
    for (z, v) in &norms {
        for &x in z {
            acc[x] += z.len() as f64 * v;
        }
    }
    acc.into_iter().fold(0.0, f64::max)
}

/// Smallest `J` with `f(R) <= J R^{-alpha}` at every integer `R` up to the
/// lattice diameter and at every term diameter `>= 1`.
pub fn fit_decay(h: &HamiltonianSpec, alpha: f64) -> f64 {
    let mut radii: Vec<f64> = (1..=h.lattice.diameter().floor() as usize).map(|r| r as f64).collect();
    radii.extend(
        h.terms
            .iter()
            .map(|t| h.lattice.diameter_of(&t.support))
            .filter(|&d| d >= 1.0),
    );
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    radii
        .into_iter()
        .map(|r| decay_profile(h, r) * r.powf(alpha))
        .fold(0.0, f64::max)
}

/// Per-support norms of `H1 - H2`.
pub fn difference_norms(h1: &HamiltonianSpec, h2: &HamiltonianSpec) -> Result<Vec<(Vec<usize>, f64)>> {
    if h1.lattice != h2.lattice {
        return Err(Error::LatticeMismatch);
    }
    let mut diff = h1.grouped();
    for (z, ops) in h2.grouped() {
        let entry = diff.entry(z).or_default();
        for (o, c) in ops {
            *entry.entry(o).or_insert(0.0) -= c;
        }
    }
    Ok(diff
        .into_iter()
        .map(|(z, ops)| {
            let n = group_norm(z.len(), &ops);
            (z, n)
        })
        .filter(|(_, n)| *n > 0.0)
        .collect())
}

/// `sup_x sum_{Z containing x} ||(H1)_Z - (H2)_Z||`.
pub fn delta_j(h1: &HamiltonianSpec, h2: &HamiltonianSpec) -> Result<f64> {
    let norms = difference_norms(h1, h2)?;
    Ok(per_site_max(h1.n_sites(), norms.iter()))
}

/// `sum_Z ||(H1)_Z - (H2)_Z||`.
pub fn total_difference(h1: &HamiltonianSpec, h2: &HamiltonianSpec) -> Result<f64> {
    Ok(difference_norms(h1, h2)?.iter().map(|p| p.1).sum())
}
