//! Operator norms of dense complex matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pauli::C64;

/// Above this dimension Hermitian norms use Lanczos instead of a full
/// eigenvalue solve.
pub const DENSE_NORM_MAX_DIM: usize = 64;

const LANCZOS_SEED: u64 = 0x5eed_1a2c;
const LANCZOS_REL_TOL: f64 = 1e-13;
const CHECK_EVERY: usize = 8;
const MAX_LANCZOS: usize = 400;

fn is_hermitian(m: &DMatrix<C64>, sign: f64) -> bool {
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = 1e-12 * scale.max(1e-300);
    let n = m.nrows();
    for j in 0..n {
        for i in 0..=j {
            if (m[(i, j)] - m[(j, i)].conj() * sign).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Spectral norm: exact eigenvalues or Lanczos for (anti-)Hermitian input,
/// singular values otherwise.
pub fn op_norm(m: &DMatrix<C64>) -> f64 {
    assert!(m.is_square(), "operator norm of a non-square matrix");
    if m.nrows() == 0 {
        return 0.0;
    }
    if is_hermitian(m, 1.0) {
        hermitian_norm(m)
    } else if is_hermitian(m, -1.0) {
        hermitian_norm(&(m * C64::new(0.0, 1.0)))
    } else {
        m.clone().singular_values().max()
    }
}

/// `max |lambda|` of a Hermitian matrix.
pub fn hermitian_norm(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    if n <= DENSE_NORM_MAX_DIM {
        return m
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .fold(0.0, |acc: f64, v| acc.max(v.abs()));
    }
    // [[Re, -Im], [Im, Re]] is real symmetric with the same spectrum, doubled.
    let (re, im) = (m.map(|z| z.re), m.map(|z| z.im));
    lanczos_norm(2 * n, |q| {
        let (x, y) = (q.rows(0, n), q.rows(n, n));
        let mut out = DVector::zeros(2 * n);
        out.rows_mut(0, n).copy_from(&(&re * x - &im * y));
        out.rows_mut(n, n).copy_from(&(&im * x + &re * y));
        out
    })
}

/// Largest singular value of a complex matrix.
pub fn max_singular_value(b: &DMatrix<C64>) -> f64 {
    if b.iter().all(|z| *z == C64::new(0.0, 0.0)) {
        return 0.0;
    }
    let (rows, cols) = b.shape();
    let (re, im) = (b.map(|z| z.re), b.map(|z| z.im));
    if cols <= DENSE_NORM_MAX_DIM {
        let r = DMatrix::from_fn(2 * rows, 2 * cols, |i, j| {
            let (bi, bj) = (i % rows, j % cols);
            match (i < rows, j < cols) {
                (true, true) | (false, false) => re[(bi, bj)],
                (true, false) => -im[(bi, bj)],
                (false, true) => im[(bi, bj)],
            }
        });
        let gram = r.tr_mul(&r);
        return gram
            .symmetric_eigenvalues()
            .iter()
            .fold(0.0, |acc: f64, v| acc.max(v.abs()))
            .sqrt();
    }
    lanczos_norm(2 * cols, |q| {
        let (x, y) = (q.rows(0, cols), q.rows(cols, cols));
        let u = &re * x - &im * y;
        let v = &im * x + &re * y;
        let mut out = DVector::zeros(2 * cols);
        out.rows_mut(0, cols).copy_from(&(re.tr_mul(&u) + im.tr_mul(&v)));
        out.rows_mut(cols, cols).copy_from(&(re.tr_mul(&v) - im.tr_mul(&u)));
        out
    })
    .sqrt()
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng, basis: &[DVector<f64>]) -> Option<DVector<f64>> {
    for _ in 0..8 {
        let mut v = DVector::from_fn(n, |_, _| rng.random::<f64>() - 0.5);
        for q in basis {
            let overlap = q.dot(&v);
            v.axpy(-overlap, q, 1.0);
        }
        let norm = v.norm();
        if norm > 1e-8 {
            return Some(v / norm);
        }
    }
    None
}

fn tridiagonal_extreme(alphas: &[f64], betas: &[f64]) -> (f64, f64) {
    let k = alphas.len();
    let t = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            alphas[i]
        } else if i + 1 == j {
            betas[i]
        } else if j + 1 == i {
            betas[j]
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(t);
    let (idx, theta) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .expect("non-empty");
    (theta.abs(), eig.eigenvectors[(k - 1, idx)].abs())
}

/// `max |lambda|` of the real symmetric operator `apply` on `R^n`, by Lanczos
/// with full reorthogonalization; stops when the residual of the
/// largest-magnitude Ritz pair falls below `1e-13` relative.
fn lanczos_norm(n: usize, apply: impl Fn(&DVector<f64>) -> DVector<f64>) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(LANCZOS_SEED);
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut alphas = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut q = random_unit(n, &mut rng, &basis).expect("non-trivial space");
    let mut next_check = CHECK_EVERY;
    loop {
        let mut w = apply(&q);
        let alpha = q.dot(&w);
        basis.push(q);
        alphas.push(alpha);
        for _ in 0..2 {
            for v in &basis {
                let overlap = v.dot(&w);
                w.axpy(-overlap, v, 1.0);
            }
        }
        let beta = w.norm();
        let k = basis.len();
        let scale = alphas.iter().chain(&betas).fold(beta, |a, b| a.max(b.abs()));
        let breakdown = beta <= 1e-12 * scale.max(1e-300);
        if k >= next_check || k == n || k > MAX_LANCZOS || breakdown {
            next_check = k + CHECK_EVERY.max(k / 8);
            let (theta, last) = tridiagonal_extreme(&alphas, &betas);
            if k == n || k > MAX_LANCZOS || beta * last <= LANCZOS_REL_TOL * theta.max(1e-300) {
                return theta;
            }
        }
        if breakdown {
            match random_unit(n, &mut rng, &basis) {
                Some(v) => {
                    betas.push(0.0);
                    q = v;
                }
                None => return tridiagonal_extreme(&alphas, &betas).0,
            }
        } else {
            betas.push(beta);
            q = w / beta;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_hermitian(n: usize, seed: u64) -> DMatrix<C64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DMatrix::from_fn(n, n, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        &a + a.adjoint()
    }

    #[test]
    fn lanczos_agrees_with_dense() {
        for (n, seed) in [(300, 1), (512, 2)] {
            let h = random_hermitian(n, seed);
            let dense = h
                .clone()
                .symmetric_eigenvalues()
                .iter()
                .fold(0.0, |acc: f64, v| acc.max(v.abs()));
            let lz = hermitian_norm(&h);
            assert!((dense - lz).abs() < 1e-10 * dense, "{dense} vs {lz}");
        }
    }

    #[test]
    fn singular_value_paths_agree_with_svd() {
        for (rows, cols, seed) in [(30, 20, 3), (100, 90, 4), (128, 128, 5)] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = DMatrix::from_fn(rows, cols, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            let svd = b.clone().singular_values().max();
            let ours = max_singular_value(&b);
            assert!((svd - ours).abs() < 1e-11 * svd, "{svd} vs {ours}");
        }
    }

    #[test]
    fn degenerate_spectrum() {
        let mut h = DMatrix::<C64>::identity(400, 400) * C64::new(-3.0, 0.0);
        h[(7, 7)] = C64::new(2.0, 0.0);
        assert!((op_norm(&h) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn non_normal_uses_singular_values() {
        let m = DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(2.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);
        assert!((op_norm(&m) - 2.0).abs() < 1e-15);
        let anti = DMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(1.5, 0.0), C64::new(-1.5, 0.0), C64::new(0.0, 0.0)]);
        assert!((op_norm(&anti) - 1.5).abs() < 1e-15);
    }
}
