//! Generic witness search over N(V): minimize ‖NX + X‖² + ‖NJ + JN‖² over N = F·exp(D),
//! F a discrete representative and D ∈ 𝔫(V).

use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::witness::{verify_witness, Witness};
use crate::error::Result;
use crate::linalg::{combine, flatten, matrix_exp, Matrix};
use crate::normalizer::membership_with_tol;
use crate::optim::lm_on_group;
use crate::pair::MetricPair;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Standard deviation of the random coefficients of D at a restart.
    pub init_scale: f64,
    pub success_penalty: f64,
    pub report_floor: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { restarts: 20, max_iters: 200, init_scale: std::f64::consts::PI, success_penalty: 1e-16, report_floor: 1e-4 }
    }
}

/// Best penalty of every start when no witness was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub best_per_start: Vec<f64>,
    pub best: f64,
    pub restarts: usize,
    /// Every start ended at or above the report floor.
    pub stalled_above_floor: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found(Witness),
    Failed(FailureRecord),
}

fn residual(n: &Matrix, j: &Matrix, x: &DVector<f64>) -> DVector<f64> {
    let a = n * x + x;
    let b = flatten(&(n * j + j * n));
    let mut out = DVector::zeros(a.len() + b.len());
    out.rows_mut(0, a.len()).copy_from(&a);
    out.rows_mut(a.len(), b.len()).copy_from(&b);
    out
}

fn jacobian(n: &Matrix, j: &Matrix, x: &DVector<f64>, dirs: &[Matrix]) -> Matrix {
    let m = x.len();
    let mut out = Matrix::zeros(m + m * m, dirs.len());
    for (i, d) in dirs.iter().enumerate() {
        let nd = n * d;
        let a = &nd * x;
        let b = flatten(&(&nd * j + j * &nd));
        out.view_mut((0, i), (m, 1)).copy_from(&a);
        out.view_mut((m, i), (m * m, 1)).copy_from(&b);
    }
    out
}

/// ‖NX + X‖² + ‖NJ + JN‖².
pub fn penalty(n: &Matrix, j: &Matrix, x: &DVector<f64>) -> f64 {
    residual(n, j, x).norm_squared()
}

/// Derivatives of [`penalty`] along t ↦ N·exp(tDᵢ) at t = 0.
pub fn penalty_gradient(n: &Matrix, j: &Matrix, x: &DVector<f64>, dirs: &[Matrix]) -> Vec<f64> {
    let r = residual(n, j, x);
    let jm = jacobian(n, j, x, dirs);
    (jm.transpose() * r * 2.0).as_slice().to_vec()
}

/// The candidates that are members of N(V).
pub fn filter_members(pair: &MetricPair, candidates: &[Matrix], tol: f64) -> Vec<Matrix> {
    candidates
        .iter()
        .filter(|c| c.shape() == (pair.dim_a(), pair.dim_a()))
        .filter(|c| membership_with_tol(pair, c, tol).is_ok_and(|m| m.is_member))
        .cloned()
        .collect()
}

/// Local search from a given start, staying in its component of N(V).
pub fn search_from(pair: &MetricPair, dirs: &[Matrix], j: &Matrix, x: &DVector<f64>, start: Matrix, cfg: &SearchConfig) -> Result<(Matrix, f64)> {
    if penalty(&start, j, x) <= cfg.success_penalty {
        let v = penalty(&start, j, x);
        return Ok((start, v));
    }
    let out = lm_on_group(start, dirs, |n| residual(n, j, x), |n| jacobian(n, j, x, dirs), cfg.max_iters, cfg.success_penalty);
    let _ = pair;
    Ok((out.point, out.value))
}

/// Multi-start search. Starts cycle through the representatives `reps` (members of N(V);
/// the identity is used when empty); the first pass starts at the representatives
/// themselves, later ones at F·exp(D) for random D ∈ 𝔫(V).
pub fn generic_witness_search<R: Rng>(
    pair: &MetricPair,
    n_basis: &[Matrix],
    reps: &[Matrix],
    j: &Matrix,
    x: &DVector<f64>,
    cfg: &SearchConfig,
    rng: &mut R,
) -> Result<SearchOutcome> {
    let dim = pair.dim_a();
    let identity = [Matrix::identity(dim, dim)];
    let reps = if reps.is_empty() { &identity[..] } else { reps };
    let mut per_start = Vec::new();
    for k in 0..cfg.restarts.max(1) {
        let f = &reps[k % reps.len()];
        let start = if k < reps.len() || n_basis.is_empty() {
            f.clone()
        } else {
            let c: Vec<f64> = n_basis.iter().map(|_| rng.sample::<f64, _>(StandardNormal) * cfg.init_scale).collect();
            f * matrix_exp(&combine(&c, n_basis))?
        };
        let (n, value) = search_from(pair, n_basis, j, x, start, cfg)?;
        per_start.push(value);
        if value <= cfg.success_penalty {
            let residuals = verify_witness(pair, j, x, &n)?;
            let g = f.transpose() * &n;
            return Ok(SearchOutcome::Found(Witness { p: g, q: f.clone(), n, residuals }));
        }
    }
    let best = per_start.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(SearchOutcome::Failed(FailureRecord { stalled_above_floor: best >= cfg.report_floor, best, restarts: per_start.len(), best_per_start: per_start }))
}
