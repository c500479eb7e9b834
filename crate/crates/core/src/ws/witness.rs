//! Explicit witnesses N = QP with NX = −X and NJ = −JN for the weakly symmetric families.

use nalgebra::{DVector, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::octonion_complex_structures;
use crate::linalg::{self, block_diag, cluster_eigenvalues, combine, commutator, flatten, matrix_exp, nullspace_of_operator, Matrix};
use crate::normalizer::{induced_center_maps, membership_with_tol};
use crate::optim::lm_on_group;
use crate::pair::MetricPair;
use crate::quaternion::{left_mult_matrix, right_mult_matrix, unit_orthogonal_imaginary, Quaternion};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// ‖NX + X‖
    pub action: f64,
    /// ‖NJ + JN‖ (Frobenius)
    pub anticommute: f64,
    /// Normalizer membership residual of N (projection, isometry and orthogonality).
    pub membership: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.action.max(self.anticommute).max(self.membership)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "crate::json::matrix")]
    pub p: Matrix,
    #[serde(with = "crate::json::matrix")]
    pub q: Matrix,
    #[serde(with = "crate::json::matrix")]
    pub n: Matrix,
    pub residuals: Residuals,
}

pub fn verify_witness(pair: &MetricPair, j: &Matrix, x: &DVector<f64>, n: &Matrix) -> Result<Residuals> {
    let action = (n * x + x).norm();
    let anticommute = (n * j + j * n).norm();
    let orth = linalg::orthogonality_residual(n);
    let membership = if orth > 1e-10 {
        orth
    } else {
        let m = membership_with_tol(pair, n, f64::INFINITY)?;
        m.conjugation_residual.max(m.orthogonality_residual).max(orth)
    };
    Ok(Residuals { action, anticommute, membership })
}

fn finish(pair: &MetricPair, j: &Matrix, x: &DVector<f64>, p: Matrix, q: Matrix) -> Result<Witness> {
    let n = &q * &p;
    let residuals = verify_witness(pair, j, x, &n)?;
    Ok(Witness { p, q, n, residuals })
}

fn check_x(pair: &MetricPair, x: &DVector<f64>) -> Result<()> {
    if x.len() != pair.dim_a() {
        return Err(Error::DimensionMismatch { expected: pair.dim_a(), got: x.len() });
    }
    Ok(())
}

/// Orthonormal basis (columns e₁, f₁, e₂, f₂, …, then a kernel basis) with J eₖ = θₖ fₖ,
/// together with the θₖ.
pub fn complex_basis(j: &Matrix) -> (Matrix, Vec<f64>) {
    let n = j.nrows();
    let s = j.transpose() * j;
    let eig = s.clone().symmetric_eigen();
    let spec = cluster_eigenvalues(eig.eigenvalues.as_slice(), 1e-8);
    let scale = eig.eigenvalues.amax().max(1e-300);
    let mut cols: Vec<DVector<f64>> = Vec::new();
    let mut thetas = Vec::new();
    let mut kernel: Vec<DVector<f64>> = Vec::new();
    for &lam in &spec.eigenvalues {
        let members: Vec<DVector<f64>> =
            (0..n).filter(|&k| (eig.eigenvalues[k] - lam).abs() <= 1e-8 * scale).map(|k| eig.eigenvectors.column(k).into_owned()).collect();
        let is_kernel = lam.max(0.0).sqrt() <= 1e-9 * scale.sqrt();
        for u in members {
            let mut v = u.clone();
            for c in cols.iter().chain(kernel.iter()) {
                v -= c * c.dot(&v);
            }
            if v.norm() < 1e-6 {
                continue;
            }
            let e = v.normalize();
            if is_kernel {
                kernel.push(e);
            } else {
                let theta = lam.sqrt();
                let f = (j * &e) / theta;
                cols.push(e);
                cols.push(f);
                thetas.push(theta);
            }
        }
    }
    cols.extend(kernel);
    (Matrix::from_columns(&cols), thetas)
}

/// Witness for dim V = 1: P is complex conjugation in a basis diagonalizing the generator
/// and Q a torus element with Q(PX) = −X.
pub fn witness_dim1(pair: &MetricPair, z: &[f64], x: &DVector<f64>) -> Result<Witness> {
    check_x(pair, x)?;
    if pair.dim_v() != 1 {
        return Err(Error::WrongKind("witness_dim1 needs dim V = 1".into()));
    }
    let j = pair.j_of(z)?;
    let (b, thetas) = complex_basis(&pair.v_basis()[0]);
    let n = pair.dim_a();
    let pairs = thetas.len();
    let mut pd = Matrix::identity(n, n);
    let mut qd = -Matrix::identity(n, n);
    let xc = b.transpose() * x;
    for k in 0..pairs {
        let (e, f) = (2 * k, 2 * k + 1);
        pd[(f, f)] = -1.0;
        let (a, c) = (xc[e], xc[f]);
        let r2 = a * a + c * c;
        // e^{iφ} = −z²/|z|² for z = a + ic; φ = π when z = 0
        let (cos, sin) = if r2 > 1e-300 { (-(a * a - c * c) / r2, -2.0 * a * c / r2) } else { (-1.0, 0.0) };
        qd[(e, e)] = cos;
        qd[(f, e)] = sin;
        qd[(e, f)] = -sin;
        qd[(f, f)] = cos;
    }
    let p = &b * pd * b.transpose();
    let q = &b * qd * b.transpose();
    finish(pair, &j, x, p, q)
}

fn block_quaternion(x: &DVector<f64>, s: usize) -> Quaternion {
    Quaternion::from_slice(&x.as_slice()[4 * s..4 * s + 4])
}

/// Unit r with (y)·r = −x_s, or 1 when the block of X vanishes.
fn right_factor(y: Quaternion, xs: Quaternion) -> Quaternion {
    if xs.norm() <= 1e-300 {
        return Quaternion::one();
    }
    let inv = y.inverse().expect("nonzero block");
    -(inv * xs)
}

/// Witness for the dim V = 2 family: q_s ⊥ a_s, b_s, P = diag(L_{q_s}), Q = diag(R_{r_s}).
pub fn witness_dim2(pair: &MetricPair, z: &[f64], x: &DVector<f64>) -> Result<Witness> {
    check_x(pair, x)?;
    if pair.dim_v() != 2 {
        return Err(Error::WrongKind("witness_dim2 needs dim V = 2".into()));
    }
    let j = pair.j_of(z)?;
    let maps = induced_center_maps(pair)?;
    let mut pb = Vec::new();
    let mut qb = Vec::new();
    for (s, a) in maps.iter().enumerate() {
        let av = Vector3::new(a[(0, 0)], a[(1, 0)], a[(2, 0)]);
        let bv = Vector3::new(a[(0, 1)], a[(1, 1)], a[(2, 1)]);
        let q = Quaternion::from_im(&unit_orthogonal_imaginary(&av, &bv));
        let xs = block_quaternion(x, s);
        let r = right_factor(q * xs, xs);
        pb.push(left_mult_matrix(&q));
        qb.push(right_mult_matrix(&r));
    }
    finish(pair, &j, x, block_diag(&pb), block_diag(&qb))
}

/// The unit imaginary r ⊥ i, bj + ck used by [`witness_dim3`].
pub fn dim3_axis(b: f64, c: f64) -> Quaternion {
    Quaternion::from_im(&unit_orthogonal_imaginary(&Vector3::x(), &Vector3::new(0.0, b, c)))
}

/// Witness for the scaled dim V = 3 family with J = aJ₁ + bJ₂ + cJ₃.
pub fn witness_dim3(pair: &MetricPair, z: &[f64], x: &DVector<f64>) -> Result<Witness> {
    check_x(pair, x)?;
    if pair.dim_v() != 3 || !pair.dim_a().is_multiple_of(4) {
        return Err(Error::WrongKind("witness_dim3 needs the scaled dim V = 3 family".into()));
    }
    let j = pair.j_of(z)?;
    let r = dim3_axis(z[1], z[2]);
    let p = pair.dim_a() / 4;
    let mut qb = Vec::new();
    for s in 0..p {
        let xs = block_quaternion(x, s);
        qb.push(right_mult_matrix(&right_factor(r * xs, xs)));
    }
    let pm = block_diag(&vec![left_mult_matrix(&r); p]);
    finish(pair, &j, x, pm, block_diag(&qb))
}

/// Search settings for the stabilizer search in [`witness_stabilizer`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Accept when ‖Q(PX) + X‖² is at or below this.
    pub target: f64,
}

impl Default for StabilizerConfig {
    fn default() -> Self {
        Self { restarts: 20, max_iters: 200, target: 1e-24 }
    }
}

/// span{JₐJ_b : a < b ≤ 5} ≅ sp(2) in so(8).
pub fn sp2_basis() -> Vec<Matrix> {
    let js = octonion_complex_structures();
    let mut out = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            out.push(&js[a] * &js[b]);
        }
    }
    out
}

/// 𝔰 = {D ∈ sp(2) : [D, J] = 0}.
pub fn stabilizer_in_sp2(j: &Matrix) -> Vec<Matrix> {
    let scale = j.amax().max(1e-300);
    let jn = j / scale;
    nullspace_of_operator(&sp2_basis(), |d| flatten(&commutator(d, &jn)), 1e-9)
}

/// Witness N = Q·P where P ∈ N(V) acts as −Id on V and Q is found in exp(𝔰), 𝔰 the
/// stabilizer of J in sp(2), by minimizing ‖Q(PX) + X‖².
pub fn witness_stabilizer<R: Rng>(pair: &MetricPair, p_elem: &Matrix, z: &[f64], x: &DVector<f64>, cfg: &StabilizerConfig, rng: &mut R) -> Result<Witness> {
    check_x(pair, x)?;
    if pair.dim_a() != 8 {
        return Err(Error::WrongKind("stabilizer witness needs dim 𝔞 = 8".into()));
    }
    let j = pair.j_of(z)?;
    let stab = stabilizer_in_sp2(&j);
    let y = p_elem * x;
    let residual = |q: &Matrix| q * &y + x;
    let jacobian = |q: &Matrix| {
        let cols: Vec<DVector<f64>> = stab.iter().map(|d| q * (d * &y)).collect();
        if cols.is_empty() {
            Matrix::zeros(8, 0)
        } else {
            Matrix::from_columns(&cols)
        }
    };
    let mut best: Option<(f64, Matrix)> = None;
    let mut per_start = Vec::new();
    for k in 0..cfg.restarts.max(1) {
        let start = if k == 0 {
            Matrix::identity(8, 8)
        } else {
            let c: Vec<f64> = stab.iter().map(|_| rng.sample::<f64, _>(StandardNormal) * std::f64::consts::PI).collect();
            matrix_exp(&combine(&c, &stab))?
        };
        let out = lm_on_group(start, &stab, residual, jacobian, cfg.max_iters, cfg.target);
        per_start.push(out.value);
        if best.as_ref().is_none_or(|(v, _)| out.value < *v) {
            best = Some((out.value, out.point));
        }
        if out.value <= cfg.target {
            break;
        }
    }
    let (value, q) = best.expect("at least one start");
    let w = finish(pair, &j, x, p_elem.clone(), q)?;
    if w.residuals.max() > 1e-8 {
        return Err(Error::SearchFailed { restarts: per_start.len(), best: value });
    }
    Ok(w)
}

/// Witness for the dim V = 6 family: P = J₆ and Q in the stabilizer of J in Sp(2).
pub fn witness_dim6<R: Rng>(pair: &MetricPair, z: &[f64], x: &DVector<f64>, cfg: &StabilizerConfig, rng: &mut R) -> Result<Witness> {
    let j6 = octonion_complex_structures()[5].clone();
    witness_stabilizer(pair, &j6, z, x, cfg, rng)
}
