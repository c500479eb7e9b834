//! Floating-point kernels: trace geometry on matrix spaces, skew exponentials,
//! symmetric spectra and kernels of linear operators between matrix spaces.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;

/// Singular values below this are treated as zero in kernel computations.
pub const KERNEL_TOL: f64 = 1e-9;
/// Relative clustering tolerance for eigenvalue multiplicities.
pub const CLUSTER_TOL: f64 = 1e-8;

pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a * b - b * a
}

/// tr(AᵀB).
pub fn trace_inner(a: &Matrix, b: &Matrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub fn skew_residual(m: &Matrix) -> f64 {
    (m + m.transpose()).amax()
}

pub fn orthogonality_residual(m: &Matrix) -> f64 {
    (m.transpose() * m - Matrix::identity(m.nrows(), m.ncols())).amax()
}

pub fn is_skew(m: &Matrix, tol: f64) -> bool {
    m.is_square() && skew_residual(m) <= tol
}

pub fn is_orthogonal(m: &Matrix, tol: f64) -> bool {
    m.is_square() && orthogonality_residual(m) <= tol
}

/// Exponential of a skew-symmetric matrix.
pub fn matrix_exp(d: &Matrix) -> Result<Matrix> {
    if !d.is_square() {
        return Err(Error::DimensionMismatch { expected: d.nrows(), got: d.ncols() });
    }
    let r = skew_residual(d);
    if r > 1e-12 * d.amax().max(1.0) {
        return Err(Error::NotSkew(r));
    }
    // Exactly skew input keeps the Padé approximant orthogonal to roundoff.
    let s = (d - d.transpose()) * 0.5;
    Ok(s.exp())
}

pub fn block_diag(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = Matrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        out.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(b);
        off += b.nrows();
    }
    out
}

pub fn flatten(m: &Matrix) -> DVector<f64> {
    DVector::from_iterator(m.len(), m.iter().copied())
}

/// Trace-orthonormal basis of so(n): (E_ij − E_ji)/√2 for i < j.
pub fn so_basis(n: usize) -> Vec<Matrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut m = Matrix::zeros(n, n);
            m[(i, j)] = -s;
            m[(j, i)] = s;
            out.push(m);
        }
    }
    out
}

/// Right kernel of `m`: columns of the returned matrix are an orthonormal basis.
pub fn kernel(m: &Matrix, tol: f64) -> Matrix {
    let n = m.ncols();
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    // Pad to at least square so the SVD exposes the full right singular basis.
    let rows = m.nrows().max(n);
    let mut a = Matrix::zeros(rows, n);
    a.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let cols: Vec<DVector<f64>> = svd.singular_values.iter().enumerate().filter(|(_, s)| **s < tol).map(|(i, _)| vt.row(i).transpose()).collect();
    if cols.is_empty() {
        Matrix::zeros(n, 0)
    } else {
        Matrix::from_columns(&cols)
    }
}

pub fn numerical_rank(m: &Matrix, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    m.clone().svd(false, false).singular_values.iter().filter(|s| **s >= tol).count()
}

/// Modified Gram–Schmidt in the trace inner product, dropping directions whose
/// residual norm falls below `tol`.
pub fn orthonormalize(mats: &[Matrix], tol: f64) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = Vec::new();
    for m in mats {
        let mut r = m.clone();
        for _ in 0..2 {
            for q in &out {
                let c = trace_inner(q, &r);
                r -= q * c;
            }
        }
        let n = r.norm();
        if n > tol {
            out.push(r / n);
        }
    }
    out
}

/// Coefficients of the trace-orthogonal projection of `m` onto span(basis) and the residual norm.
pub fn project_onto_span(m: &Matrix, basis: &[Matrix]) -> (DVector<f64>, f64) {
    let k = basis.len();
    if k == 0 {
        return (DVector::zeros(0), m.norm());
    }
    let g = Matrix::from_fn(k, k, |i, j| trace_inner(&basis[i], &basis[j]));
    let t = DVector::from_fn(k, |i, _| trace_inner(&basis[i], m));
    let c = g.clone().cholesky().map(|ch| ch.solve(&t)).unwrap_or_else(|| g.pseudo_inverse(1e-14).expect("pseudo-inverse of a Gram matrix") * &t);
    let mut r = m.clone();
    for (ci, b) in c.iter().zip(basis) {
        r -= b * *ci;
    }
    (c, r.norm())
}

pub fn combine(coeffs: &[f64], basis: &[Matrix]) -> Matrix {
    let (r, c) = basis.first().map(|b| b.shape()).unwrap_or((0, 0));
    let mut out = Matrix::zeros(r, c);
    for (a, b) in coeffs.iter().zip(basis) {
        out += b * *a;
    }
    out
}

/// Kernel of a linear map on span(domain), given by its action on matrices.
///
/// The domain is first orthonormalized in the trace inner product, so the returned
/// matrices are a trace-orthonormal basis of the kernel.
pub fn nullspace_of_operator<F>(domain: &[Matrix], op: F, tol: f64) -> Vec<Matrix>
where
    F: Fn(&Matrix) -> DVector<f64>,
{
    let basis = orthonormalize(domain, 1e-12);
    if basis.is_empty() {
        return Vec::new();
    }
    let images: Vec<DVector<f64>> = basis.iter().map(&op).collect();
    let rows = images[0].len();
    let a = Matrix::from_fn(rows, basis.len(), |i, j| images[j][i]);
    let k = kernel(&a, tol);
    (0..k.ncols()).map(|c| combine(k.column(c).as_slice(), &basis)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricSpectrum {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

impl SymmetricSpectrum {
    pub fn dimension(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

/// Sorts and clusters eigenvalues; values within `rel_tol · max(1, |λ|max)` of the
/// running cluster mean are merged.
pub fn cluster_eigenvalues(vals: &[f64], rel_tol: f64) -> SymmetricSpectrum {
    let mut v: Vec<f64> = vals.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let scale = v.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut eigenvalues: Vec<f64> = Vec::new();
    let mut multiplicities: Vec<usize> = Vec::new();
    let mut sums: Vec<f64> = Vec::new();
    for x in v {
        match eigenvalues.last() {
            Some(&mean) if (x - mean).abs() <= rel_tol * scale => {
                let k = eigenvalues.len() - 1;
                sums[k] += x;
                multiplicities[k] += 1;
                eigenvalues[k] = sums[k] / multiplicities[k] as f64;
            }
            _ => {
                eigenvalues.push(x);
                sums.push(x);
                multiplicities.push(1);
            }
        }
    }
    SymmetricSpectrum { eigenvalues, multiplicities }
}

pub fn symmetric_spectrum(m: &Matrix, rel_tol: f64) -> SymmetricSpectrum {
    let s = (m + m.transpose()) * 0.5;
    let eig = s.symmetric_eigen();
    cluster_eigenvalues(eig.eigenvalues.as_slice(), rel_tol)
}

/// Spectrum together with the orthogonal projectors onto each eigenspace.
pub fn spectral_decomposition(m: &Matrix, rel_tol: f64) -> (SymmetricSpectrum, Vec<Matrix>) {
    let s = (m + m.transpose()) * 0.5;
    let eig = s.clone().symmetric_eigen();
    let spec = cluster_eigenvalues(eig.eigenvalues.as_slice(), rel_tol);
    let scale = spec.eigenvalues.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let n = m.nrows();
    let projectors = spec
        .eigenvalues
        .iter()
        .map(|lam| {
            let mut p = Matrix::zeros(n, n);
            for (i, e) in eig.eigenvalues.iter().enumerate() {
                if (e - lam).abs() <= rel_tol * scale {
                    let v = eig.eigenvectors.column(i);
                    p += v * v.transpose();
                }
            }
            p
        })
        .collect();
    (spec, projectors)
}
