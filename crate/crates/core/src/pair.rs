//! Metric pairs (V, ⟨,⟩) with V ⊂ so(𝔞) and the 2-step nilpotent algebras they define.
//!
//! The center 𝔷 is identified with V through coefficient vectors in `v_basis`, so a
//! central element is a vector `Z` and its operator is `J_Z = Σ Z_k v_basis[k]`. The
//! inner product on 𝔷 is then the `gram` matrix.

use nalgebra::DVector;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, QMatrix, Rational};
use crate::linalg::{self, cluster_eigenvalues, trace_inner, Matrix, CLUSTER_TOL};
use crate::optim::nelder_mead;
use crate::quaternion::Quaternion;

const SKEW_TOL: f64 = 1e-12;

/// Rational backing for pairs whose construction is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactData {
    pub v_basis: Vec<QMatrix>,
    pub gram: Option<QMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricPair {
    dim_a: usize,
    v_basis: Vec<Matrix>,
    gram: Matrix,
    exact: Option<ExactData>,
}

impl MetricPair {
    pub fn new(dim_a: usize, v_basis: Vec<Matrix>, gram: Matrix) -> Result<Self> {
        for v in &v_basis {
            if v.shape() != (dim_a, dim_a) {
                return Err(Error::DimensionMismatch { expected: dim_a, got: v.nrows() });
            }
            let r = linalg::skew_residual(v);
            if r > SKEW_TOL {
                return Err(Error::NotSkew(r));
            }
        }
        let pair = Self { dim_a, v_basis, gram: Matrix::zeros(0, 0), exact: None };
        pair.check_independent()?;
        pair.with_gram(gram)
    }

    /// Pair with the standard (normalized trace) inner product.
    pub fn with_standard(dim_a: usize, v_basis: Vec<Matrix>) -> Result<Self> {
        let mut pair = Self { dim_a, v_basis, gram: Matrix::zeros(0, 0), exact: None };
        let g = pair.standard_gram();
        pair.gram = Matrix::identity(pair.dim_v(), pair.dim_v());
        pair = Self::new(dim_a, pair.v_basis, g)?;
        Ok(pair)
    }

    /// Exact pair; `gram` defaults to the standard inner product.
    pub fn from_exact(dim_a: usize, v_basis: Vec<QMatrix>, gram: Option<QMatrix>) -> Result<Self> {
        for v in &v_basis {
            if v.shape() != (dim_a, dim_a) {
                return Err(Error::DimensionMismatch { expected: dim_a, got: v.nrows() });
            }
            if !exact::is_skew(v) {
                return Err(Error::NotSkew(linalg::skew_residual(&exact::to_float_matrix(v))));
            }
        }
        let n = v_basis.len();
        let std = exact_standard_gram(dim_a, &v_basis);
        if exact::rank(&std) != n {
            return Err(Error::DependentBasis);
        }
        let gram = gram.unwrap_or(std);
        if gram.shape() != (n, n) {
            return Err(Error::DimensionMismatch { expected: n, got: gram.nrows() });
        }
        let float_basis = v_basis.iter().map(exact::to_float_matrix).collect();
        let mut pair = Self::new(dim_a, float_basis, exact::to_float_matrix(&gram))?;
        pair.exact = Some(ExactData { v_basis, gram: Some(gram) });
        Ok(pair)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_v(&self) -> usize {
        self.v_basis.len()
    }

    pub fn v_basis(&self) -> &[Matrix] {
        &self.v_basis
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn exact(&self) -> Option<&ExactData> {
        self.exact.as_ref()
    }

    /// Same V with another inner product. Drops the exact gram.
    pub fn with_gram(&self, gram: Matrix) -> Result<Self> {
        let n = self.dim_v();
        if gram.shape() != (n, n) {
            return Err(Error::DimensionMismatch { expected: n, got: gram.nrows() });
        }
        if (&gram - gram.transpose()).amax() > 1e-12 * gram.amax().max(1.0) {
            return Err(Error::NotPositiveDefinite);
        }
        let sym = (&gram + gram.transpose()) * 0.5;
        if n > 0 && sym.clone().cholesky().is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        let exact = self.exact.as_ref().map(|e| ExactData { v_basis: e.v_basis.clone(), gram: None });
        Ok(Self { dim_a: self.dim_a, v_basis: self.v_basis.clone(), gram: sym, exact })
    }

    pub fn with_exact_gram(&self, gram: QMatrix) -> Result<Self> {
        let mut p = self.with_gram(exact::to_float_matrix(&gram))?;
        if let Some(e) = p.exact.as_mut() {
            e.gram = Some(gram);
        }
        Ok(p)
    }

    fn check_independent(&self) -> Result<()> {
        let n = self.dim_v();
        if n == 0 {
            return Ok(());
        }
        let g = Matrix::from_fn(n, n, |i, j| trace_inner(&self.v_basis[i], &self.v_basis[j]));
        let min = g.symmetric_eigen().eigenvalues.iter().fold(f64::INFINITY, |m, x| m.min(*x));
        if n > 0 && min <= 1e-10 {
            return Err(Error::DependentBasis);
        }
        Ok(())
    }

    /// J_Z = Σ Z_k v_basis[k].
    pub fn j_of(&self, z: &[f64]) -> Result<Matrix> {
        if z.len() != self.dim_v() {
            return Err(Error::DimensionMismatch { expected: self.dim_v(), got: z.len() });
        }
        let mut out = Matrix::zeros(self.dim_a, self.dim_a);
        for (c, v) in z.iter().zip(&self.v_basis) {
            out += v * *c;
        }
        Ok(out)
    }

    pub fn j_of_exact(&self, z: &[Rational]) -> Result<QMatrix> {
        let e = self.exact.as_ref().ok_or_else(|| Error::WrongKind("pair has no exact data".into()))?;
        if z.len() != self.dim_v() {
            return Err(Error::DimensionMismatch { expected: self.dim_v(), got: z.len() });
        }
        let mut out = exact::zeros(self.dim_a, self.dim_a);
        for (c, v) in z.iter().zip(&e.v_basis) {
            if !c.is_zero() {
                out = exact::add(&out, &exact::scale(v, c));
            }
        }
        Ok(out)
    }

    /// Gram_{ab} = −Tr(v_a v_b) / dim 𝔞.
    pub fn standard_gram(&self) -> Matrix {
        standard_gram_of(self.dim_a, &self.v_basis)
    }

    pub fn standard_gram_exact(&self) -> Option<QMatrix> {
        self.exact.as_ref().map(|e| exact_standard_gram(self.dim_a, &e.v_basis))
    }

    /// Coordinates of `m` in v_basis (trace projection) and the distance of `m` from V.
    pub fn coordinates(&self, m: &Matrix) -> (DVector<f64>, f64) {
        linalg::project_onto_span(m, &self.v_basis)
    }

    pub fn gram_inner(&self, z1: &[f64], z2: &[f64]) -> f64 {
        let a = DVector::from_column_slice(z1);
        let b = DVector::from_column_slice(z2);
        (a.transpose() * &self.gram * b)[(0, 0)]
    }

    pub fn eigenvalue_type(&self) -> EigenvalueType {
        eigenvalue_type(self)
    }

    pub fn algebra(&self) -> NilpotentAlgebra<'_> {
        NilpotentAlgebra { pair: self }
    }
}

pub fn standard_gram_of(dim_a: usize, basis: &[Matrix]) -> Matrix {
    let n = basis.len();
    Matrix::from_fn(n, n, |a, b| -(&basis[a] * &basis[b]).trace() / dim_a as f64)
}

pub fn exact_standard_gram(dim_a: usize, basis: &[QMatrix]) -> QMatrix {
    let n = basis.len();
    let d = exact::rat(dim_a as i64);
    QMatrix::from_fn(n, n, |a, b| -exact::trace(&exact::matmul(&basis[a], &basis[b])) / &d)
}

/// An element of 𝔫 = V ⊕ 𝔞: center coefficients `z` and the 𝔞-vector `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub z: DVector<f64>,
    pub x: DVector<f64>,
}

impl Element {
    pub fn new(z: DVector<f64>, x: DVector<f64>) -> Self {
        Self { z, x }
    }

    fn combine(&self, a: f64, other: &Element, b: f64) -> Element {
        Element { z: &self.z * a + &other.z * b, x: &self.x * a + &other.x * b }
    }

    fn norm(&self) -> f64 {
        (self.z.norm_squared() + self.x.norm_squared()).sqrt()
    }
}

/// 𝔫 = V ⊕ 𝔞 with [X, Y] ∈ V determined by ⟨J_Z X, Y⟩ = ⟨Z, [X, Y]⟩.
#[derive(Debug, Clone, Copy)]
pub struct NilpotentAlgebra<'a> {
    pub pair: &'a MetricPair,
}

impl NilpotentAlgebra<'_> {
    /// Center coefficients of [X₁, X₂]: solves gram·Z = t, t_k = ⟨v_k X₁, X₂⟩.
    pub fn bracket_a(&self, x1: &DVector<f64>, x2: &DVector<f64>) -> DVector<f64> {
        let p = self.pair;
        let t = DVector::from_iterator(p.dim_v(), p.v_basis.iter().map(|v| (v * x1).dot(x2)));
        if p.dim_v() == 0 {
            return t;
        }
        p.gram.clone().cholesky().expect("gram is positive definite").solve(&t)
    }

    pub fn bracket(&self, e1: &Element, e2: &Element) -> Element {
        Element { z: self.bracket_a(&e1.x, &e2.x), x: DVector::zeros(self.pair.dim_a) }
    }

    /// Exact bracket on 𝔞; needs exact basis and gram.
    pub fn bracket_exact(&self, x1: &[Rational], x2: &[Rational]) -> Result<Vec<Rational>> {
        let e = self.pair.exact.as_ref().ok_or_else(|| Error::WrongKind("pair has no exact data".into()))?;
        let gram = e.gram.as_ref().ok_or_else(|| Error::WrongKind("pair has no exact inner product".into()))?;
        let col = |v: &[Rational]| QMatrix::from_column_slice(v.len(), 1, v);
        let (c1, c2) = (col(x1), col(x2));
        let t: Vec<Rational> = e.v_basis.iter().map(|v| exact::matmul(&c2.transpose(), &exact::matmul(v, &c1))[(0, 0)].clone()).collect();
        exact::solve(gram, &t).ok_or(Error::NotPositiveDefinite)
    }

    /// Verifies the 2-step structure, surjectivity of the bracket onto V and the center.
    pub fn structure_check(&self, seed: u64) -> StructureReport {
        let p = self.pair;
        let (n, m) = (p.dim_v(), p.dim_a);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rand_elem = |rng: &mut ChaCha8Rng| Element {
            z: DVector::from_fn(n, |_, _| rng.sample(StandardNormal)),
            x: DVector::from_fn(m, |_, _| rng.sample(StandardNormal)),
        };

        let mut jacobi = 0.0f64;
        let mut nilpotency = 0.0f64;
        let mut antisymmetry = 0.0f64;
        for _ in 0..20 {
            let (a, b, c) = (rand_elem(&mut rng), rand_elem(&mut rng), rand_elem(&mut rng));
            let ab_c = self.bracket(&a, &self.bracket(&b, &c));
            let bc_a = self.bracket(&b, &self.bracket(&c, &a));
            let ca_b = self.bracket(&c, &self.bracket(&a, &b));
            let sum = ab_c.combine(1.0, &bc_a, 1.0).combine(1.0, &ca_b, 1.0);
            let scale = a.norm() * b.norm() * c.norm();
            jacobi = jacobi.max(sum.norm() / scale);
            nilpotency = nilpotency.max(ab_c.norm() / scale);
            let s = self.bracket(&a, &b).combine(1.0, &self.bracket(&b, &a), 1.0);
            antisymmetry = antisymmetry.max(s.norm() / (a.norm() * b.norm()));
        }

        // Rank of X ∧ Y ↦ [X, Y] on basis pairs.
        let mut cols = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let (ei, ej) = (DVector::from_fn(m, |k, _| (k == i) as u8 as f64), DVector::from_fn(m, |k, _| (k == j) as u8 as f64));
                cols.push(self.bracket_a(&ei, &ej));
            }
        }
        let derived_dim = if cols.is_empty() || n == 0 { 0 } else { linalg::numerical_rank(&Matrix::from_columns(&cols), 1e-9) };

        // Common kernel of V in 𝔞 is central as well.
        let stacked = if n == 0 {
            Matrix::zeros(0, m)
        } else {
            let mut s = Matrix::zeros(n * m, m);
            for (k, v) in p.v_basis.iter().enumerate() {
                s.view_mut((k * m, 0), (m, m)).copy_from(v);
            }
            s
        };
        let common_kernel_dim = if n == 0 { m } else { linalg::kernel(&stacked, 1e-9).ncols() };
        let center_dim = n + common_kernel_dim;

        let mut failures = Vec::new();
        if jacobi > 1e-12 {
            failures.push(format!("Jacobi identity residual {jacobi:.3e}"));
        }
        if nilpotency > 1e-12 {
            failures.push(format!("[n,[n,n]] residual {nilpotency:.3e}"));
        }
        if antisymmetry > 1e-12 {
            failures.push(format!("antisymmetry residual {antisymmetry:.3e}"));
        }
        if derived_dim != n {
            failures.push(format!("derived algebra has dimension {derived_dim}, V has {n}"));
        }
        if common_kernel_dim > 0 {
            failures.push(format!("center exceeds V by {common_kernel_dim} dimensions (common kernel in 𝔞)"));
        }
        StructureReport {
            jacobi_residual: jacobi,
            nilpotency_residual: nilpotency,
            antisymmetry_residual: antisymmetry,
            derived_dim,
            dim_v: n,
            common_kernel_dim,
            center_dim,
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub jacobi_residual: f64,
    pub nilpotency_residual: f64,
    pub antisymmetry_residual: f64,
    pub derived_dim: usize,
    pub dim_v: usize,
    pub common_kernel_dim: usize,
    pub center_dim: usize,
    pub failures: Vec<String>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn center_equals_v(&self) -> bool {
        self.common_kernel_dim == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueType {
    /// Multiplicities, largest first.
    pub multiplicities: Vec<usize>,
    /// Eigenvalues of S matching `multiplicities`.
    pub eigenvalues: Vec<f64>,
    /// S in a standard-orthonormal basis of V.
    #[serde(with = "crate::json::matrix")]
    pub s_matrix: Matrix,
}

/// S with ⟨J, J⟩ = (SJ, J) relative to the standard inner product.
pub fn eigenvalue_type(pair: &MetricPair) -> EigenvalueType {
    let n = pair.dim_v();
    if n == 0 {
        return EigenvalueType { multiplicities: vec![], eigenvalues: vec![], s_matrix: Matrix::zeros(0, 0) };
    }
    let std = pair.standard_gram();
    let l = std.cholesky().expect("standard gram is positive definite").l();
    let linv = l.try_inverse().expect("triangular factor is invertible");
    let s = &linv * pair.gram() * linv.transpose();
    let s = (&s + s.transpose()) * 0.5;
    let eig = s.clone().symmetric_eigen();
    let spec = cluster_eigenvalues(eig.eigenvalues.as_slice(), CLUSTER_TOL);
    let mut pairs: Vec<(usize, f64)> = spec.multiplicities.iter().copied().zip(spec.eigenvalues.iter().copied()).collect();
    pairs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.total_cmp(&b.1)));
    EigenvalueType { multiplicities: pairs.iter().map(|p| p.0).collect(), eigenvalues: pairs.iter().map(|p| p.1).collect(), s_matrix: s }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonSingularityStatus {
    CertifiedNonsingular,
    SingularWithWitness,
    NumericallyNonsingular,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonSingularityVerdict {
    pub status: NonSingularityStatus,
    /// Center coefficients of a singular element.
    pub witness: Option<Vec<f64>>,
    /// Exact witness coefficients when the certificate is rational.
    pub exact_witness: Option<Vec<String>>,
    /// Smallest |det J| found on the unit ⟨,⟩-sphere; in exact-block mode a lower bound.
    pub min_det_on_sphere: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NonSingularityMode {
    ExactBlock,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledConfig {
    pub samples: usize,
    pub refine_starts: usize,
    pub zero_threshold: f64,
    pub seed: u64,
}

impl Default for SampledConfig {
    fn default() -> Self {
        Self { samples: 10_000, refine_starts: 8, zero_threshold: 1e-9, seed: 0 }
    }
}

/// Per-block quaternion data of a pair in quaternionic block form:
/// `maps[s]` is the 4 × dim V matrix with `J_Z` block s equal to `L_{maps[s]·Z}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuaternionBlocks {
    pub maps: Vec<Matrix>,
    pub exact_maps: Option<Vec<QMatrix>>,
}

/// Detects quaternionic block-diagonal form (every 4×4 diagonal block a left multiplication).
#[allow(clippy::needless_range_loop)]
pub fn quaternion_blocks(pair: &MetricPair) -> Result<QuaternionBlocks> {
    let m = pair.dim_a();
    if !m.is_multiple_of(4) || m == 0 {
        return Err(Error::NotBlockForm(format!("dim 𝔞 = {m} is not a positive multiple of 4")));
    }
    let p = m / 4;
    let n = pair.dim_v();
    let mut maps = vec![Matrix::zeros(4, n); p];
    for (k, v) in pair.v_basis().iter().enumerate() {
        for r in 0..p {
            for s in 0..p {
                let blk = v.view((4 * r, 4 * s), (4, 4)).clone_owned();
                if r != s {
                    if blk.amax() > 1e-12 {
                        return Err(Error::NotBlockForm(format!("basis element {k} has an off-diagonal block ({r},{s})")));
                    }
                    continue;
                }
                let q = Quaternion::new(blk[(0, 0)], blk[(1, 0)], blk[(2, 0)], blk[(3, 0)]);
                if (crate::quaternion::left_mult_matrix(&q) - &blk).amax() > 1e-12 {
                    return Err(Error::NotBlockForm(format!("block {r} of basis element {k} is not a left multiplication")));
                }
                maps[r].set_column(k, &DVector::from_column_slice(&q.coeffs()));
            }
        }
    }
    let exact_maps = pair.exact().map(|e| (0..p).map(|r| QMatrix::from_fn(4, n, |i, k| e.v_basis[k][(4 * r + i, 4 * r)].clone())).collect());
    Ok(QuaternionBlocks { maps, exact_maps })
}

pub fn nonsingularity_check(pair: &MetricPair, mode: NonSingularityMode, cfg: &SampledConfig) -> Result<NonSingularityVerdict> {
    match mode {
        NonSingularityMode::ExactBlock => exact_block_check(pair),
        NonSingularityMode::Sampled => Ok(sampled_check(pair, cfg)),
    }
}

fn exact_block_check(pair: &MetricPair) -> Result<NonSingularityVerdict> {
    let blocks = quaternion_blocks(pair)?;
    let n = pair.dim_v();
    if let Some(maps) = &blocks.exact_maps {
        for a in maps {
            let ker = exact::nullspace(a);
            if let Some(z) = ker.first() {
                return Ok(NonSingularityVerdict {
                    status: NonSingularityStatus::SingularWithWitness,
                    witness: Some(z.iter().map(exact::to_f64).collect()),
                    exact_witness: Some(z.iter().map(exact::format_rational).collect()),
                    min_det_on_sphere: 0.0,
                });
            }
        }
    } else {
        for a in &blocks.maps {
            let k = linalg::kernel(a, 1e-12);
            if k.ncols() > 0 {
                return Ok(NonSingularityVerdict {
                    status: NonSingularityStatus::SingularWithWitness,
                    witness: Some(k.column(0).iter().copied().collect()),
                    exact_witness: None,
                    min_det_on_sphere: 0.0,
                });
            }
        }
    }
    // det J_Z = Π_s ‖A_s Z‖⁴; bound it below on the unit ⟨,⟩-sphere.
    let l = pair.gram().clone().cholesky().expect("gram is positive definite").l();
    let lt_inv = l.transpose().try_inverse().expect("invertible factor");
    let mut bound = 1.0;
    for a in &blocks.maps {
        let m = a * &lt_inv;
        let smin = if n == 0 { 1.0 } else { m.svd(false, false).singular_values.min() };
        bound *= smin.powi(4);
    }
    Ok(NonSingularityVerdict { status: NonSingularityStatus::CertifiedNonsingular, witness: None, exact_witness: None, min_det_on_sphere: bound })
}

fn sampled_check(pair: &MetricPair, cfg: &SampledConfig) -> NonSingularityVerdict {
    let n = pair.dim_v();
    let m = pair.dim_a();
    let l = pair.gram().clone().cholesky().expect("gram is positive definite").l();
    let lt_inv = l.transpose().try_inverse().expect("invertible factor");
    // w on the Euclidean unit sphere ↦ Z on the unit ⟨,⟩-sphere
    let to_z = |w: &[f64]| -> DVector<f64> {
        let w = DVector::from_column_slice(w);
        let nrm = w.norm();
        &lt_inv * (w / nrm.max(1e-300))
    };
    let f = |w: &[f64]| -> f64 {
        let z = to_z(w);
        pair.j_of(z.as_slice()).map(|j| j.determinant().abs()).unwrap_or(f64::INFINITY)
    };

    if n == 0 || m % 2 == 1 {
        return NonSingularityVerdict {
            status: if n == 0 { NonSingularityStatus::CertifiedNonsingular } else { NonSingularityStatus::SingularWithWitness },
            witness: (n > 0).then(|| to_z(&vec![1.0; n]).iter().copied().collect()),
            exact_witness: None,
            min_det_on_sphere: if n == 0 { f64::INFINITY } else { 0.0 },
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut scored: Vec<(f64, Vec<f64>)> = (0..cfg.samples.max(1))
        .map(|_| {
            let w: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            (f(&w), w)
        })
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut best = scored[0].clone();
    for (_, w0) in scored.iter().take(cfg.refine_starts) {
        let (w, v) = nelder_mead(f, w0, 0.05, 4000, 1e-14);
        if v < best.0 {
            best = (v, w);
        }
        if best.0 < cfg.zero_threshold {
            break;
        }
    }
    let z: Vec<f64> = to_z(&best.1).iter().copied().collect();
    if best.0 < cfg.zero_threshold {
        NonSingularityVerdict { status: NonSingularityStatus::SingularWithWitness, witness: Some(z), exact_witness: None, min_det_on_sphere: best.0 }
    } else {
        NonSingularityVerdict { status: NonSingularityStatus::NumericallyNonsingular, witness: None, exact_witness: None, min_det_on_sphere: best.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, QMatrix};
    use crate::quaternion::{left_mult_exact, left_mult_matrix, QuatQ};

    fn pair_li() -> MetricPair {
        MetricPair::from_exact(4, vec![left_mult_exact(&QuatQ::i())], None).unwrap()
    }

    #[test]
    fn j_of_basics() {
        let p = MetricPair::with_standard(4, vec![left_mult_matrix(&Quaternion::i()), left_mult_matrix(&Quaternion::j())]).unwrap();
        assert_eq!(p.j_of(&[1.0, 0.0]).unwrap(), p.v_basis()[0]);
        assert_eq!(p.j_of(&[0.0, 0.0]).unwrap(), Matrix::zeros(4, 4));
        assert!(matches!(p.j_of(&[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn bracket_of_one_and_i() {
        let p = pair_li();
        assert_eq!(p.gram()[(0, 0)], 1.0);
        let alg = p.algebra();
        let one = DVector::from_column_slice(&[1.0, 0.0, 0.0, 0.0]);
        let i = DVector::from_column_slice(&[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(alg.bracket_a(&one, &i)[0], 1.0);
        let ex = alg.bracket_exact(&[rat(1), rat(0), rat(0), rat(0)], &[rat(0), rat(1), rat(0), rat(0)]).unwrap();
        assert_eq!(ex, vec![rat(1)]);
        let c = Element::new(DVector::from_element(1, 1.0), DVector::zeros(4));
        let d = Element::new(DVector::from_element(1, -2.0), DVector::zeros(4));
        assert_eq!(alg.bracket(&c, &d).z[0], 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(MetricPair::new(2, vec![Matrix::identity(2, 2)], Matrix::identity(1, 1)), Err(Error::NotSkew(_))));
        let li = left_mult_matrix(&Quaternion::i());
        assert!(matches!(MetricPair::new(4, vec![li.clone(), &li * 2.0], Matrix::identity(2, 2)), Err(Error::DependentBasis)));
        assert!(matches!(MetricPair::new(4, vec![li], Matrix::from_element(1, 1, -1.0)), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn common_kernel_is_flagged() {
        let li = left_mult_matrix(&Quaternion::i());
        let j = linalg::block_diag(&[li, Matrix::zeros(4, 4)]);
        let p = MetricPair::with_standard(8, vec![j]).unwrap();
        let r = p.algebra().structure_check(0);
        assert_eq!(r.common_kernel_dim, 4);
        assert!(!r.ok());
        assert!(!r.center_equals_v());
    }

    #[test]
    fn standard_gram_scaling() {
        let l2 = exact::scale(&left_mult_exact(&QuatQ::i()), &rat(3));
        let p = MetricPair::from_exact(4, vec![l2], None).unwrap();
        assert_eq!(p.standard_gram_exact().unwrap(), QMatrix::from_element(1, 1, rat(9)));
    }
}
