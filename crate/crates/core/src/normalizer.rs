//! Lie algebra of the orthogonal normalizer 𝔫(V) = 𝔠(V) ⊕ 𝔭(V) and group membership.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, commutator, flatten, nullspace_of_operator, project_onto_span, trace_inner, Matrix};
use crate::pair::{quaternion_blocks, MetricPair};
use crate::quaternion::{left_mult_matrix, right_mult_matrix, Quaternion};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizerData {
    #[serde(with = "crate::json::matrices")]
    pub n_basis: Vec<Matrix>,
    #[serde(with = "crate::json::matrices")]
    pub c_basis: Vec<Matrix>,
    #[serde(with = "crate::json::matrices")]
    pub p_basis: Vec<Matrix>,
    /// (dim 𝔫, dim 𝔠, dim 𝔭)
    pub dims: (usize, usize, usize),
    /// max distance of [n_i, n_j] from 𝔫
    pub closure_residual: f64,
    /// max distance of [𝔫, 𝔠] from 𝔠 and of [𝔫, 𝔭] from 𝔭
    pub ideal_residuals: (f64, f64),
}

/// Matrix of ad_D restricted to V in v_basis coordinates, plus the distance of [D, V] from V.
pub fn ad_on_v(pair: &MetricPair, d: &Matrix) -> (Matrix, f64) {
    let n = pair.dim_v();
    let mut m = Matrix::zeros(n, n);
    let mut res = 0.0f64;
    for (k, v) in pair.v_basis().iter().enumerate() {
        let (c, r) = pair.coordinates(&commutator(d, v));
        m.set_column(k, &c);
        res = res.max(r);
    }
    (m, res)
}

fn normalizer_condition(pair: &MetricPair, d: &Matrix) -> DVector<f64> {
    let g = pair.gram();
    let mut parts: Vec<f64> = Vec::new();
    let mut m = Matrix::zeros(pair.dim_v(), pair.dim_v());
    for (k, v) in pair.v_basis().iter().enumerate() {
        let c = commutator(d, v);
        let (coef, _) = pair.coordinates(&c);
        let mut r = c.clone();
        for (a, b) in coef.iter().zip(pair.v_basis()) {
            r -= b * *a;
        }
        parts.extend(r.iter());
        m.set_column(k, &coef);
    }
    let skew = m.transpose() * g + g * &m;
    parts.extend(skew.iter());
    DVector::from_vec(parts)
}

fn span_residual(m: &Matrix, basis: &[Matrix]) -> f64 {
    project_onto_span(m, basis).1
}

pub fn normalizer_algebra(pair: &MetricPair) -> NormalizerData {
    normalizer_algebra_with_tol(pair, linalg::KERNEL_TOL)
}

pub fn normalizer_algebra_with_tol(pair: &MetricPair, tol: f64) -> NormalizerData {
    let so = linalg::so_basis(pair.dim_a());
    let n_basis = nullspace_of_operator(&so, |d| normalizer_condition(pair, d), tol);
    let c_basis = nullspace_of_operator(
        &so,
        |d| {
            let mut out = Vec::new();
            for v in pair.v_basis() {
                out.extend(commutator(d, v).iter());
            }
            DVector::from_vec(out)
        },
        tol,
    );
    let p_basis = nullspace_of_operator(&n_basis, |d| DVector::from_iterator(c_basis.len(), c_basis.iter().map(|c| trace_inner(c, d))), tol);

    let mut closure = 0.0f64;
    let mut c_ideal = 0.0f64;
    let mut p_ideal = 0.0f64;
    for (i, a) in n_basis.iter().enumerate() {
        for b in n_basis.iter().skip(i + 1) {
            closure = closure.max(span_residual(&commutator(a, b), &n_basis));
        }
        for c in &c_basis {
            c_ideal = c_ideal.max(span_residual(&commutator(a, c), &c_basis));
        }
        for p in &p_basis {
            p_ideal = p_ideal.max(span_residual(&commutator(a, p), &p_basis));
        }
    }
    let dims = (n_basis.len(), c_basis.len(), p_basis.len());
    NormalizerData { n_basis, c_basis, p_basis, dims, closure_residual: closure, ideal_residuals: (c_ideal, p_ideal) }
}

impl NormalizerData {
    /// 𝔠 ⊕ 𝔭 = 𝔫 with 𝔠 ⊆ 𝔫 and 𝔭 ⊥ 𝔠.
    pub fn decomposition_residual(&self) -> f64 {
        let mut r = 0.0f64;
        for c in &self.c_basis {
            r = r.max(span_residual(c, &self.n_basis));
            for p in &self.p_basis {
                r = r.max(trace_inner(c, p).abs());
            }
        }
        if self.dims.1 + self.dims.2 != self.dims.0 {
            r = f64::INFINITY;
        }
        r
    }

    /// Basis of {D ∈ 𝔫 : [D, J] = 0}.
    pub fn stabilizer(&self, j: &Matrix, tol: f64) -> Vec<Matrix> {
        nullspace_of_operator(&self.n_basis, |d| flatten(&commutator(d, j)), tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipResult {
    pub is_member: bool,
    /// φ_N with N·v_k·Nᵀ = J_{φ column k}.
    #[serde(with = "crate::json::matrix")]
    pub phi: Matrix,
    pub conjugation_residual: f64,
    /// ‖φᵀ gram φ − gram‖ (admissibility).
    pub orthogonality_residual: f64,
    /// ‖φᵀ std φ − std‖ for the standard inner product.
    pub standard_orthogonality_residual: f64,
}

pub fn membership(pair: &MetricPair, n: &Matrix) -> Result<MembershipResult> {
    membership_with_tol(pair, n, 1e-9)
}

pub fn membership_with_tol(pair: &MetricPair, n: &Matrix, tol: f64) -> Result<MembershipResult> {
    if n.shape() != (pair.dim_a(), pair.dim_a()) {
        return Err(Error::DimensionMismatch { expected: pair.dim_a(), got: n.nrows() });
    }
    let orth = linalg::orthogonality_residual(n);
    if orth > 1e-10 {
        return Err(Error::NotOrthogonal(orth));
    }
    let dv = pair.dim_v();
    let mut phi = Matrix::zeros(dv, dv);
    let mut conj = 0.0f64;
    for (k, v) in pair.v_basis().iter().enumerate() {
        let (c, r) = pair.coordinates(&(n * v * n.transpose()));
        phi.set_column(k, &c);
        conj = conj.max(r);
    }
    let g = pair.gram();
    let std = pair.standard_gram();
    let o1 = (phi.transpose() * g * &phi - g).amax();
    let o2 = (phi.transpose() * &std * &phi - &std).amax();
    Ok(MembershipResult {
        is_member: conj <= tol && o1 <= tol,
        phi,
        conjugation_residual: conj,
        orthogonality_residual: o1,
        standard_orthogonality_residual: o2,
    })
}

/// Maps A_s: 𝔷 → Im ℍ with J_Z = diag(L_{A_1 Z}, …, L_{A_p Z}), as 3 × dim V matrices.
pub fn induced_center_maps(pair: &MetricPair) -> Result<Vec<Matrix>> {
    let blocks = quaternion_blocks(pair)?;
    blocks
        .maps
        .iter()
        .enumerate()
        .map(|(s, a)| {
            if a.row(0).amax() > 1e-12 {
                return Err(Error::NotBlockForm(format!("block {s} has a real quaternion component")));
            }
            Ok(a.rows(1, 3).clone_owned())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PurePartReport {
    pub dim_p: usize,
    pub dim_at_most_3: bool,
    /// Distance of 𝔭(V) from span{diag(L_{u_1}, …, L_{u_p})}.
    pub left_span_residual: f64,
    /// Distance of diag(R_{u_1}, …, R_{u_p}) (all u_s ∈ {i, j, k}) from 𝔠(V).
    pub right_in_centralizer_residual: f64,
    /// Distance of the normalized diag(L_i, …, L_i) from 𝔭(V).
    pub diag_li_residual: f64,
    pub diag_li_in_p: bool,
    /// Block norms ‖u_s‖ of the first 𝔭 element; equal when V is ad-invariant.
    pub block_norms: Vec<f64>,
    pub equal_block_norms: bool,
    /// 𝔭(V) ≠ 0 is necessary for weak symmetry of centralizer-type pairs.
    pub passes_necessary_condition: bool,
}

fn left_right_parts(m: &Matrix, p: usize) -> (f64, Vec<Quaternion<f64>>) {
    let units = [Quaternion::i(), Quaternion::j(), Quaternion::k()];
    let mut outside = 0.0f64;
    let mut us = Vec::with_capacity(p);
    for r in 0..p {
        for s in 0..p {
            let blk = m.view((4 * r, 4 * s), (4, 4)).clone_owned();
            if r != s {
                outside += blk.norm_squared();
                continue;
            }
            // L_u and R_u (u imaginary unit) are trace-orthogonal with norm² 4
            let mut left = Matrix::zeros(4, 4);
            let mut u = [0.0; 3];
            for (c, q) in units.iter().enumerate() {
                let l = left_mult_matrix(q);
                u[c] = trace_inner(&l, &blk) / 4.0;
                left += l * u[c];
            }
            outside += (blk - left).norm_squared();
            us.push(Quaternion::imaginary(u[0], u[1], u[2]));
        }
    }
    (outside.sqrt(), us)
}

/// Checks on 𝔭(V) for centralizer-type pairs in quaternionic block form.
pub fn pure_part_so3_check(pair: &MetricPair, nd: &NormalizerData) -> Result<PurePartReport> {
    let blocks = quaternion_blocks(pair).map_err(|e| Error::WrongKind(format!("pure-part check needs a centralizer-type pair: {e}")))?;
    let p = blocks.maps.len();
    let mut left_res = 0.0f64;
    let mut first_us = None;
    for m in &nd.p_basis {
        let (out, us) = left_right_parts(m, p);
        left_res = left_res.max(out);
        first_us.get_or_insert(us);
    }
    let mut right_res = 0.0f64;
    for q in [Quaternion::i(), Quaternion::j(), Quaternion::k()] {
        for s in 0..p {
            let mut blocks = vec![Matrix::zeros(4, 4); p];
            blocks[s] = right_mult_matrix(&q);
            right_res = right_res.max(span_residual(&linalg::block_diag(&blocks), &nd.c_basis));
        }
    }
    let diag_li = linalg::block_diag(&vec![left_mult_matrix(&Quaternion::i()); p]);
    let diag_li = &diag_li / diag_li.norm();
    let diag_li_residual = span_residual(&diag_li, &nd.p_basis);
    let block_norms: Vec<f64> = first_us.unwrap_or_default().iter().map(|u| u.norm()).collect();
    let max = block_norms.iter().fold(0.0f64, |a, b| a.max(*b));
    let equal = block_norms.iter().all(|n| (n - max).abs() <= 1e-8 * max.max(1e-300));
    Ok(PurePartReport {
        dim_p: nd.dims.2,
        dim_at_most_3: nd.dims.2 <= 3,
        left_span_residual: left_res,
        right_in_centralizer_residual: right_res,
        diag_li_residual,
        diag_li_in_p: diag_li_residual <= 1e-9,
        equal_block_norms: equal && !block_norms.is_empty(),
        block_norms,
        passes_necessary_condition: nd.dims.2 > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix_exp;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rotation_pair() -> MetricPair {
        let j = Matrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        MetricPair::with_standard(2, vec![j]).unwrap()
    }

    fn left_sp1() -> MetricPair {
        let v = [Quaternion::i(), Quaternion::j(), Quaternion::k()].iter().map(left_mult_matrix).collect();
        MetricPair::with_standard(4, v).unwrap()
    }

    #[test]
    fn so2_normalizer() {
        let nd = normalizer_algebra(&rotation_pair());
        assert_eq!(nd.dims, (1, 1, 0));
    }

    #[test]
    fn left_sp1_normalizer() {
        let pair = left_sp1();
        let nd = normalizer_algebra(&pair);
        assert_eq!(nd.dims, (6, 3, 3));
        for q in [Quaternion::i(), Quaternion::j(), Quaternion::k()] {
            assert!(span_residual(&right_mult_matrix(&q), &nd.c_basis) < 1e-10);
            assert!(span_residual(&left_mult_matrix(&q), &nd.p_basis) < 1e-10);
        }
        assert!(nd.closure_residual < 1e-9);
        assert!(nd.ideal_residuals.0 < 1e-9 && nd.ideal_residuals.1 < 1e-9);
        assert!(nd.decomposition_residual() < 1e-9);
        let rep = pure_part_so3_check(&pair, &nd).unwrap();
        assert!(rep.diag_li_in_p && rep.dim_at_most_3 && rep.passes_necessary_condition);
        assert!(rep.left_span_residual < 1e-9 && rep.right_in_centralizer_residual < 1e-9);
    }

    #[test]
    fn identity_is_a_member() {
        let pair = left_sp1();
        let m = membership(&pair, &Matrix::identity(4, 4)).unwrap();
        assert!(m.is_member);
        assert!((m.phi - Matrix::identity(3, 3)).amax() < 1e-12);
        assert!(matches!(membership(&pair, &(Matrix::identity(4, 4) * 2.0)), Err(Error::NotOrthogonal(_))));
    }

    #[test]
    fn exponentials_are_members_and_phi_is_functorial() {
        let pair = left_sp1();
        let nd = normalizer_algebra(&pair);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut rand_d = || {
            let c: Vec<f64> = (0..nd.dims.0).map(|_| rng.random_range(-1.0..1.0)).collect();
            linalg::combine(&c, &nd.n_basis)
        };
        let (d1, d2) = (rand_d(), rand_d());
        let t = 1e-3;
        let n1 = matrix_exp(&(&d1 * t)).unwrap();
        let m1 = membership(&pair, &n1).unwrap();
        assert!(m1.is_member);
        let (ad, _) = ad_on_v(&pair, &d1);
        assert!((&m1.phi - matrix_exp(&((&ad - ad.transpose()) * (0.5 * t))).unwrap()).amax() < 1e-9);
        let n2 = matrix_exp(&d2).unwrap();
        let m2 = membership(&pair, &n2).unwrap();
        let m12 = membership(&pair, &(&n1 * &n2)).unwrap();
        assert!((m12.phi - &m1.phi * &m2.phi).amax() < 1e-9);
    }

    #[test]
    fn induced_maps_of_left_sp1() {
        let a = induced_center_maps(&left_sp1()).unwrap();
        assert_eq!(a.len(), 1);
        assert!((&a[0] - Matrix::identity(3, 3)).amax() < 1e-12);
        assert!(matches!(induced_center_maps(&rotation_pair()), Err(Error::NotBlockForm(_))));
    }
}
