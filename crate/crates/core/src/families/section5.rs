//! Central reductions and the reductions of the maximal commutative pair on ℝ⁸,
//! V = span(J₁, …, J₅) ⊕ span(J₆, J₇, J₆J₇).

use std::f64::consts::FRAC_PI_2;

use nalgebra::DVector;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::octonion::octonion_complex_structures_exact;
use super::{grid_to_matrix, octonion_representatives, Expectation, Family, FamilySpec, Grid};
use crate::error::{Error, Result};
use crate::exact::{self, rat, QMatrix, Rational};
use crate::linalg::{self, Matrix};
use crate::pair::MetricPair;

/// Result of a central reduction; `abelian` is set when nothing of V is left.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub pair: MetricPair,
    /// Coefficients (in the old basis) of each new basis element.
    pub coefficients: Vec<Vec<f64>>,
    pub abelian: bool,
}

fn gram_dot(g: &Matrix, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    (a.transpose() * g * b)[(0, 0)]
}

/// Restrict V to the gram-orthogonal complement of `subspace` (coefficient vectors).
pub fn central_reduction(pair: &MetricPair, subspace: &[Vec<f64>]) -> Result<Reduction> {
    let n = pair.dim_v();
    let g = pair.gram();
    let mut sub: Vec<DVector<f64>> = Vec::new();
    for v in subspace {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        let mut w = DVector::from_column_slice(v);
        let norm0 = gram_dot(g, &w, &w).sqrt();
        for u in &sub {
            w -= u * gram_dot(g, u, &w);
        }
        let norm = gram_dot(g, &w, &w).sqrt();
        if norm <= 1e-10 * norm0.max(1e-300) {
            return Err(Error::DependentBasis);
        }
        sub.push(w / norm);
    }
    let mut kept: Vec<DVector<f64>> = Vec::new();
    let mut ortho: Vec<DVector<f64>> = sub.clone();
    for k in 0..n {
        let mut e = DVector::zeros(n);
        e[k] = 1.0;
        for u in &sub {
            e -= u * gram_dot(g, u, &e);
        }
        let mut r = e.clone();
        for u in &ortho {
            r -= u * gram_dot(g, u, &r);
        }
        let rn = gram_dot(g, &r, &r).sqrt();
        if rn > 1e-9 {
            ortho.push(&r / rn);
            let en = gram_dot(g, &e, &e).sqrt();
            kept.push(e / en);
        }
    }
    let basis: Vec<Matrix> = kept.iter().map(|c| linalg::combine(c.as_slice(), pair.v_basis())).collect();
    let m = kept.len();
    let new_gram = Matrix::from_fn(m, m, |a, b| gram_dot(g, &kept[a], &kept[b]));
    let reduced = MetricPair::new(pair.dim_a(), basis, new_gram)?;
    Ok(Reduction { pair: reduced, coefficients: kept.iter().map(|c| c.as_slice().to_vec()).collect(), abelian: m == 0 })
}

/// Central reduction by a subspace given as operators; each must lie in V.
pub fn central_reduction_by_operators(pair: &MetricPair, ops: &[Matrix], tol: f64) -> Result<Reduction> {
    let mut coeffs = Vec::new();
    for m in ops {
        let (z, resid) = pair.coordinates(m);
        if resid > tol {
            return Err(Error::NotInV);
        }
        coeffs.push(z.as_slice().to_vec());
    }
    central_reduction(pair, &coeffs)
}

fn qdot(g: &QMatrix, a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for i in 0..a.len() {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..b.len() {
            s += &a[i] * &g[(i, j)] * &b[j];
        }
    }
    s
}

fn axpy(y: &mut [Rational], c: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi -= c * xi;
    }
}

/// Exact central reduction for pairs with rational basis and gram. The new basis elements
/// are the projections of the old ones (not normalized), so reductions along gram-orthogonal
/// coordinate directions keep the surviving basis elements unchanged.
pub fn central_reduction_exact(pair: &MetricPair, subspace: &[Vec<Rational>]) -> Result<MetricPair> {
    let ex = pair.exact().ok_or_else(|| Error::WrongKind("pair has no exact data".into()))?;
    let g = ex.gram.clone().ok_or_else(|| Error::WrongKind("pair has no exact gram".into()))?;
    let n = pair.dim_v();
    // orthogonal (unnormalized) basis of the subspace
    let mut sub: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for v in subspace {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        let mut w = v.clone();
        for (u, uu) in &sub {
            let c = qdot(&g, u, &w) / uu;
            axpy(&mut w, &c, u);
        }
        let ww = qdot(&g, &w, &w);
        if ww.is_zero() {
            return Err(Error::DependentBasis);
        }
        sub.push((w, ww));
    }
    let mut ortho = sub.clone();
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for k in 0..n {
        let mut e = vec![rat(0); n];
        e[k] = rat(1);
        for (u, uu) in &sub {
            let c = qdot(&g, u, &e) / uu;
            axpy(&mut e, &c, u);
        }
        let mut r = e.clone();
        for (u, uu) in &ortho {
            let c = qdot(&g, u, &r) / uu;
            axpy(&mut r, &c, u);
        }
        let rr = qdot(&g, &r, &r);
        if !rr.is_zero() {
            ortho.push((r, rr));
            kept.push(e);
        }
    }
    let basis: Vec<QMatrix> =
        kept.iter()
            .map(|c| {
                c.iter().zip(&ex.v_basis).fold(exact::zeros(pair.dim_a(), pair.dim_a()), |acc, (ci, v)| {
                    if ci.is_zero() {
                        acc
                    } else {
                        exact::add(&acc, &exact::scale(v, ci))
                    }
                })
            })
            .collect();
    let m = kept.len();
    let new_gram = QMatrix::from_fn(m, m, |a, b| qdot(&g, &kept[a], &kept[b]));
    MetricPair::from_exact(pair.dim_a(), basis, Some(new_gram))
}

/// span(J₁, …, J₅, J₆, J₇, J₆J₇) with the standard inner product (exact).
pub fn section5_maximal() -> MetricPair {
    let js = octonion_complex_structures_exact();
    let mut basis = js.to_vec();
    basis.push(exact::matmul(&js[5], &js[6]));
    MetricPair::from_exact(8, basis, None).expect("maximal pair")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WsExpectation {
    Yes,
    No,
    /// Weakly symmetric iff the inner product on V′ is a multiple of the standard one.
    IfStandard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedRow {
    pub is_ws: WsExpectation,
    pub is_nonsingular: bool,
    pub clifford: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub case: u8,
    pub description: String,
    pub theta: f64,
    pub expected: ExpectedRow,
}

pub fn catalog_entry(case: u8, theta: f64) -> Result<CatalogEntry> {
    let boundary_high = theta >= FRAC_PI_2;
    let (description, is_ws, is_nonsingular, clifford) = match case {
        1 => ("V′ = 0", WsExpectation::Yes, true, true),
        2 => ("V′ = ℝJ′", WsExpectation::Yes, !boundary_high, theta == 0.0),
        3 => ("V′ = span(J₆, J′)", WsExpectation::No, true, false),
        4 => ("V′ = span(J₆, J₇)", WsExpectation::IfStandard, true, true),
        5 => ("V′ = span(J₆, J₆J₇)", WsExpectation::Yes, false, false),
        _ => return Err(Error::InvalidFamily(format!("catalog case {case} not in 1..=5"))),
    };
    Ok(CatalogEntry { case, description: description.into(), theta, expected: ExpectedRow { is_ws, is_nonsingular, clifford } })
}

/// Reduce the maximal pair to V₁ ⊕ V′ for the given case.
fn reduce_maximal(case: u8, theta: f64) -> Result<MetricPair> {
    let max = section5_maximal();
    let unit = |k: usize| -> Vec<Rational> {
        let mut v = vec![rat(0); 8];
        v[k] = rat(1);
        v
    };
    let funit = |k: usize| -> Vec<f64> {
        let mut v = vec![0.0; 8];
        v[k] = 1.0;
        v
    };
    // direction of span(J₇, J₆J₇) orthogonal to J′
    let mut perp = vec![0.0; 8];
    perp[6] = -theta.sin();
    perp[7] = theta.cos();
    match case {
        1 => central_reduction_exact(&max, &[unit(5), unit(6), unit(7)]),
        2 => Ok(central_reduction(&max, &[funit(5), perp])?.pair),
        3 => {
            if !(theta > 0.0 && theta < FRAC_PI_2) {
                return Err(Error::InvalidFamily("case 3 needs θ ∈ (0, π/2)".into()));
            }
            Ok(central_reduction(&max, &[perp])?.pair)
        }
        4 => central_reduction_exact(&max, &[unit(7)]),
        5 => central_reduction_exact(&max, &[unit(6)]),
        _ => Err(Error::InvalidFamily(format!("catalog case {case} not in 1..=5"))),
    }
}

/// Replace the inner product on V′ (basis elements after J₁, …, J₅).
fn with_tail(pair: MetricPair, tail: Option<&Grid>) -> Result<MetricPair> {
    let Some(t) = tail else { return Ok(pair) };
    let (m, q) = grid_to_matrix(t)?;
    let k = pair.dim_v() - 5;
    if m.shape() != (k, k) {
        return Err(Error::DimensionMismatch { expected: k, got: m.nrows() });
    }
    match (q, pair.exact().and_then(|e| e.gram.clone())) {
        (Some(q), Some(mut g)) => {
            for r in 0..k {
                for c in 0..k {
                    g[(5 + r, 5 + c)] = q[(r, c)].clone();
                }
            }
            pair.with_exact_gram(g)
        }
        _ => {
            let mut g = pair.gram().clone();
            g.view_mut((5, 5), (k, k)).copy_from(&m);
            pair.with_gram(g)
        }
    }
}

/// Whether a gram restricted to V′ is a positive multiple of the standard one.
pub fn tail_is_standard(pair: &MetricPair) -> bool {
    let k = pair.dim_v() - 5;
    let g = pair.gram().view((5, 5), (k, k)).into_owned();
    let s = pair.standard_gram().view((5, 5), (k, k)).into_owned();
    let c = g[(0, 0)] / s[(0, 0)];
    (&g - &s * c).amax() <= 1e-10 * g.amax()
}

pub(super) fn build_section5(spec: &FamilySpec, case: u8, theta: f64, tail: Option<&Grid>) -> Result<Family> {
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::InvalidFamily(format!("θ = {theta} outside [0, π/2]")));
    }
    let entry = catalog_entry(case, theta)?;
    let pair = with_tail(reduce_maximal(case, theta)?, tail)?;
    let mut fam = Family::new(spec, pair);
    fam.theta = Some(theta);
    fam.expected_nonsingular = Some(entry.expected.is_nonsingular);
    fam.expected = match entry.expected.is_ws {
        WsExpectation::Yes => Expectation::Ws,
        WsExpectation::No => Expectation::NotWs,
        WsExpectation::IfStandard if tail_is_standard(&fam.pair) => Expectation::Ws,
        WsExpectation::IfStandard => Expectation::NotWs,
    };
    fam.representatives = octonion_representatives();
    Ok(fam)
}

pub fn section5_entry(case: u8, theta: f64, gram_tail: Option<Grid>) -> Result<(Family, CatalogEntry)> {
    let spec = FamilySpec::Section5Case { case, theta: Some(theta), gram_tail };
    let fam = super::build_family(&spec)?;
    Ok((fam, catalog_entry(case, theta)?))
}

/// The five reductions at angle θ, each with its expected row.
pub fn section5_catalog(theta: f64) -> Result<Vec<(Family, CatalogEntry)>> {
    (1..=5).map(|c| section5_entry(c, theta, None)).collect()
}

/// Coefficients of J₅ + J₆J₇ in the basis (J₁, …, J₆, J₆J₇) of case 5 and det of that
/// operator, computed exactly.
pub fn case5_singular_witness() -> Result<(Vec<Rational>, Rational)> {
    let fam = super::build_family(&FamilySpec::Section5Case { case: 5, theta: None, gram_tail: None })?;
    let mut z = vec![rat(0); 7];
    z[4] = rat(1);
    z[6] = rat(1);
    let j = fam.pair.j_of_exact(&z)?;
    Ok((z, exact::det(&j)))
}
