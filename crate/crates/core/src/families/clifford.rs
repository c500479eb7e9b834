//! Pairs of Clifford type: V spanned by anticommuting complex structures.

use serde::{Deserialize, Serialize};

use super::{apply_gram, octonion_representatives, quaternion_representatives, Expectation, Family, FamilySpec, Grid, Param};
use crate::error::{Error, Result};
use crate::exact::{self, QMatrix};
use crate::linalg::{self, Matrix};
use crate::pair::{eigenvalue_type, MetricPair};
use crate::quaternion::{left_mult_exact, QuatQ};

use super::octonion::octonion_complex_structures_exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CliffordCase {
    A,
    B,
    C,
    D,
    E,
    F,
}

/// Eigenvalue types for which a Clifford-type pair of the given dimensions is weakly
/// symmetric. `None` means every inner product is allowed; an empty list means none is.
pub fn clifford_admissible_types(dim_v: usize, dim_a: usize) -> Option<Vec<Vec<usize>>> {
    match (dim_v, dim_a) {
        (1 | 2, _) => None,
        (3, _) => Some(vec![vec![3], vec![2, 1]]),
        (5, 8) => Some(vec![vec![5]]),
        (6, 8) => Some(vec![vec![6], vec![5, 1]]),
        (7, 8) => Some(vec![vec![7], vec![5, 2]]),
        (7, 16) => Some(vec![vec![7]]),
        _ => Some(Vec::new()),
    }
}

/// Whether a standard-orthonormal basis of V consists of anticommuting complex structures.
pub fn is_clifford_type(pair: &MetricPair, tol: f64) -> bool {
    let n = pair.dim_v();
    if n == 0 {
        return false;
    }
    let Some(chol) = pair.standard_gram().cholesky() else { return false };
    let l_inv_t = chol.l().try_inverse().map(|m| m.transpose());
    let Some(c) = l_inv_t else { return false };
    let e: Vec<Matrix> = (0..n).map(|k| linalg::combine(&c.column(k).iter().copied().collect::<Vec<_>>(), pair.v_basis())).collect();
    let id = Matrix::identity(pair.dim_a(), pair.dim_a());
    for a in 0..n {
        if (&e[a] * &e[a] + &id).amax() > tol {
            return false;
        }
        for b in a + 1..n {
            if (&e[a] * &e[b] + &e[b] * &e[a]).amax() > tol {
                return false;
            }
        }
    }
    true
}

fn quaternion_units(p: usize, count: usize) -> Vec<QMatrix> {
    let units = [QuatQ::i(), QuatQ::j(), QuatQ::k()];
    units[..count].iter().map(|u| exact::block_diag(&vec![left_mult_exact(u); p])).collect()
}

/// Basis of the Clifford pair for a case, before choosing the inner product.
pub fn clifford_basis(case: CliffordCase, p: usize, dim: usize) -> Result<(usize, Vec<QMatrix>)> {
    let js = octonion_complex_structures_exact();
    Ok(match case {
        CliffordCase::A => {
            if !(1..=2).contains(&dim) {
                return Err(Error::InvalidFamily("case (a) has dim V ∈ {1, 2}".into()));
            }
            (4 * p, quaternion_units(p, dim))
        }
        CliffordCase::B => (4 * p, quaternion_units(p, 3)),
        CliffordCase::C => (8, js[..5].to_vec()),
        CliffordCase::D => (8, js[..6].to_vec()),
        CliffordCase::E => (8, js.to_vec()),
        CliffordCase::F => (16, js.iter().map(|j| exact::block_diag(&[j.clone(), j.clone()])).collect()),
    })
}

/// Default inner product per case: standard, or the two-eigenvalue type with eigenvalue λ on
/// the distinguished directions (J₁ for (b), J₆ for (d), J₆ and J₇ for (e)).
fn lambda_gram(case: CliffordCase, n: usize, lambda: &Param) -> Result<Grid> {
    let weighted: Vec<usize> = match case {
        CliffordCase::B => vec![0],
        CliffordCase::D => vec![5],
        CliffordCase::E => vec![5, 6],
        _ => return Err(Error::InadmissibleGram("this case has no second eigenvalue".into())),
    };
    Ok((0..n)
        .map(|r| {
            (0..n)
                .map(|c| match (r == c, weighted.contains(&r)) {
                    (true, true) => lambda.clone(),
                    (true, false) => Param::int(1),
                    _ => Param::int(0),
                })
                .collect()
        })
        .collect())
}

pub fn clifford_pair(case: CliffordCase, p: usize, dim: usize, lambda: Option<f64>) -> Result<MetricPair> {
    let spec = FamilySpec::Clifford { case, p: Some(p), dim: Some(dim), lambda: lambda.map(Param::Float), gram: None };
    Ok(super::build_family(&spec)?.pair)
}

pub(super) fn build_clifford(
    spec: &FamilySpec,
    case: CliffordCase,
    p: Option<usize>,
    dim: Option<usize>,
    lambda: Option<&Param>,
    gram: Option<&Grid>,
) -> Result<Family> {
    let p = p.unwrap_or(1);
    if p == 0 {
        return Err(Error::InvalidFamily("p must be positive".into()));
    }
    let (dim_a, basis) = clifford_basis(case, p, dim.unwrap_or(2))?;
    let n = basis.len();
    let pair = MetricPair::from_exact(dim_a, basis, Some(exact::identity(n)))?;
    let user_gram = match (gram, lambda) {
        (Some(g), _) => Some(g.clone()),
        (None, Some(l)) => Some(lambda_gram(case, n, l)?),
        (None, None) => None,
    };
    let pair = apply_gram(pair, user_gram.as_ref())?;
    let ty = eigenvalue_type(&pair);
    if let Some(allowed) = clifford_admissible_types(n, dim_a) {
        if !allowed.contains(&ty.multiplicities) {
            return Err(Error::InadmissibleGram(format!("eigenvalue type {:?} not allowed for case ({:?}); allowed {:?}", ty.multiplicities, case, allowed)));
        }
    }
    let mut fam = Family::new(spec, pair);
    fam.expected = Expectation::Ws;
    fam.expected_nonsingular = Some(true);
    fam.representatives = match case {
        CliffordCase::A | CliffordCase::B => {
            fam.blocks = p;
            quaternion_representatives(p)
        }
        CliffordCase::F => {
            // diag(r, ±r): the second sign is the reflection in the O(2) centralizing V
            octonion_representatives().into_iter().flat_map(|r| [linalg::block_diag(&[r.clone(), r.clone()]), linalg::block_diag(&[r.clone(), -r])]).collect()
        }
        _ => octonion_representatives(),
    };
    Ok(fam)
}

/// K₁⋯K₇ for case (f), which is ±I₁₆.
pub fn case_f_product() -> QMatrix {
    let (_, ks) = clifford_basis(CliffordCase::F, 1, 0).expect("case (f) basis");
    ks.iter().skip(1).fold(ks[0].clone(), |acc, k| exact::matmul(&acc, k))
}
