//! Constructors for the families of metric pairs: the weakly symmetric families, the
//! remaining geodesic-orbit families, Clifford-type pairs and the central reductions of
//! the maximal commutative pair on ℝ⁸.

pub mod clifford;
pub mod octonion;
pub mod section5;
pub mod su2;

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{self, rat, QMatrix, Rational};
use crate::linalg::{self, Matrix};
use crate::pair::MetricPair;
use crate::quaternion::{left_mult_exact, left_mult_matrix, right_mult_matrix, QuatQ, Quaternion};

pub use clifford::{clifford_admissible_types, clifford_pair, is_clifford_type, CliffordCase};
pub use octonion::{j_prime, octonion_complex_structures, octonion_complex_structures_exact};
pub use section5::{central_reduction, central_reduction_exact, section5_catalog, section5_entry, CatalogEntry, Reduction};
pub use su2::{su2_irrep, su2_irrep_exact};

/// A family parameter: exact rational (JSON integer or "p/q" string) or a float.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Exact(Rational),
    Float(f64),
}

impl Param {
    pub fn value(&self) -> f64 {
        match self {
            Param::Exact(q) => exact::to_f64(q),
            Param::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<Rational> {
        match self {
            Param::Exact(q) => Some(q.clone()),
            Param::Float(_) => None,
        }
    }

    pub fn int(n: i64) -> Self {
        Param::Exact(rat(n))
    }
}

impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::Float(x)
    }
}

impl From<i64> for Param {
    fn from(n: i64) -> Self {
        Param::int(n)
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Param::Exact(q) => s.serialize_str(&exact::format_rational(q)),
            Param::Float(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Float(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Param::int(n)),
            Raw::Float(x) => Ok(Param::Float(x)),
            Raw::Str(s) => exact::parse_rational(&s).map(Param::Exact).ok_or_else(|| serde::de::Error::custom(format!("invalid rational '{s}'"))),
        }
    }
}

pub type Grid = Vec<Vec<Param>>;
pub type Imag = [Param; 3];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Dim1 {
        j: Grid,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gram: Option<Grid>,
    },
    Dim2 {
        a: Vec<Imag>,
        b: Vec<Imag>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gram: Option<Grid>,
    },
    Dim3Centralizer {
        a: Vec<Imag>,
        b: Vec<Imag>,
        c: Vec<Imag>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gram: Option<Grid>,
    },
    Dim3Scaled {
        lambda: Vec<Param>,
        mu: Vec<Param>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gram: Option<Grid>,
    },
    Dim3Rep {
        #[serde(default)]
        lambda: Vec<Param>,
        irreps: Vec<usize>,
    },
    Dim6Theta {
        theta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gram: Option<Grid>,
    },
    Dim7Theta {
        theta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gram: Option<Grid>,
    },
    Clifford {
        case: CliffordCase,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        /// Second eigenvalue of the inner product for the two-eigenvalue types.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<Param>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gram: Option<Grid>,
    },
    Section5Case {
        case: u8,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        theta: Option<f64>,
        /// Inner product on V′ (the part beyond J₁, …, J₅).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gram_tail: Option<Grid>,
    },
}

impl FamilySpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Dim1 { .. } => FamilyKind::Dim1,
            FamilySpec::Dim2 { .. } => FamilyKind::Dim2,
            FamilySpec::Dim3Centralizer { .. } => FamilyKind::Dim3Centralizer,
            FamilySpec::Dim3Scaled { .. } => FamilyKind::Dim3Scaled,
            FamilySpec::Dim3Rep { .. } => FamilyKind::Dim3Rep,
            FamilySpec::Dim6Theta { .. } => FamilyKind::Dim6Theta,
            FamilySpec::Dim7Theta { .. } => FamilyKind::Dim7Theta,
            FamilySpec::Clifford { .. } => FamilyKind::Clifford,
            FamilySpec::Section5Case { case, .. } => FamilyKind::Section5Case(*case),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Dim1,
    Dim2,
    Dim3Centralizer,
    Dim3Scaled,
    Dim3Rep,
    Dim6Theta,
    Dim7Theta,
    Clifford,
    Section5Case(u8),
}

impl FamilyKind {
    pub fn name(&self) -> String {
        match self {
            FamilyKind::Dim1 => "dim1".into(),
            FamilyKind::Dim2 => "dim2".into(),
            FamilyKind::Dim3Centralizer => "dim3_centralizer".into(),
            FamilyKind::Dim3Scaled => "dim3_scaled".into(),
            FamilyKind::Dim3Rep => "dim3_rep".into(),
            FamilyKind::Dim6Theta => "dim6_theta".into(),
            FamilyKind::Dim7Theta => "dim7_theta".into(),
            FamilyKind::Clifford => "clifford".into(),
            FamilyKind::Section5Case(c) => format!("section5_case{c}"),
        }
    }
}

/// What the classification predicts for a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Ws,
    NotWs,
    Unknown,
}

/// A constructed family with the metadata the weak-symmetry engine needs.
#[derive(Debug, Clone)]
pub struct Family {
    pub spec: FamilySpec,
    pub kind: FamilyKind,
    pub pair: MetricPair,
    /// Number of quaternionic blocks ℍ^p (0 when 𝔞 is not block-structured).
    pub blocks: usize,
    pub theta: Option<f64>,
    pub expected: Expectation,
    pub expected_nonsingular: Option<bool>,
    /// Candidate elements of the discrete part of N(V); filtered by membership before use.
    pub representatives: Vec<Matrix>,
    pub warnings: Vec<String>,
}

impl Family {
    fn new(spec: &FamilySpec, pair: MetricPair) -> Self {
        Self {
            spec: spec.clone(),
            kind: spec.kind(),
            pair,
            blocks: 0,
            theta: None,
            expected: Expectation::Unknown,
            expected_nonsingular: None,
            representatives: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<Family> {
    match spec {
        FamilySpec::Dim1 { j, gram } => build_dim1(spec, j, gram.as_ref()),
        FamilySpec::Dim2 { a, b, gram } => build_dim2(spec, a, b, gram.as_ref()),
        FamilySpec::Dim3Centralizer { a, b, c, gram } => build_dim3_centralizer(spec, a, b, c, gram.as_ref()),
        FamilySpec::Dim3Scaled { lambda, mu, gram } => build_dim3_scaled(spec, lambda, mu, gram.as_ref()),
        FamilySpec::Dim3Rep { lambda, irreps } => build_dim3_rep(spec, lambda, irreps),
        FamilySpec::Dim6Theta { theta, gram } => build_theta(spec, *theta, false, gram.as_ref()),
        FamilySpec::Dim7Theta { theta, gram } => build_theta(spec, *theta, true, gram.as_ref()),
        FamilySpec::Clifford { case, p, dim, lambda, gram } => clifford::build_clifford(spec, *case, *p, *dim, lambda.as_ref(), gram.as_ref()),
        FamilySpec::Section5Case { case, theta, gram_tail } => {
            section5::build_section5(spec, *case, theta.unwrap_or(std::f64::consts::FRAC_PI_4), gram_tail.as_ref())
        }
    }
}

pub(crate) fn grid_to_matrix(g: &Grid) -> Result<(Matrix, Option<QMatrix>)> {
    let n = g.len();
    let cols = g.first().map_or(0, |r| r.len());
    if g.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    let m = Matrix::from_fn(n, cols, |r, c| g[r][c].value());
    let exact = g.iter().all(|r| r.iter().all(|p| matches!(p, Param::Exact(_)))).then(|| QMatrix::from_fn(n, cols, |r, c| g[r][c].exact().unwrap()));
    Ok((m, exact))
}

/// Attach an optional user gram, keeping exactness when both sides are rational.
pub(crate) fn apply_gram(pair: MetricPair, gram: Option<&Grid>) -> Result<MetricPair> {
    let Some(g) = gram else { return Ok(pair) };
    let (m, q) = grid_to_matrix(g)?;
    match q {
        Some(q) if pair.exact().is_some() => pair.with_exact_gram(q),
        _ => pair.with_gram(m),
    }
}

fn imag_exact(q: &Imag) -> Option<QuatQ> {
    Some(QuatQ::imaginary(q[0].exact()?, q[1].exact()?, q[2].exact()?))
}

fn imag_float(q: &Imag) -> Quaternion {
    Quaternion::imaginary(q[0].value(), q[1].value(), q[2].value())
}

fn imag_vec(q: &Imag) -> Vector3<f64> {
    Vector3::new(q[0].value(), q[1].value(), q[2].value())
}

/// J = diag(L_{q₁}, …, L_{q_p}), exact when every quaternion is rational.
fn block_left(qs: &[&Imag]) -> (Matrix, Option<QMatrix>) {
    let float = linalg::block_diag(&qs.iter().map(|q| left_mult_matrix(&imag_float(q))).collect::<Vec<_>>());
    let exact = qs.iter().map(|q| imag_exact(q).map(|e| left_mult_exact(&e))).collect::<Option<Vec<_>>>().map(|b| exact::block_diag(&b));
    (float, exact)
}

fn pair_from_blocks(dim_a: usize, mats: Vec<(Matrix, Option<QMatrix>)>) -> Result<MetricPair> {
    let exact: Option<Vec<QMatrix>> = mats.iter().map(|(_, e)| e.clone()).collect();
    match exact {
        Some(e) => MetricPair::from_exact(dim_a, e, None),
        None => MetricPair::with_standard(dim_a, mats.into_iter().map(|(m, _)| m).collect()),
    }
}

/// Block-diagonal left and right multiplications by i, j, k on ℍ^p.
fn quaternion_representatives(p: usize) -> Vec<Matrix> {
    let mut reps = Vec::new();
    for q in [Quaternion::i(), Quaternion::j(), Quaternion::k()] {
        reps.push(linalg::block_diag(&vec![left_mult_matrix(&q); p]));
        reps.push(linalg::block_diag(&vec![right_mult_matrix(&q); p]));
    }
    reps
}

fn build_dim1(spec: &FamilySpec, j: &Grid, gram: Option<&Grid>) -> Result<Family> {
    let (m, q) = grid_to_matrix(j)?;
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidFamily("J must be square".into()));
    }
    let n = m.nrows();
    let pair = match q {
        Some(q) => MetricPair::from_exact(n, vec![q], None)?,
        None => MetricPair::with_standard(n, vec![m.clone()])?,
    };
    let pair = apply_gram(pair, gram)?;
    let mut fam = Family::new(spec, pair);
    let smallest = m.singular_values().iter().fold(f64::INFINITY, |a, b| a.min(*b));
    if smallest <= 1e-9 * m.amax().max(1.0) {
        fam.warnings.push("singular family degeneration: J has a kernel".into());
        fam.expected_nonsingular = Some(false);
    } else {
        fam.expected_nonsingular = Some(true);
    }
    fam.expected = Expectation::Ws;
    Ok(fam)
}

fn check_lengths(lists: &[usize]) -> Result<usize> {
    let p = lists[0];
    if p == 0 || lists.iter().any(|&l| l != p) {
        return Err(Error::InvalidFamily("parameter lists must be non-empty and of equal length".into()));
    }
    Ok(p)
}

fn build_dim2(spec: &FamilySpec, a: &[Imag], b: &[Imag], gram: Option<&Grid>) -> Result<Family> {
    let p = check_lengths(&[a.len(), b.len()])?;
    let mut warnings = Vec::new();
    for s in 0..p {
        let (va, vb) = (imag_vec(&a[s]), imag_vec(&b[s]));
        if va.cross(&vb).norm() <= 1e-12 * (va.norm() * vb.norm()).max(1e-300) {
            warnings.push(format!("singular family degeneration: a_{0} and b_{0} are linearly dependent", s + 1));
        }
    }
    let j1 = block_left(&a.iter().collect::<Vec<_>>());
    let j2 = block_left(&b.iter().collect::<Vec<_>>());
    let pair = apply_gram(pair_from_blocks(4 * p, vec![j1, j2])?, gram)?;
    let mut fam = Family::new(spec, pair);
    fam.blocks = p;
    fam.expected = Expectation::Ws;
    fam.expected_nonsingular = Some(warnings.is_empty());
    fam.warnings = warnings;
    fam.representatives = quaternion_representatives(p);
    Ok(fam)
}

fn build_dim3_centralizer(spec: &FamilySpec, a: &[Imag], b: &[Imag], c: &[Imag], gram: Option<&Grid>) -> Result<Family> {
    let p = check_lengths(&[a.len(), b.len(), c.len()])?;
    let mut warnings = Vec::new();
    for s in 0..p {
        let det = imag_vec(&a[s]).cross(&imag_vec(&b[s])).dot(&imag_vec(&c[s]));
        if det.abs() <= 1e-12 {
            warnings.push(format!("singular family degeneration: a_{0}, b_{0}, c_{0} do not span Im ℍ", s + 1));
        }
    }
    let mats = [a, b, c].iter().map(|l| block_left(&l.iter().collect::<Vec<_>>())).collect();
    let pair = apply_gram(pair_from_blocks(4 * p, mats)?, gram)?;
    let mut fam = Family::new(spec, pair);
    fam.blocks = p;
    fam.expected_nonsingular = Some(warnings.is_empty());
    fam.warnings = warnings;
    fam.representatives = quaternion_representatives(p);
    Ok(fam)
}

/// Inner products on span(J₁, J₂, J₃) for which J₁, J₂, J₃ are orthogonal and ‖J₂‖ = ‖J₃‖.
fn check_scaled_gram(g: &Matrix) -> Result<()> {
    let scale = g.amax().max(1.0);
    let off = [g[(0, 1)], g[(0, 2)], g[(1, 2)]].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if off > 1e-12 * scale || (g[(1, 1)] - g[(2, 2)]).abs() > 1e-12 * scale {
        return Err(Error::InadmissibleGram("dim3_scaled requires J₁, J₂, J₃ mutually orthogonal with ‖J₂‖ = ‖J₃‖".into()));
    }
    Ok(())
}

fn build_dim3_scaled(spec: &FamilySpec, lambda: &[Param], mu: &[Param], gram: Option<&Grid>) -> Result<Family> {
    let p = check_lengths(&[lambda.len(), mu.len()])?;
    let mut warnings = Vec::new();
    for s in 0..p {
        if lambda[s].value() == 0.0 || mu[s].value() == 0.0 {
            warnings.push(format!("singular family degeneration: λ_{0} or μ_{0} is zero", s + 1));
        }
    }
    let zero = || Param::int(0);
    let scaled = |c: &Param, axis: usize| -> Imag {
        let mut v = [zero(), zero(), zero()];
        v[axis] = c.clone();
        v
    };
    let gens: [Vec<Imag>; 3] =
        [lambda.iter().map(|l| scaled(l, 0)).collect(), mu.iter().map(|m| scaled(m, 1)).collect(), mu.iter().map(|m| scaled(m, 2)).collect()];
    let mats = gens.iter().map(|g| block_left(&g.iter().collect::<Vec<_>>())).collect();
    let pair = apply_gram(pair_from_blocks(4 * p, mats)?, gram)?;
    check_scaled_gram(pair.gram())?;
    let mut fam = Family::new(spec, pair);
    fam.blocks = p;
    fam.expected = Expectation::Ws;
    fam.expected_nonsingular = Some(warnings.is_empty());
    fam.warnings = warnings;
    fam.representatives = quaternion_representatives(p);
    Ok(fam)
}

fn build_dim3_rep(spec: &FamilySpec, lambda: &[Param], irreps: &[usize]) -> Result<Family> {
    if irreps.is_empty() {
        return Err(Error::InvalidFamily("dim3_rep needs at least one irreducible summand".into()));
    }
    if lambda.iter().any(|l| l.value() == 0.0) {
        return Err(Error::InvalidFamily("dim3_rep requires λ_s ≠ 0".into()));
    }
    let reps = irreps.iter().map(|&n| su2_irrep(n)).collect::<Result<Vec<_>>>()?;
    let p = lambda.len();
    let units = [Quaternion::i(), Quaternion::j(), Quaternion::k()];
    let basis: Vec<Matrix> = (0..3)
        .map(|a| {
            let mut blocks: Vec<Matrix> = lambda.iter().map(|l| left_mult_matrix(&units[a]) * l.value()).collect();
            blocks.extend(reps.iter().map(|r| r[a].clone()));
            linalg::block_diag(&blocks)
        })
        .collect();
    let dim_a = basis[0].nrows();
    let pair = MetricPair::with_standard(dim_a, basis)?;
    let mut fam = Family::new(spec, pair);
    fam.blocks = p;
    fam.expected = Expectation::NotWs;
    fam.expected_nonsingular = Some(true);
    fam.representatives = vec![Matrix::identity(dim_a, dim_a)];
    Ok(fam)
}

/// Inner products whose restriction to span(J₁, …, J₅) is standard (up to scale) with the
/// remaining basis elements orthogonal to J₁, …, J₅.
fn check_theta_gram(g: &Matrix) -> Result<()> {
    let scale = g.amax().max(1.0);
    let c = g[(0, 0)];
    for r in 0..g.nrows() {
        for s in 0..5 {
            if r == s {
                if (g[(r, s)] - c).abs() > 1e-12 * scale {
                    return Err(Error::InadmissibleGram("restriction to span(J₁, …, J₅) must be standard".into()));
                }
            } else if g[(r, s)].abs() > 1e-12 * scale {
                return Err(Error::InadmissibleGram("J₁, …, J₅ must be orthonormal and orthogonal to the rest".into()));
            }
        }
    }
    Ok(())
}

fn build_theta(spec: &FamilySpec, theta: f64, seven: bool, gram: Option<&Grid>) -> Result<Family> {
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::InvalidFamily(format!("θ = {theta} outside [0, π/2]")));
    }
    let js = octonion_complex_structures();
    let mut basis: Vec<Matrix> = js[..5].to_vec();
    if seven {
        basis.push(js[5].clone());
    }
    basis.push(j_prime(theta));
    let pair = MetricPair::with_standard(8, basis)?;
    let pair = apply_gram(pair, gram)?;
    check_theta_gram(pair.gram())?;
    let mut fam = Family::new(spec, pair);
    fam.theta = Some(theta);
    let interior = theta > 0.0 && theta < FRAC_PI_2;
    if !interior {
        fam.warnings.push(format!("θ = {theta} is on the boundary of (0, π/2)"));
    }
    fam.expected_nonsingular = Some(theta < FRAC_PI_2);
    fam.expected = match (seven, interior) {
        (false, _) => Expectation::Ws,
        (true, true) => Expectation::NotWs,
        (true, false) => Expectation::Unknown,
    };
    fam.representatives = octonion_representatives();
    Ok(fam)
}

/// ±I and the octonionic J₁, …, J₇ together with their pairwise products.
pub(crate) fn octonion_representatives() -> Vec<Matrix> {
    let js = octonion_complex_structures();
    let mut reps = vec![Matrix::identity(8, 8), -Matrix::identity(8, 8)];
    reps.extend(js.iter().cloned());
    for a in 0..7 {
        for b in a + 1..7 {
            reps.push(&js[a] * &js[b]);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::left_mult_matrix;

    fn im(x: i64, y: i64, z: i64) -> Imag {
        [Param::int(x), Param::int(y), Param::int(z)]
    }

    #[test]
    fn dim2_single_block_is_exact() {
        let spec = FamilySpec::Dim2 { a: vec![im(1, 0, 0)], b: vec![im(0, 1, 0)], gram: None };
        let fam = build_family(&spec).unwrap();
        assert_eq!(fam.pair.dim_a(), 4);
        assert_eq!(fam.pair.v_basis()[0], left_mult_matrix(&Quaternion::i()));
        assert_eq!(fam.pair.v_basis()[1], left_mult_matrix(&Quaternion::j()));
        assert!(fam.pair.exact().is_some());
        assert!(fam.warnings.is_empty());
    }

    #[test]
    fn dim2_parallel_block_warns() {
        let spec = FamilySpec::Dim2 { a: vec![im(1, 0, 0), im(1, 0, 0)], b: vec![im(2, 0, 0), im(0, 1, 0)], gram: None };
        let fam = build_family(&spec).unwrap();
        assert!(fam.warnings[0].contains("singular family degeneration"));
    }

    #[test]
    fn dim3_scaled_blocks() {
        let spec = FamilySpec::Dim3Scaled { lambda: vec![Param::int(1), Param::int(2)], mu: vec![Param::int(1), Param::int(1)], gram: None };
        let fam = build_family(&spec).unwrap();
        let li = left_mult_matrix(&Quaternion::i());
        let expected = linalg::block_diag(&[li.clone(), &li * 2.0]);
        assert_eq!(fam.pair.v_basis()[0], expected);
        let lk = left_mult_matrix(&Quaternion::k());
        assert_eq!(fam.pair.v_basis()[2], linalg::block_diag(&[lk.clone(), lk]));
    }

    #[test]
    fn dim3_scaled_rejects_inadmissible_gram() {
        let g = vec![
            vec![Param::int(1), Param::int(0), Param::int(0)],
            vec![Param::int(0), Param::int(1), Param::int(0)],
            vec![Param::int(0), Param::int(0), Param::int(2)],
        ];
        let spec = FamilySpec::Dim3Scaled { lambda: vec![Param::int(1)], mu: vec![Param::int(1)], gram: Some(g) };
        assert!(matches!(build_family(&spec), Err(Error::InadmissibleGram(_))));
    }

    #[test]
    fn theta_families() {
        let fam = build_family(&FamilySpec::Dim6Theta { theta: std::f64::consts::FRAC_PI_4, gram: None }).unwrap();
        assert_eq!((fam.pair.dim_v(), fam.pair.dim_a()), (6, 8));
        assert!((fam.pair.gram() - Matrix::identity(6, 6)).amax() < 1e-12);
        let fam7 = build_family(&FamilySpec::Dim7Theta { theta: 0.5, gram: None }).unwrap();
        assert_eq!(fam7.expected, Expectation::NotWs);
        assert!(build_family(&FamilySpec::Dim6Theta { theta: 2.0, gram: None }).is_err());
    }

    #[test]
    fn rep_family_dimensions() {
        let fam = build_family(&FamilySpec::Dim3Rep { lambda: vec![Param::int(1)], irreps: vec![3] }).unwrap();
        assert_eq!(fam.pair.dim_a(), 12);
        assert!(build_family(&FamilySpec::Dim3Rep { lambda: vec![], irreps: vec![2] }).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"kind":"dim3_scaled","lambda":[1,"2/3"],"mu":[1.5,1]}"#;
        let spec = FamilySpec::from_json(json).unwrap();
        match &spec {
            FamilySpec::Dim3Scaled { lambda, mu, .. } => {
                assert_eq!(lambda[1], Param::Exact(crate::exact::ratio(2, 3)));
                assert_eq!(mu[0], Param::Float(1.5));
            }
            _ => panic!("wrong kind"),
        }
        let back = serde_json::to_string(&spec).unwrap();
        assert_eq!(FamilySpec::from_json(&back).unwrap(), spec);
    }
}
