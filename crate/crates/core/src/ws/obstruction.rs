//! Necessary conditions for weak symmetry and the checks built on them: the invariant Φ on
//! the 7-dimensional family, the split of J², the sign argument for J₆, quaternionic
//! intertwiners and the block/representation invariance tests.

use nalgebra::DVector;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::search::{filter_members, generic_witness_search, SearchConfig, SearchOutcome};
use crate::error::{Error, Result};
use crate::exact::{self, QMatrix, Rational};
use crate::families::clifford::{clifford_admissible_types, is_clifford_type};
use crate::families::{j_prime, octonion_complex_structures, octonion_complex_structures_exact};
use crate::linalg::{self, combine, commutator, matrix_exp, project_onto_span, symmetric_spectrum, trace_inner, Matrix, SymmetricSpectrum};
use crate::normalizer::{induced_center_maps, NormalizerData};
use crate::pair::{eigenvalue_type, MetricPair};
use crate::quaternion::{left_mult_exact, left_mult_matrix, right_mult_exact, right_mult_matrix, QuatQ, Quaternion};

/// ⟨A, B⟩ = −Tr(AB)/8 on so(8), for which J₁, …, J₇ are orthonormal.
fn std_inner(a: &Matrix, b: &Matrix) -> f64 {
    trace_inner(a, b) / a.nrows() as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiValue {
    /// (1/8)·Tr((J² + ‖J‖²I₈)²)
    pub trace: f64,
    /// 4 sin²θ ⟨J, J′⟩² Σᵢ₌₁⁵ ⟨J, Jᵢ⟩²
    pub analytic: f64,
}

/// Φ(J) computed from the trace and from the closed form in terms of the coordinates of J.
pub fn phi_invariant(j: &Matrix, theta: f64) -> PhiValue {
    let js = octonion_complex_structures();
    let n2 = std_inner(j, j);
    let m = j * j + Matrix::identity(8, 8) * n2;
    let trace = (&m * &m).trace() / 8.0;
    let jp = std_inner(j, &j_prime(theta));
    let s: f64 = js[..5].iter().map(|ji| std_inner(j, ji).powi(2)).sum();
    PhiValue { trace, analytic: 4.0 * theta.sin().powi(2) * jp * jp * s }
}

/// ⟨J, J′⟩² Σᵢ₌₁⁵ ⟨J, Jᵢ⟩² evaluated on the transported basis N·Jᵢ = NJᵢNᵀ, N·J′.
pub fn phi_coordinates(j: &Matrix, theta: f64, n: &Matrix) -> f64 {
    let js = octonion_complex_structures();
    let act = |m: &Matrix| n * m * n.transpose();
    let jp = std_inner(j, &act(&j_prime(theta)));
    let s: f64 = js[..5].iter().map(|ji| std_inner(j, &act(ji)).powi(2)).sum();
    jp * jp * s
}

/// J_u = Σ uᵢJᵢ over the first five structures.
fn j_u(u: &[f64; 5]) -> Matrix {
    let js = octonion_complex_structures();
    combine(u, &js[..5])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSplit {
    pub theta: f64,
    pub u: [f64; 5],
    pub a: f64,
    pub b: f64,
    pub spectrum: SymmetricSpectrum,
    /// Predicted eigenvalues of J² in increasing order with multiplicities.
    pub expected: SymmetricSpectrum,
    /// ‖A − Aᵀ‖, |Tr A| and ‖A² − ‖u‖²I‖ for A = J_uJ₆J₇.
    pub a_residuals: [f64; 3],
    pub max_error: f64,
    pub matches: bool,
}

/// Spectrum of J² for J = J_u + aJ₆ + bJ′ against −‖J‖² ± 2 sinθ·b·‖u‖.
pub fn spectrum_split(theta: f64, u: &[f64; 5], a: f64, b: f64, tol: f64) -> SpectrumSplit {
    let js = octonion_complex_structures();
    let ju = j_u(u);
    let j = &ju + &js[5] * a + j_prime(theta) * b;
    let am = &ju * &js[5] * &js[6];
    let un2: f64 = u.iter().map(|x| x * x).sum();
    let a_residuals = [(&am - am.transpose()).amax(), am.trace().abs(), (&am * &am - Matrix::identity(8, 8) * un2).amax()];
    let norm2 = un2 + a * a + b * b;
    let delta = 2.0 * theta.sin() * b * un2.sqrt();
    let expected = if delta.abs() > 1e-6 {
        let (lo, hi) = (-norm2 - delta.abs(), -norm2 + delta.abs());
        SymmetricSpectrum { eigenvalues: vec![lo, hi], multiplicities: vec![4, 4] }
    } else {
        SymmetricSpectrum { eigenvalues: vec![-norm2], multiplicities: vec![8] }
    };
    let spectrum = symmetric_spectrum(&(&j * &j), 1e-8);
    let eig = (&j * &j).symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    let predicted: Vec<f64> = expected.eigenvalues.iter().zip(&expected.multiplicities).flat_map(|(e, m)| std::iter::repeat_n(*e, *m)).collect();
    let max_error = vals.iter().zip(&predicted).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let matches = max_error <= tol && spectrum.multiplicities == expected.multiplicities;
    SpectrumSplit { theta, u: *u, a, b, spectrum, expected, a_residuals, max_error, matches }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactAIdentities {
    pub symmetric: bool,
    pub trace_zero: bool,
    pub square_is_norm: bool,
}

impl ExactAIdentities {
    pub fn all(&self) -> bool {
        self.symmetric && self.trace_zero && self.square_is_norm
    }
}

/// A = J_uJ₆J₇ in rational arithmetic: Aᵀ = A, Tr A = 0, A² = ‖u‖²I₈.
pub fn exact_a_identities(u: &[Rational; 5]) -> ExactAIdentities {
    let js = octonion_complex_structures_exact();
    let ju = u.iter().zip(&js[..5]).fold(exact::zeros(8, 8), |acc, (c, m)| exact::add(&acc, &exact::scale(m, c)));
    let a = exact::matmul(&exact::matmul(&ju, &js[5]), &js[6]);
    let un2 = u.iter().fold(Rational::zero(), |s, x| s + x * x);
    ExactAIdentities {
        symmetric: a.transpose() == a,
        trace_zero: exact::trace(&a).is_zero(),
        square_is_norm: exact::matmul(&a, &a) == exact::scale(&exact::identity(8), &un2),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraCheck {
    pub index: usize,
    /// ‖[D, J₆]‖
    pub j6: f64,
    /// ‖[D, J′]‖
    pub j_prime: f64,
}

/// Signs of N·J₆, N·J₇ and N·J′ for a discrete member N, with the raw inner products.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonRecord {
    pub source: String,
    pub raw: [f64; 3],
    /// (ε₆, ε₇, ε′); zero when the line is not preserved.
    pub signs: [i8; 3],
    /// ε′ = ε₇ = ε₆ε₇
    pub relation_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchFailureEntry {
    pub x: Vec<f64>,
    pub best: f64,
    pub restarts: usize,
    pub witnessed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eq42Sample {
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub theta: f64,
    pub seed: u64,
    pub phi_values: Vec<PhiValue>,
    pub eq42: Vec<Eq42Sample>,
    pub spectrum_checks: Vec<SpectrumSplit>,
    pub algebra_checks: Vec<AlgebraCheck>,
    pub epsilons: Vec<EpsilonRecord>,
    pub search_failures: Vec<SearchFailureEntry>,
    pub max_commutator: f64,
    pub necessary_conditions_violated: bool,
    pub conclusion: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObstructionConfig {
    pub phi_samples: usize,
    pub eq42_samples: usize,
    pub spectrum_samples: usize,
    /// Random elements exp(D), D ∈ 𝔫(V), added to the discrete members whose signs are tested.
    pub member_samples: usize,
    /// Number of X for the witness search at J = J₆.
    pub x_samples: usize,
    pub commutator_tol: f64,
    pub search: SearchConfig,
}

impl Default for ObstructionConfig {
    fn default() -> Self {
        Self {
            phi_samples: 100,
            eq42_samples: 100,
            spectrum_samples: 20,
            member_samples: 5,
            x_samples: 10,
            commutator_tol: 1e-10,
            search: SearchConfig::default(),
        }
    }
}

fn unit_gaussian<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

fn epsilon_record(source: String, n: &Matrix, theta: f64) -> EpsilonRecord {
    let js = octonion_complex_structures();
    let jp = j_prime(theta);
    let sign_of = |m: &Matrix| {
        let moved = n * m * n.transpose();
        let c = std_inner(&moved, m);
        let s: i8 = if (c.abs() - 1.0).abs() <= 1e-8 { c.signum() as i8 } else { 0 };
        (c, s)
    };
    let (r6, e6) = sign_of(&js[5]);
    let (r7, e7) = sign_of(&js[6]);
    let (rp, ep) = sign_of(&jp);
    let relation_holds = ep != 0 && ep == e7 && e7 == e6 * e7;
    EpsilonRecord { source, raw: [r6, r7, rp], signs: [e6, e7, ep], relation_holds }
}

/// The sign argument on the 7-dimensional family: every D ∈ 𝔫(V) kills J₆ and J′, every
/// tested member of N(V) fixes J₆ (ε₆ = 1), so no N reverses J₆. Φ, Eq. (4.2)-type
/// transport equalities and the J² split are recorded alongside, together with the failed
/// witness searches at J = J₆.
pub fn dim7_obstruction(
    pair: &MetricPair,
    theta: f64,
    nd: &NormalizerData,
    representatives: &[Matrix],
    cfg: &ObstructionConfig,
    seed: u64,
) -> Result<ObstructionReport> {
    if pair.dim_a() != 8 {
        return Err(Error::WrongKind("the dim-7 obstruction needs dim 𝔞 = 8".into()));
    }
    let js = octonion_complex_structures();
    let j6 = js[5].clone();
    let jp = j_prime(theta);
    for m in [&j6, &jp] {
        if project_onto_span(m, pair.v_basis()).1 > 1e-9 {
            return Err(Error::NotInV);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let algebra_checks: Vec<AlgebraCheck> =
        nd.n_basis.iter().enumerate().map(|(index, d)| AlgebraCheck { index, j6: commutator(d, &j6).norm(), j_prime: commutator(d, &jp).norm() }).collect();
    let max_commutator = algebra_checks.iter().map(|c| c.j6.max(c.j_prime)).fold(0.0, f64::max);

    let random_j = |rng: &mut ChaCha8Rng| combine(&unit_gaussian(rng, pair.dim_v()), pair.v_basis());
    let phi_values: Vec<PhiValue> = (0..cfg.phi_samples).map(|_| phi_invariant(&random_j(&mut rng), theta)).collect();

    let random_member = |rng: &mut ChaCha8Rng| -> Result<Matrix> {
        let c: Vec<f64> = nd.n_basis.iter().map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        matrix_exp(&combine(&c, &nd.n_basis))
    };
    let mut eq42 = Vec::with_capacity(cfg.eq42_samples);
    for _ in 0..cfg.eq42_samples {
        let j = random_j(&mut rng);
        let n = random_member(&mut rng)?;
        eq42.push(Eq42Sample { lhs: phi_coordinates(&j, theta, &Matrix::identity(8, 8)), rhs: phi_coordinates(&j, theta, &n) });
    }

    let spectrum_checks: Vec<SpectrumSplit> = (0..cfg.spectrum_samples)
        .map(|_| {
            let v: Vec<f64> = (0..7).map(|_| rng.sample(StandardNormal)).collect();
            spectrum_split(theta, &[v[0], v[1], v[2], v[3], v[4]], v[5], v[6], 1e-9)
        })
        .collect();

    let members = filter_members(pair, representatives, 1e-9);
    let mut epsilons: Vec<EpsilonRecord> = members.iter().enumerate().map(|(k, n)| epsilon_record(format!("representative {k}"), n, theta)).collect();
    for k in 0..cfg.member_samples {
        let n = random_member(&mut rng)?;
        epsilons.push(epsilon_record(format!("exp(D) sample {k}"), &n, theta));
    }

    let mut search_failures = Vec::with_capacity(cfg.x_samples);
    for k in 0..cfg.x_samples {
        let mut srng = ChaCha8Rng::seed_from_u64(seed);
        srng.set_stream(k as u64 + 1);
        let x = DVector::from_vec(unit_gaussian(&mut srng, 8));
        let entry = match generic_witness_search(pair, &nd.n_basis, &members, &j6, &x, &cfg.search, &mut srng)? {
            SearchOutcome::Found(w) => SearchFailureEntry { x: x.as_slice().to_vec(), best: w.residuals.max().powi(2), restarts: 0, witnessed: true },
            SearchOutcome::Failed(f) => SearchFailureEntry { x: x.as_slice().to_vec(), best: f.best, restarts: f.restarts, witnessed: false },
        };
        search_failures.push(entry);
    }

    let eps_ok = !epsilons.is_empty() && epsilons.iter().all(|e| e.signs[0] == 1 && e.relation_holds);
    let necessary_conditions_violated = max_commutator <= cfg.commutator_tol && eps_ok;
    let conclusion = if necessary_conditions_violated {
        "necessary conditions violated ⇒ not WS: N(V) fixes J₆, so NJ₆ = −J₆N has no solution".to_string()
    } else {
        "necessary conditions not established".to_string()
    };
    Ok(ObstructionReport {
        theta,
        seed,
        phi_values,
        eq42,
        spectrum_checks,
        algebra_checks,
        epsilons,
        search_failures,
        max_commutator,
        necessary_conditions_violated,
        conclusion,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Intertwiner {
    pub w: [f64; 4],
    pub w_prime: [f64; 4],
    /// ‖L_w R_{w′} − Q‖
    pub round_trip: f64,
}

fn psi_apply(psi: &Matrix, u: &Quaternion) -> Quaternion {
    let v = psi * DVector::from_column_slice(u.im().as_slice());
    Quaternion::imaginary(v[0], v[1], v[2])
}

/// Matrix of u ↦ w⁻¹uw on Im ℍ.
pub fn conjugation_matrix(w: &Quaternion) -> Matrix {
    let inv = w.inverse().expect("nonzero quaternion");
    let units = [Quaternion::i(), Quaternion::j(), Quaternion::k()];
    let cols: Vec<DVector<f64>> = units.iter().map(|u| DVector::from_column_slice((inv * *u * *w).im().as_slice())).collect();
    Matrix::from_columns(&cols)
}

/// Writes an intertwiner Q (L_u Q = Q L_{ψ(u)}) as L_w R_{w′} with w a unit quaternion whose
/// first nonzero coefficient is positive.
pub fn intertwiner_decompose(q: &Matrix, psi: &Matrix) -> Result<Intertwiner> {
    if q.shape() != (4, 4) || psi.shape() != (3, 3) {
        return Err(Error::DimensionMismatch { expected: 4, got: q.nrows() });
    }
    let scale = q.amax();
    if scale == 0.0 {
        return Err(Error::NotIntertwiner("Q = 0".into()));
    }
    let units = [Quaternion::i(), Quaternion::j(), Quaternion::k()];
    let mut rel = 0.0f64;
    let mut system = Matrix::zeros(12, 4);
    for (k, u) in units.iter().enumerate() {
        let pu = psi_apply(psi, u);
        rel = rel.max((left_mult_matrix(u) * q - q * left_mult_matrix(&pu)).amax() / scale);
        system.view_mut((4 * k, 0), (4, 4)).copy_from(&(right_mult_matrix(&pu) - left_mult_matrix(u)));
    }
    if rel > 1e-8 {
        return Err(Error::NotIntertwiner(format!("relation residual {rel:.3e}")));
    }
    let ker = linalg::kernel(&system, 1e-8);
    if ker.ncols() == 0 {
        return Err(Error::NotIntertwiner("ψ is not an inner automorphism".into()));
    }
    let mut w = Quaternion::from_slice(ker.column(0).as_slice()).normalize();
    if let Some(first) = w.coeffs().into_iter().find(|c| c.abs() > 1e-12) {
        if first < 0.0 {
            w = -w;
        }
    }
    let wp = q * DVector::from_column_slice(&w.conj().coeffs());
    let w_prime = Quaternion::from_slice(wp.as_slice());
    let round_trip = (left_mult_matrix(&w) * right_mult_matrix(&w_prime) - q).amax();
    Ok(Intertwiner { w: w.coeffs(), w_prime: w_prime.coeffs(), round_trip })
}

/// Exact version: w is normalized to leading coefficient 1 and w′ = Q(w⁻¹), so that
/// L_w R_{w′} = Q holds identically.
pub fn intertwiner_decompose_exact(q: &QMatrix, psi: &QMatrix) -> Result<(QuatQ, QuatQ)> {
    if q.shape() != (4, 4) || psi.shape() != (3, 3) {
        return Err(Error::DimensionMismatch { expected: 4, got: q.nrows() });
    }
    if exact::is_zero(q) {
        return Err(Error::NotIntertwiner("Q = 0".into()));
    }
    let units = [QuatQ::i(), QuatQ::j(), QuatQ::k()];
    let mut system = exact::zeros(12, 4);
    for (k, u) in units.iter().enumerate() {
        let c = u.coeffs();
        let im = QMatrix::from_fn(3, 1, |r, _| c[r + 1].clone());
        let pim = psi * im;
        let pu = QuatQ::imaginary(pim[(0, 0)].clone(), pim[(1, 0)].clone(), pim[(2, 0)].clone());
        let lu = left_mult_exact(u);
        if exact::matmul(&lu, q) != exact::matmul(q, &left_mult_exact(&pu)) {
            return Err(Error::NotIntertwiner("relation fails".into()));
        }
        let block = exact::sub(&right_mult_exact(&pu), &lu);
        for r in 0..4 {
            for col in 0..4 {
                system[(4 * k + r, col)] = block[(r, col)].clone();
            }
        }
    }
    let ker = exact::nullspace(&system);
    let v = ker.first().ok_or_else(|| Error::NotIntertwiner("ψ is not an inner automorphism".into()))?;
    let lead = v.iter().find(|c| !c.is_zero()).cloned().expect("nonzero kernel vector");
    let w = QuatQ::from_coeffs([0, 1, 2, 3].map(|i| &v[i] / &lead));
    let inv = w.inverse().expect("nonzero quaternion").coeffs();
    let wp = exact::matmul(q, &QMatrix::from_fn(4, 1, |r, _| inv[r].clone()));
    let w_prime = QuatQ::from_coeffs([0, 1, 2, 3].map(|i| wp[(i, 0)].clone()));
    if exact::matmul(&left_mult_exact(&w), &right_mult_exact(&w_prime)) != *q {
        return Err(Error::NotIntertwiner("round trip fails".into()));
    }
    Ok((w, w_prime))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockStructure {
    #[serde(with = "crate::json::matrices")]
    pub maps: Vec<Matrix>,
    /// dets[s][r] = det(A_s A_r⁻¹)
    pub dets: Vec<Vec<f64>>,
    pub g1: Vec<usize>,
    pub g2: Vec<usize>,
    pub g3: Vec<usize>,
    pub dim_p: usize,
    /// 𝔤₂ is empty and 𝔭(V) = 0, so no N acts as −Id on V.
    pub flagged_not_ws: bool,
}

/// Partition of the quaternionic blocks by det(A₁A_r⁻¹) ∈ {1, −1, other}.
pub fn block_structure(pair: &MetricPair, nd: &NormalizerData) -> Result<BlockStructure> {
    if pair.dim_v() != 3 {
        return Err(Error::WrongKind("block structure needs dim V = 3".into()));
    }
    let maps = induced_center_maps(pair)?;
    let dets: Vec<f64> = maps.iter().map(|a| a.determinant()).collect();
    let scale = maps.iter().map(|a| a.amax()).fold(0.0, f64::max).powi(3).max(1e-300);
    if let Some(s) = dets.iter().position(|d| d.abs() <= 1e-12 * scale) {
        return Err(Error::SingularBlockMap(s));
    }
    let table: Vec<Vec<f64>> = dets.iter().map(|ds| dets.iter().map(|dr| ds / dr).collect()).collect();
    let (mut g1, mut g2, mut g3) = (Vec::new(), Vec::new(), Vec::new());
    for (r, d) in table[0].iter().enumerate() {
        if (d - 1.0).abs() <= 1e-9 {
            g1.push(r);
        } else if (d + 1.0).abs() <= 1e-9 {
            g2.push(r);
        } else {
            g3.push(r);
        }
    }
    let dim_p = nd.dims.2;
    let flagged_not_ws = g2.is_empty() && dim_p == 0;
    Ok(BlockStructure { maps, dets: table, g1, g2, g3, dim_p, flagged_not_ws })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepBlockReport {
    pub blocks: usize,
    pub max_off_diagonal: f64,
    pub block_diagonal: bool,
    /// Block invariance makes the projection to W a weakly symmetric pair on its own,
    /// which is impossible for these representations.
    pub flagged_not_ws: bool,
}

/// Checks that 𝔫(V) preserves 𝔞 = ℍ^p ⊕ W.
pub fn rep_block_invariance(pair: &MetricPair, nd: &NormalizerData, blocks: usize) -> RepBlockReport {
    let h = 4 * blocks;
    let n = pair.dim_a();
    let max_off_diagonal = nd
        .n_basis
        .iter()
        .map(|d| if h == 0 || h >= n { 0.0 } else { d.view((0, h), (h, n - h)).amax().max(d.view((h, 0), (n - h, h)).amax()) })
        .fold(0.0, f64::max);
    let block_diagonal = max_off_diagonal <= 1e-10;
    RepBlockReport { blocks, max_off_diagonal, block_diagonal, flagged_not_ws: block_diagonal }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliffordCheck {
    pub is_clifford: bool,
    pub eigenvalue_type: Vec<usize>,
    pub admissible: Option<Vec<Vec<usize>>>,
    pub flagged_not_ws: bool,
}

/// For Clifford-type pairs, whether the eigenvalue type of the inner product is one of the
/// admissible ones.
pub fn clifford_check(pair: &MetricPair) -> CliffordCheck {
    let is_clifford = is_clifford_type(pair, 1e-9);
    let ty = eigenvalue_type(pair).multiplicities;
    let admissible = clifford_admissible_types(pair.dim_v(), pair.dim_a());
    let flagged_not_ws = is_clifford && admissible.as_ref().is_some_and(|a| !a.contains(&ty));
    CliffordCheck { is_clifford, eigenvalue_type: ty, admissible, flagged_not_ws }
}

/// Exact (w, w′) ↦ L_w R_{w′} and the conjugation matrix of w, for round-trip tests.
pub fn compose_exact(w: &QuatQ, wp: &QuatQ) -> (QMatrix, QMatrix) {
    let inv = w.inverse().expect("nonzero quaternion");
    let units = [QuatQ::i(), QuatQ::j(), QuatQ::k()];
    let mut psi = exact::zeros(3, 3);
    for (c, u) in units.iter().enumerate() {
        let img = (inv.clone() * u.clone() * w.clone()).coeffs();
        for r in 0..3 {
            psi[(r, c)] = img[r + 1].clone();
        }
    }
    (exact::matmul(&left_mult_exact(w), &right_mult_exact(wp)), psi)
}
