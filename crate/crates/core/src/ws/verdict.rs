//! Sampled weak-symmetry verdicts: witnesses on random (J, X), plus the applicable
//! necessary conditions.

use std::f64::consts::FRAC_PI_2;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::obstruction::{
    block_structure, clifford_check, dim7_obstruction, rep_block_invariance, BlockStructure, CliffordCheck, ObstructionConfig, ObstructionReport,
    RepBlockReport,
};
use super::search::{filter_members, generic_witness_search, FailureRecord, SearchConfig, SearchOutcome};
use super::witness::{witness_dim1, witness_dim2, witness_dim3, witness_stabilizer, StabilizerConfig, Witness};
use crate::error::Result;
use crate::families::{octonion_complex_structures, CliffordCase, Expectation, Family, FamilyKind, FamilySpec};
use crate::linalg::Matrix;
use crate::normalizer::{normalizer_algebra_with_tol, NormalizerData};
use crate::tol::Tolerances;

/// How witnesses are produced for a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Dim1,
    Dim2,
    Dim3,
    /// Stabilizer search with P = J_k (1-based octonion index).
    Stabilizer(usize),
    Generic,
}

pub fn method_for(fam: &Family) -> Method {
    match (&fam.kind, &fam.spec) {
        (FamilyKind::Dim1, _) => Method::Dim1,
        (FamilyKind::Dim2, _) => Method::Dim2,
        (FamilyKind::Dim3Scaled, _) => Method::Dim3,
        (FamilyKind::Dim6Theta, _) => Method::Stabilizer(6),
        (FamilyKind::Clifford, FamilySpec::Clifford { case, .. }) => match case {
            CliffordCase::A if fam.pair.dim_v() == 1 => Method::Dim1,
            CliffordCase::A => Method::Dim2,
            CliffordCase::B => Method::Dim3,
            CliffordCase::C => Method::Stabilizer(6),
            CliffordCase::D => Method::Stabilizer(7),
            CliffordCase::E | CliffordCase::F => Method::Generic,
        },
        (FamilyKind::Section5Case(1 | 2), _) => Method::Stabilizer(6),
        (FamilyKind::Section5Case(5), _) => Method::Stabilizer(7),
        _ => Method::Generic,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerdictConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: Tolerances,
    pub search: SearchConfig,
    pub stabilizer: StabilizerConfig,
    pub obstruction: ObstructionConfig,
}

impl Default for VerdictConfig {
    fn default() -> Self {
        Self::new(100, 0, Tolerances::default())
    }
}

impl VerdictConfig {
    pub fn new(samples: usize, seed: u64, tol: Tolerances) -> Self {
        let search = SearchConfig { success_penalty: tol.success_penalty, report_floor: tol.report_floor, ..SearchConfig::default() };
        Self { samples, seed, tol, search, stabilizer: StabilizerConfig::default(), obstruction: ObstructionConfig { search, ..ObstructionConfig::default() } }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    /// Coordinates of J in the basis of V (unit length for the inner product on V).
    pub z: Vec<f64>,
    pub x: Vec<f64>,
    pub method: Method,
    pub witnessed: bool,
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureRecord>,
    /// Set when the family construction failed and the generic search took over.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Obstructions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim7: Option<ObstructionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_structure: Option<BlockStructure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep_blocks: Option<RepBlockReport>,
    pub clifford: Option<CliffordCheck>,
    /// Necessary conditions for weak symmetry found violated.
    pub violated: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Ws,
    NotWs,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub source: String,
    pub z: Vec<f64>,
    pub x: Vec<f64>,
    pub best_penalty: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WsReport {
    pub version: String,
    pub family: String,
    pub spec: FamilySpec,
    pub config: VerdictConfig,
    pub seed: u64,
    pub method: Method,
    pub normalizer_dims: (usize, usize, usize),
    pub verdict: Verdict,
    pub expected: Expectation,
    pub exit_code: i32,
    pub all_witnessed: bool,
    pub max_residual: f64,
    pub samples: Vec<SampleRecord>,
    pub counterexample_candidates: Vec<Candidate>,
    pub obstructions: Obstructions,
    pub warnings: Vec<String>,
}

/// 0 when the verdict agrees with the expectation (or there is none to contradict),
/// 2 on disagreement, 3 when inconclusive.
pub fn exit_code(verdict: Verdict, expected: Expectation) -> i32 {
    match (verdict, expected) {
        (Verdict::Inconclusive, _) => 3,
        (_, Expectation::Unknown) | (Verdict::Ws, Expectation::Ws) | (Verdict::NotWs, Expectation::NotWs) => 0,
        _ => 2,
    }
}

/// Rng for sample `index`: the seed selects the generator, the index its stream.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// A unit vector for the inner product `gram` and a unit X.
fn draw_sample(rng: &mut ChaCha8Rng, gram: &Matrix, dim_a: usize) -> (Vec<f64>, DVector<f64>) {
    let n = gram.nrows();
    let g = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let l = gram.clone().cholesky().expect("positive definite gram").l();
    let z = l.transpose().solve_upper_triangular(&g).expect("invertible factor") / g.norm();
    let x = DVector::from_fn(dim_a, |_, _| rng.sample::<f64, _>(StandardNormal));
    (z.as_slice().to_vec(), x.normalize())
}

struct Context<'a> {
    fam: &'a Family,
    nd: NormalizerData,
    members: Vec<Matrix>,
    method: Method,
    cfg: &'a VerdictConfig,
}

impl Context<'_> {
    fn explicit(&self, z: &[f64], x: &DVector<f64>, rng: &mut ChaCha8Rng) -> Result<Witness> {
        let pair = &self.fam.pair;
        match self.method {
            Method::Dim1 => witness_dim1(pair, z, x),
            Method::Dim2 => witness_dim2(pair, z, x),
            Method::Dim3 => witness_dim3(pair, z, x),
            Method::Stabilizer(k) => {
                let p = octonion_complex_structures()[k - 1].clone();
                witness_stabilizer(pair, &p, z, x, &self.cfg.stabilizer, rng)
            }
            Method::Generic => unreachable!("generic search has no explicit construction"),
        }
    }

    fn sample(&self, index: usize) -> Result<SampleRecord> {
        let pair = &self.fam.pair;
        let mut rng = sample_rng(self.cfg.seed, index);
        let (z, x) = draw_sample(&mut rng, pair.gram(), pair.dim_a());
        let mut record = SampleRecord {
            index,
            z: z.clone(),
            x: x.as_slice().to_vec(),
            method: self.method,
            witnessed: false,
            max_residual: None,
            witness: None,
            failure: None,
            fallback_reason: None,
        };
        if self.method != Method::Generic {
            match self.explicit(&z, &x, &mut rng) {
                Ok(w) if w.residuals.max() <= self.cfg.tol.witness => {
                    record.witnessed = true;
                    record.max_residual = Some(w.residuals.max());
                    record.witness = Some(w);
                    return Ok(record);
                }
                Ok(w) => record.fallback_reason = Some(format!("constructed witness residual {:.3e}", w.residuals.max())),
                Err(e) => record.fallback_reason = Some(e.to_string()),
            }
        }
        let j = pair.j_of(&z)?;
        match generic_witness_search(pair, &self.nd.n_basis, &self.members, &j, &x, &self.cfg.search, &mut rng)? {
            SearchOutcome::Found(w) => {
                record.witnessed = w.residuals.max() <= self.cfg.tol.witness;
                record.max_residual = Some(w.residuals.max());
                record.witness = Some(w);
            }
            SearchOutcome::Failed(f) => record.failure = Some(f),
        }
        Ok(record)
    }
}

fn obstructions(fam: &Family, nd: &NormalizerData, cfg: &VerdictConfig) -> Result<Obstructions> {
    let mut out = Obstructions::default();
    let clifford = clifford_check(&fam.pair);
    if clifford.flagged_not_ws {
        out.violated.push(format!(
            "Clifford-type pair with eigenvalue type {:?}; admissible types {:?}",
            clifford.eigenvalue_type,
            clifford.admissible.clone().unwrap_or_default()
        ));
    }
    out.clifford = Some(clifford);
    let theta = fam.theta.unwrap_or(0.0);
    let dim7_like = matches!(fam.kind, FamilyKind::Dim7Theta | FamilyKind::Section5Case(3));
    if dim7_like && theta > 0.0 && theta < FRAC_PI_2 {
        let rep = dim7_obstruction(&fam.pair, theta, nd, &fam.representatives, &cfg.obstruction, cfg.seed)?;
        if rep.necessary_conditions_violated {
            out.violated.push(rep.conclusion.clone());
        }
        out.dim7 = Some(rep);
    } else if dim7_like {
        out.notes.push("θ on the boundary: the sign argument for J₆ does not apply".into());
    }
    match fam.kind {
        FamilyKind::Dim3Rep => {
            let rep = rep_block_invariance(&fam.pair, nd, fam.blocks);
            if rep.flagged_not_ws {
                out.violated.push(format!("𝔫(V) preserves ℍ^{} ⊕ W, so the pair projects to a weakly symmetric pair on W, which cannot exist", rep.blocks));
            }
            out.rep_blocks = Some(rep);
        }
        FamilyKind::Dim3Centralizer => match block_structure(&fam.pair, nd) {
            Ok(bs) => {
                if bs.flagged_not_ws {
                    out.violated.push("no block with det(A₁A_r⁻¹) = −1 and 𝔭(V) = 0: no N acts as −Id on V".into());
                }
                out.block_structure = Some(bs);
            }
            Err(e) => out.notes.push(format!("block structure unavailable: {e}")),
        },
        _ => {}
    }
    Ok(out)
}

/// Samples `cfg.samples` unit pairs (J, X), witnesses each one (family construction first,
/// generic search otherwise) and combines the outcome with the necessary conditions that
/// apply to the family.
pub fn ws_sample_verdict(fam: &Family, cfg: &VerdictConfig) -> Result<WsReport> {
    let nd = normalizer_algebra_with_tol(&fam.pair, cfg.tol.kernel);
    let members = filter_members(&fam.pair, &fam.representatives, cfg.tol.membership);
    let method = method_for(fam);
    let obstructions = obstructions(fam, &nd, cfg)?;
    let ctx = Context { fam, nd, members, method, cfg };
    let samples: Vec<SampleRecord> = (0..cfg.samples).into_par_iter().map(|i| ctx.sample(i)).collect::<Result<_>>()?;

    let mut warnings = fam.warnings.clone();
    if samples.is_empty() {
        warnings.push("no samples: all-witnessed holds vacuously".into());
    }
    let all_witnessed = samples.iter().all(|s| s.witnessed);
    let max_residual = samples.iter().filter_map(|s| s.max_residual).fold(0.0, f64::max);
    let mut counterexample_candidates: Vec<Candidate> = samples
        .iter()
        .filter(|s| !s.witnessed)
        .map(|s| Candidate {
            source: format!("sample {}", s.index),
            z: s.z.clone(),
            x: s.x.clone(),
            best_penalty: s.failure.as_ref().map_or(f64::NAN, |f| f.best),
        })
        .collect();
    if let Some(rep) = &obstructions.dim7 {
        let j6 = crate::linalg::project_onto_span(&octonion_complex_structures()[5], fam.pair.v_basis()).0;
        for (k, f) in rep.search_failures.iter().enumerate().filter(|(_, f)| !f.witnessed) {
            counterexample_candidates.push(Candidate { source: format!("J₆ search {k}"), z: j6.as_slice().to_vec(), x: f.x.clone(), best_penalty: f.best });
        }
    }
    let verdict = if !obstructions.violated.is_empty() {
        Verdict::NotWs
    } else if samples.is_empty() || !all_witnessed {
        Verdict::Inconclusive
    } else {
        Verdict::Ws
    };
    Ok(WsReport {
        version: env!("CARGO_PKG_VERSION").into(),
        family: fam.kind.name(),
        spec: fam.spec.clone(),
        config: *cfg,
        seed: cfg.seed,
        method,
        normalizer_dims: ctx.nd.dims,
        verdict,
        expected: fam.expected,
        exit_code: exit_code(verdict, fam.expected),
        all_witnessed,
        max_residual,
        samples,
        counterexample_candidates,
        obstructions,
        warnings,
    })
}
