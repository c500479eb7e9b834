//! The five central reductions of the maximal commutative pair on ℝ⁸, with computed
//! weak symmetry, non-singularity and Clifford type next to the expected values.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::verdict::{ws_sample_verdict, Verdict, VerdictConfig};
use crate::error::Result;
use crate::exact::{self, rat, Rational};
use crate::families::section5::{section5_entry, ExpectedRow, WsExpectation};
use crate::families::{is_clifford_type, Expectation, Grid};
use crate::pair::{nonsingularity_check, MetricPair, NonSingularityMode, NonSingularityStatus, NonSingularityVerdict, SampledConfig};

/// Looks for a singular J_Z among Z with two nonzero entries ±1, in exact arithmetic.
pub fn exact_singular_probe(pair: &MetricPair) -> Option<(Vec<Rational>, Rational)> {
    pair.exact()?;
    let n = pair.dim_v();
    for a in 0..n {
        for b in a + 1..n {
            for sign in [1, -1] {
                let mut z = vec![rat(0); n];
                z[a] = rat(1);
                z[b] = rat(sign);
                let j = pair.j_of_exact(&z).ok()?;
                let d = exact::det(&j);
                if d.is_zero() {
                    return Some((z, d));
                }
            }
        }
    }
    None
}

/// Exact block certificate when the pair is in quaternionic block form, otherwise the
/// exact probe followed by the sampled search.
pub fn nonsingularity(pair: &MetricPair, cfg: &SampledConfig) -> Result<NonSingularityVerdict> {
    if let Ok(v) = nonsingularity_check(pair, NonSingularityMode::ExactBlock, cfg) {
        return Ok(v);
    }
    if let Some((z, _)) = exact_singular_probe(pair) {
        return Ok(NonSingularityVerdict {
            status: NonSingularityStatus::SingularWithWitness,
            witness: Some(z.iter().map(exact::to_f64).collect()),
            exact_witness: Some(z.iter().map(exact::format_rational).collect()),
            min_det_on_sphere: 0.0,
        });
    }
    nonsingularity_check(pair, NonSingularityMode::Sampled, cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputedRow {
    pub verdict: Verdict,
    pub is_nonsingular: bool,
    pub clifford: bool,
    pub eigenvalue_type: Vec<usize>,
    pub normalizer_dims: (usize, usize, usize),
    pub nonsingularity: NonSingularityVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub case: u8,
    pub description: String,
    pub expected: ExpectedRow,
    /// Expected verdict after resolving the dependence on the inner product.
    pub expected_verdict: Verdict,
    pub computed: ComputedRow,
    pub matches: bool,
}

/// Builds and checks the five rows; `entry4_tail` replaces the inner product on V′ in row 4.
pub fn run_catalog(theta: f64, entry4_tail: Option<Grid>, cfg: &VerdictConfig) -> Result<Vec<CatalogRow>> {
    let mut rows = Vec::new();
    for case in 1..=5u8 {
        let tail = if case == 4 { entry4_tail.clone() } else { None };
        let (fam, entry) = section5_entry(case, theta, tail)?;
        let report = ws_sample_verdict(&fam, cfg)?;
        let sampled = SampledConfig { seed: cfg.seed, samples: 2000, ..SampledConfig::default() };
        let ns = nonsingularity(&fam.pair, &sampled)?;
        let computed = ComputedRow {
            verdict: report.verdict,
            is_nonsingular: ns.status != NonSingularityStatus::SingularWithWitness,
            clifford: is_clifford_type(&fam.pair, 1e-9),
            eigenvalue_type: fam.pair.eigenvalue_type().multiplicities,
            normalizer_dims: report.normalizer_dims,
            nonsingularity: ns,
        };
        let expected_verdict = match (entry.expected.is_ws, fam.expected) {
            (WsExpectation::Yes, _) | (WsExpectation::IfStandard, Expectation::Ws) => Verdict::Ws,
            _ => Verdict::NotWs,
        };
        let matches =
            computed.verdict == expected_verdict && computed.is_nonsingular == entry.expected.is_nonsingular && computed.clifford == entry.expected.clifford;
        rows.push(CatalogRow { case, description: entry.description, expected: entry.expected, expected_verdict, computed, matches });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::section5::case5_singular_witness;
    use crate::tol::Tolerances;

    #[test]
    fn probe_finds_the_case5_witness() {
        let (fam, _) = section5_entry(5, 0.7, None).unwrap();
        let (z, d) = exact_singular_probe(&fam.pair).unwrap();
        assert!(d.is_zero());
        let (w, _) = case5_singular_witness().unwrap();
        assert_eq!(pair_det(&fam.pair, &w), rat(0));
        assert_eq!(z.iter().filter(|c| !c.is_zero()).count(), 2);
    }

    fn pair_det(pair: &MetricPair, z: &[Rational]) -> Rational {
        exact::det(&pair.j_of_exact(z).unwrap())
    }

    #[test]
    fn catalog_rows_match() {
        let rows = run_catalog(std::f64::consts::FRAC_PI_4, None, &VerdictConfig::new(4, 2, Tolerances::default())).unwrap();
        assert_eq!(rows.len(), 5);
        for r in &rows {
            assert!(r.matches, "row {} computed {:?}", r.case, r.computed);
        }
    }
}
