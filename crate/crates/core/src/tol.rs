use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical thresholds shared by the checks; every report embeds the set it ran with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Projection / orthogonality residual for normalizer membership.
    pub membership: f64,
    /// Max residual for an accepted witness.
    pub witness: f64,
    /// Penalty at or below which a search counts as successful.
    pub success_penalty: f64,
    /// Best penalties above this are reported as a stalled search.
    pub report_floor: f64,
    /// Singular values treated as zero in kernels.
    pub kernel: f64,
    /// Relative eigenvalue clustering.
    pub cluster: f64,
    /// |det| below which a sampled element is declared singular.
    pub singular: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { membership: 1e-9, witness: 1e-8, success_penalty: 1e-16, report_floor: 1e-4, kernel: 1e-9, cluster: 1e-8, singular: 1e-9 }
    }
}

impl Tolerances {
    pub const MIN_OVERRIDE: f64 = 100.0 * f64::EPSILON;

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() || value < Self::MIN_OVERRIDE {
            return Err(Error::Parse(format!("tolerance {name}={value} is below {:.3e}", Self::MIN_OVERRIDE)));
        }
        let slot = match name {
            "membership" => &mut self.membership,
            "witness" => &mut self.witness,
            "success_penalty" => &mut self.success_penalty,
            "report_floor" => &mut self.report_floor,
            "kernel" => &mut self.kernel,
            "cluster" => &mut self.cluster,
            "singular" => &mut self.singular,
            _ => return Err(Error::Parse(format!("unknown tolerance {name}"))),
        };
        *slot = value;
        Ok(())
    }

    /// Parses `NAME=VALUE`.
    pub fn apply_override(&mut self, spec: &str) -> Result<()> {
        let (name, val) = spec.split_once('=').ok_or_else(|| Error::Parse(format!("expected NAME=VALUE, got {spec}")))?;
        let v: f64 = val.trim().parse().map_err(|_| Error::Parse(format!("bad tolerance value {val}")))?;
        self.set(name.trim(), v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_are_bounded() {
        let mut t = Tolerances::default();
        t.apply_override("witness=1e-7").unwrap();
        assert_eq!(t.witness, 1e-7);
        assert!(t.apply_override("witness=1e-20").is_err());
        assert!(t.apply_override("nope=1").is_err());
        assert!(t.apply_override("witness").is_err());
    }
}
