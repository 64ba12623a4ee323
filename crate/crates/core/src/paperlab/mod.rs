//! Named modules of the `Λ_m(r)` family and checks of their homological properties.

mod appendix;
mod claims;
mod family;
mod samples;

use std::fmt;

use serde::Serialize;

use crate::linalg::Field;

pub use appendix::{expected_layers, radical_layers, Layers};
pub use claims::{verify, verify_all, CLAIMS};
pub use family::{build_phi, build_u, build_z, build_zt, Family, FamilyModule, Part};
pub use samples::{finite_pd_samples, lemma2_sample, Sample};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyConfig {
    pub r: usize,
    pub m_max: usize,
    pub t_max: usize,
    #[serde(serialize_with = "field_label")]
    pub field: Field,
    pub seed: u64,
    pub cutoff: usize,
    /// Number of random modules for the sampled claims.
    pub samples: usize,
    /// Size budget for random modules.
    pub max_dim: usize,
}

fn field_label<S: serde::Serializer>(f: &Field, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.label())
}

impl Default for FamilyConfig {
    fn default() -> Self {
        FamilyConfig { r: 1, m_max: 3, t_max: 3, field: Field::Rational, seed: 0, cutoff: 12, samples: 20, max_dim: 40 }
    }
}

impl FamilyConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.r == 0 {
            return Err("r must be at least 1".into());
        }
        if self.t_max == 0 {
            return Err("t-max must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

/// One sub-check; `ok = None` when the computation ran out of budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub status: Status,
    pub config: FamilyConfig,
    pub evidence: Vec<Check>,
}

impl ClaimReport {
    fn from_checks(claim: &str, config: &FamilyConfig, evidence: Vec<Check>) -> ClaimReport {
        let status = if evidence.iter().any(|c| c.ok == Some(false)) {
            Status::Fail
        } else if evidence.iter().any(|c| c.ok.is_none()) {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        ClaimReport { claim: claim.to_string(), status, config: config.clone(), evidence }
    }

    /// Human-readable summary: one line for the claim, then failing or inconclusive checks.
    pub fn summary(&self) -> String {
        let passed = self.evidence.iter().filter(|c| c.ok == Some(true)).count();
        let mut out = format!("{} {}: {}/{} checks", self.status, self.claim, passed, self.evidence.len());
        for c in self.evidence.iter().filter(|c| c.ok != Some(true)) {
            let tag = if c.ok.is_none() { "inconclusive" } else { "failed" };
            out.push_str(&format!("\n  {tag}: {} ({})", c.name, c.detail));
        }
        out
    }
}
