//! Machine-readable results of a scenario run.

use serde::{Deserialize, Serialize};

use crate::scenario::{Mode, WorldSpec};

pub const REPORT_SCHEMA: &str = "evfusion-report/1";

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct Report {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub frame: Vec<String>,
    pub shafer: bool,
    /// Constraints beyond pairwise exclusivity, in canonical text.
    pub constraints: Vec<String>,
    pub world: WorldSpec,
    pub mode: Mode,
    pub sources: Vec<String>,
    /// Mass-sum threshold used for input validation and output audits.
    pub tolerance: f64,
    pub results: Vec<RuleReport>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct RuleReport {
    pub rule: String,
    /// `state` (quasi-associative fold) or `pairwise` (iterated two-source
    /// combination) in sequential mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub masses: Vec<MassEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transfers: Vec<MassEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<Audit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breakdown: Option<Breakdown>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

impl RuleReport {
    /// Column label: the rule id, plus the variant when there is one.
    pub fn label(&self) -> String {
        match &self.variant {
            Some(v) => format!("{}[{v}]", self.rule),
            None => self.rule.clone(),
        }
    }

    pub fn mass(&self, element: &str) -> Option<f64> {
        self.masses.iter().find(|e| e.element == element).map(|e| e.mass)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct MassEntry {
    pub element: String,
    pub mass: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct Audit {
    pub mass_sum: f64,
    pub deficit: f64,
    pub empty_mass: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct Breakdown {
    pub s1: Vec<MassEntry>,
    pub s2: Vec<MassEntry>,
    pub s3: Vec<MassEntry>,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}
