//! Scenario files: a frame, a constraint model, named sources and the rules
//! to run on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub const SCENARIO_SCHEMA: &str = "evfusion-scenario/1";

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: String,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub description: Option<String>,
    pub frame: Vec<String>,
    /// Adds pairwise exclusivity of all hypotheses to `constraints`.
    #[serde(default)]
    pub shafer: bool,
    /// Expressions declared empty.
    #[serde(default)]
    pub constraints: Vec<String>,
    #[serde(default)]
    pub world: WorldSpec,
    pub sources: Vec<SourceSpec>,
    /// Named weight vectors for `wo:<name>` rules.
    #[serde(default)]
    pub weights: BTreeMap<String, BTreeMap<String, Decimal>>,
    pub rules: Vec<String>,
    #[serde(default)]
    pub mode: Mode,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SourceSpec {
    pub name: String,
    pub masses: BTreeMap<String, Decimal>,
}

/// A mass written as a decimal string (preferred) or a JSON number.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum Decimal {
    Text(String),
    Number(serde_json::Number),
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decimal::Text(s) => f.write_str(s),
            Decimal::Number(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum WorldSpec {
    #[default]
    Closed,
    Open,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Batch,
    Sequential,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Batch => "batch",
            Mode::Sequential => "sequential",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleId {
    Conjunctive,
    Disjunctive,
    Dempster,
    Smets,
    Yager,
    DuboisPrade,
    Murphy,
    Wao,
    WaoExtended,
    Pcr1,
    DsmHybrid,
    Wo(String),
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "conjunctive" => RuleId::Conjunctive,
            "disjunctive" => RuleId::Disjunctive,
            "dempster" => RuleId::Dempster,
            "smets" => RuleId::Smets,
            "yager" => RuleId::Yager,
            "dubois_prade" => RuleId::DuboisPrade,
            "murphy" => RuleId::Murphy,
            "wao" => RuleId::Wao,
            "wao_ext" => RuleId::WaoExtended,
            "pcr1" => RuleId::Pcr1,
            "dsm_hybrid" => RuleId::DsmHybrid,
            other => match other.strip_prefix("wo:") {
                Some(name) if !name.is_empty() => RuleId::Wo(name.to_string()),
                _ => return Err(format!("unknown rule `{other}`")),
            },
        })
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RuleId::Conjunctive => "conjunctive",
            RuleId::Disjunctive => "disjunctive",
            RuleId::Dempster => "dempster",
            RuleId::Smets => "smets",
            RuleId::Yager => "yager",
            RuleId::DuboisPrade => "dubois_prade",
            RuleId::Murphy => "murphy",
            RuleId::Wao => "wao",
            RuleId::WaoExtended => "wao_ext",
            RuleId::Pcr1 => "pcr1",
            RuleId::DsmHybrid => "dsm_hybrid",
            RuleId::Wo(name) => return write!(f, "wo:{name}"),
        };
        f.write_str(name)
    }
}
