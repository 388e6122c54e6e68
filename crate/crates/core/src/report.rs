//! Audit report types: per-formula verdicts with witness values.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::oracle::PartitionSpec;

/// Outcome of auditing one printed formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// The formula, evaluated literally, agrees with the independent reference.
    #[serde(rename = "PASS")]
    Pass,
    /// The literal evaluation disagrees with the reference.
    #[serde(rename = "FAIL")]
    Fail,
    /// The implemented (corrected) form agrees where the literal one does not.
    #[serde(rename = "CORRECTED")]
    Corrected,
    /// A linear system in the check was singular; no comparison possible.
    #[serde(rename = "SINGULAR")]
    Singular,
    /// Informational entry (conventions, scope notes); nothing to compare.
    #[serde(rename = "NOTE")]
    Note,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Corrected => "CORRECTED",
            Verdict::Singular => "SINGULAR",
            Verdict::Note => "NOTE",
        };
        f.write_str(s)
    }
}

/// One audited formula: its registry id, the verdict, and witness values
/// rendered as strings (exact rationals as "p/q", reals in scientific
/// notation). The BTreeMap keeps key order deterministic.
#[derive(Debug, Clone, Serialize)]
pub struct AuditEntry {
    pub formula_id: String,
    pub verdict: Verdict,
    pub witness: BTreeMap<String, String>,
}

impl AuditEntry {
    pub fn new(formula_id: &str, verdict: Verdict) -> Self {
        AuditEntry {
            formula_id: formula_id.to_string(),
            verdict,
            witness: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.witness.insert(key.to_string(), value.to_string());
        self
    }
}

/// Echo of the spec a report was computed for.
#[derive(Debug, Clone, Serialize)]
pub struct SpecEcho {
    pub a: Vec<u64>,
    pub k: u32,
    pub r: usize,
    pub d: u64,
}

impl SpecEcho {
    pub fn from_spec(spec: &PartitionSpec) -> Self {
        SpecEcho {
            a: spec.parts().to_vec(),
            k: spec.multiplicity(),
            r: spec.num_parts(),
            d: spec.period(),
        }
    }
}

/// A full audit run: tool version, spec echo, and one entry per formula
/// in the fixed registry.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub version: String,
    pub spec: SpecEcho,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn entry(&self, formula_id: &str) -> Option<&AuditEntry> {
        self.entries.iter().find(|e| e.formula_id == formula_id)
    }
}
