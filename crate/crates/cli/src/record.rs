//! Machine-readable output records. Every big number is a decimal string.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use cyclicount_core::{CountReport, LocalSumReport, PrimaryDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSumRecord {
    pub prime: String,
    pub exponents: Vec<u32>,
    pub sum: String,
}

impl From<&LocalSumReport> for LocalSumRecord {
    fn from(s: &LocalSumReport) -> Self {
        LocalSumRecord { prime: s.prime.to_string(), exponents: s.exponents.clone(), sum: s.sum.to_string() }
    }
}

/// Outcome of one method under `--verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
    /// Why the method was not run (budget or cap).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub input: String,
    /// prime -> ascending exponents, primes ascending
    pub normalized: IndexMap<String, Vec<u32>>,
    pub count: String,
    pub exponent: String,
    pub phi_exponent: String,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_sums: Option<Vec<LocalSumRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<Vec<MethodResult>>,
    pub elapsed_ms: u64,
}

impl CountRecord {
    pub fn new(input: &str, group: &PrimaryDecomposition, report: &CountReport, show_local_sums: bool) -> Self {
        CountRecord {
            input: input.to_string(),
            normalized: normalized_map(group),
            count: report.count.to_string(),
            exponent: report.exponent.to_string(),
            phi_exponent: report.phi_exponent.to_string(),
            method: report.method.to_string(),
            local_sums: show_local_sums.then(|| report.local_sums.iter().map(Into::into).collect()),
            verified: None,
            elapsed_ms: 0,
        }
    }
}

pub fn normalized_map(group: &PrimaryDecomposition) -> IndexMap<String, Vec<u32>> {
    group.components().iter().map(|(p, e)| (p.to_string(), e.clone())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MenonRecord {
    pub input: String,
    pub n: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MenonRangeRecord {
    pub input: String,
    pub start: u64,
    pub end: u64,
    pub checks: u64,
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    pub elapsed_ms: u64,
}
