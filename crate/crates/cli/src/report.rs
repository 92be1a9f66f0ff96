//! Machine-readable documents. Keys are emitted in sorted order so output is
//! byte-stable for a given input.

use std::collections::BTreeMap;

use bianchi_core::{bianchi::ClassificationReport, SubgroupKind};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1.0";

/// What each field of a classification is computed from.
const BASIS: [&str; 4] = [
    "existence: congruence conditions on the primes dividing d",
    "host algebra: residue of d modulo 3 and 8",
    "gamma: closed form in the prime divisors of the discriminant",
    "gamma cross-check: optimal embedding numbers divided by the automorphism index",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindEntry {
    pub kind: String,
    pub exists: bool,
    pub host_split: Option<bool>,
    pub gamma: Option<u64>,
    pub failing_primes: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub paper_theorems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub d: i64,
    pub kinds: Vec<KindEntry>,
    pub provenance: Provenance,
}

impl From<&ClassificationReport> for ReportDocument {
    fn from(r: &ClassificationReport) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            d: r.d,
            kinds: r
                .kinds
                .iter()
                .map(|k| KindEntry {
                    kind: k.kind.name().to_owned(),
                    exists: k.exists_in_psl2o,
                    host_split: k.host_algebra_split,
                    gamma: k.gamma,
                    failing_primes: k.failing_primes.clone(),
                })
                .collect(),
            provenance: Provenance { paper_theorems: BASIS.iter().map(|s| (*s).to_owned()).collect() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub d: i64,
    pub exists: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanDocument {
    pub schema_version: String,
    pub dmax: i64,
    pub rows: Vec<ScanRow>,
    /// Number of fields in the range containing each kind.
    pub summary: BTreeMap<String, usize>,
}

impl ScanDocument {
    pub fn new(dmax: i64, kinds: &[SubgroupKind], rows: Vec<ScanRow>) -> Self {
        let summary = kinds
            .iter()
            .map(|k| {
                let name = k.name().to_owned();
                let n = rows.iter().filter(|r| r.exists[&name]).count();
                (name, n)
            })
            .collect();
        Self { schema_version: SCHEMA_VERSION.to_owned(), dmax, rows, summary }
    }
}

/// Pretty JSON with sorted keys.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents contain only plain data");
    serde_json::to_string_pretty(&value).expect("a JSON value always serializes")
}
