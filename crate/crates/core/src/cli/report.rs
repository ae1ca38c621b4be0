use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::config::{ExperimentConfig, PointConfig};
use crate::ramsey::TripleOutcome;
use crate::witness::{FSWitness, Limit, Outcome, SgContainment};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SearchResult {
    Found { witness: FSWitness },
    /// `complete` is true when the whole window was searched.
    Exhausted { nodes_expanded: u64, limit: Option<Limit>, lo: i64, hi: i64, complete: bool },
}

impl SearchResult {
    pub fn witness(&self) -> Option<&FSWitness> {
        match self {
            SearchResult::Found { witness } => Some(witness),
            SearchResult::Exhausted { .. } => None,
        }
    }
}

impl From<Outcome<FSWitness>> for SearchResult {
    fn from(o: Outcome<FSWitness>) -> Self {
        match o {
            Outcome::Found(witness) => SearchResult::Found { witness },
            Outcome::Exhausted(e) => SearchResult::Exhausted {
                nodes_expanded: e.nodes_expanded,
                limit: e.limit,
                lo: e.lo,
                hi: e.hi,
                complete: e.is_complete(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AaHit {
    pub y: PointConfig,
    pub witness: FSWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTriples {
    pub class: String,
    pub size: usize,
    pub outcome: TripleOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub a: String,
    pub pair: (usize, usize),
    pub shift_difference: i64,
    pub next_measure: String,
}

/// Result payload of one experiment. Rationals are `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportOutcome {
    GenSet { lo: i64, hi: i64, count: usize, members: Vec<i64>, syndetic_gap: Option<i64>, banach_density: Option<String> },
    ReturnSet { lo: i64, hi: i64, count: usize, members: Vec<i64>, boundary: Vec<i64> },
    FsWitness { search: SearchResult },
    RpWitness { search: SearchResult },
    SgContainment { result: SgContainment },
    Intersective { search: SearchResult },
    PoincareD { search: SearchResult, measure: Option<String> },
    BirkhoffD { search: SearchResult, measure: Option<String> },
    Pigeonhole { indices: Option<Vec<usize>>, measure: Option<String>, a: String, bound: String, nodes: Option<u64> },
    PigeonholeIterative { rounds: Vec<Round>, stalled_at: Option<usize> },
    Cube { n: Vec<i64>, entries: Vec<PointConfig> },
    AaScan { grid: Vec<PointConfig>, witnesses: Vec<AaHit>, skipped_self: usize, exhausted: usize },
    #[serde(rename = "ramsey-sg2")]
    RamseySg2 { classes: Vec<ClassTriples>, control: Option<TripleOutcome> },
    /// The orbit could not be resolved at index `n` with the available
    /// precision; nothing else is claimed.
    PrecisionExhausted { n: i64 },
    AmbiguousSymbol { n: i64 },
}

impl ReportOutcome {
    /// Whether the experiment found what it searched for; `None` for
    /// experiments that do not search.
    pub fn has_witness(&self) -> Option<bool> {
        match self {
            ReportOutcome::GenSet { .. } | ReportOutcome::ReturnSet { .. } | ReportOutcome::Cube { .. } | ReportOutcome::SgContainment { .. } => None,
            ReportOutcome::FsWitness { search }
            | ReportOutcome::RpWitness { search }
            | ReportOutcome::Intersective { search }
            | ReportOutcome::PoincareD { search, .. }
            | ReportOutcome::BirkhoffD { search, .. } => Some(search.witness().is_some()),
            ReportOutcome::Pigeonhole { indices, .. } => Some(indices.is_some()),
            ReportOutcome::PigeonholeIterative { stalled_at, .. } => Some(stalled_at.is_none()),
            ReportOutcome::AaScan { witnesses, .. } => Some(!witnesses.is_empty()),
            ReportOutcome::RamseySg2 { classes, .. } => Some(classes.iter().any(|c| c.outcome.found().is_some())),
            ReportOutcome::PrecisionExhausted { .. } | ReportOutcome::AmbiguousSymbol { .. } => Some(false),
        }
    }

    pub fn precision_failure(&self) -> bool {
        matches!(self, ReportOutcome::PrecisionExhausted { .. } | ReportOutcome::AmbiguousSymbol { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub config: ExperimentConfig,
    pub outcome: ReportOutcome,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub experiments: Vec<Record>,
    /// sha256 of the sorted-key JSON of everything except wall times and
    /// this field.
    pub canonical_sha256: String,
}

fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sort_keys(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

/// The canonical text that is hashed.
pub fn canonical_json(report: &Report) -> String {
    let mut v = serde_json::to_value(report).expect("reports serialize");
    let obj = v.as_object_mut().expect("report is an object");
    obj.remove("canonical_sha256");
    if let Some(Value::Array(records)) = obj.get_mut("experiments") {
        for r in records {
            if let Some(o) = r.as_object_mut() {
                o.remove("wall_time_ms");
            }
        }
    }
    serde_json::to_string(&sort_keys(v)).expect("values serialize")
}

pub fn canonical_hash(report: &Report) -> String {
    hex::encode(Sha256::digest(canonical_json(report).as_bytes()))
}

impl Report {
    pub fn new(experiments: Vec<Record>) -> Self {
        let mut r = Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            experiments,
            canonical_sha256: String::new(),
        };
        r.canonical_sha256 = canonical_hash(&r);
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
