use serde::{Deserialize, Serialize};

/// Which witness entries are admissible. The default is the informative
/// regime: strictly increasing, positive, distinct.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EntryRegime {
    #[serde(default)]
    pub allow_zero: bool,
    #[serde(default)]
    pub allow_negative: bool,
    #[serde(default)]
    pub allow_repeats: bool,
}

impl EntryRegime {
    pub fn admits(&self, n: i64) -> bool {
        match n {
            0 => self.allow_zero,
            n if n < 0 => self.allow_negative,
            _ => true,
        }
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.allow_zero {
            parts.push("zero");
        }
        if self.allow_negative {
            parts.push("negative");
        }
        if self.allow_repeats {
            parts.push("repeats");
        }
        if parts.is_empty() {
            "positive-distinct".into()
        } else {
            format!("permissive({})", parts.join(","))
        }
    }
}

/// Limits of a witness search. Candidates are always tried in ascending
/// order; the window bounds the candidate entries `n_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub lo: i64,
    pub hi: i64,
    #[serde(default)]
    pub max_candidates_per_level: Option<usize>,
    #[serde(default)]
    pub max_nodes: Option<u64>,
    #[serde(default)]
    pub regime: EntryRegime,
}

impl SearchBudget {
    pub fn window(lo: i64, hi: i64) -> Self {
        SearchBudget { lo, hi, max_candidates_per_level: None, max_nodes: None, regime: EntryRegime::default() }
    }

    pub fn with_max_nodes(mut self, max: u64) -> Self {
        self.max_nodes = Some(max);
        self
    }

    pub fn with_regime(mut self, regime: EntryRegime) -> Self {
        self.regime = regime;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Limit {
    Nodes,
    CandidatesPerLevel,
}

/// A search that ended without a witness. With `limit == None` the search
/// space inside the window was covered completely; otherwise the named
/// limit cut it short. Neither case says anything outside the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    pub nodes_expanded: u64,
    pub limit: Option<Limit>,
    pub lo: i64,
    pub hi: i64,
}

impl Exhaustion {
    pub fn is_complete(&self) -> bool {
        self.limit.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<W> {
    Found(W),
    Exhausted(Exhaustion),
}

impl<W> Outcome<W> {
    pub fn found(&self) -> Option<&W> {
        match self {
            Outcome::Found(w) => Some(w),
            Outcome::Exhausted(_) => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, Outcome::Exhausted(_))
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Outcome<V> {
        match self {
            Outcome::Found(w) => Outcome::Found(f(w)),
            Outcome::Exhausted(e) => Outcome::Exhausted(e),
        }
    }
}
