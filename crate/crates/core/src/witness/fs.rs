//! Depth-first search for finite IP sets `FS(n_1, …, n_d)` inside a target
//! window, and the variants that add a base point or a measure condition.

use serde::{Deserialize, Serialize};

use super::budget::{EntryRegime, Exhaustion, Limit, Outcome, SearchBudget};
use crate::bits::Bitset;
use crate::error::{Error, Result};
use crate::intset::IntegerWindow;

/// Entries `n_1, …, n_d` with an optional base `a`, and the subset sums
/// they generate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FSWitness {
    pub n: Vec<i64>,
    #[serde(default)]
    pub base: Option<i64>,
    /// All `2^d − 1` subset sums; the sum for subset mask `m` (bit `i`
    /// selects `n_{i+1}`) is at position `m − 1`.
    pub verified_sums: Vec<i64>,
    pub regime: EntryRegime,
}

/// Subset sums in mask order, skipping the empty subset.
pub fn subset_sums(n: &[i64]) -> Result<Vec<i64>> {
    if n.len() >= 63 {
        return Err(Error::InvalidParameter("too many witness entries".into()));
    }
    let mut all = vec![0i64];
    for &v in n {
        let half = all.len();
        for i in 0..half {
            let s = all[i].checked_add(v).ok_or(Error::Overflow("summing witness entries"))?;
            all.push(s);
        }
    }
    all.remove(0);
    Ok(all)
}

impl FSWitness {
    pub fn new(n: Vec<i64>, base: Option<i64>, regime: EntryRegime) -> Result<Self> {
        let verified_sums = subset_sums(&n)?;
        Ok(FSWitness { n, base, verified_sums, regime })
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    /// Recomputes every subset sum from `n` and checks it (shifted by the
    /// base when present) against `member`; also checks the stored sums and
    /// the entry regime. Returns the first failing value.
    pub fn recheck(&self, member: impl Fn(i64) -> bool) -> std::result::Result<(), WitnessFault> {
        let sums = subset_sums(&self.n).map_err(|_| WitnessFault::Malformed("entries overflow".into()))?;
        if sums != self.verified_sums {
            let at = sums.iter().zip(&self.verified_sums).position(|(a, b)| a != b).unwrap_or(sums.len().min(self.verified_sums.len()));
            return Err(WitnessFault::StoredSum { index: at, stored: self.verified_sums.get(at).copied() });
        }
        for (i, &v) in self.n.iter().enumerate() {
            if !self.regime.admits(v) {
                return Err(WitnessFault::Malformed(format!("entry {v} not admitted by {}", self.regime.label())));
            }
            if i > 0 {
                let prev = self.n[i - 1];
                if v < prev || (v == prev && !self.regime.allow_repeats) {
                    return Err(WitnessFault::Malformed("entries not increasing".into()));
                }
            }
        }
        if let Some(a) = self.base {
            if !member(a) {
                return Err(WitnessFault::NotMember(a));
            }
        }
        for &s in &sums {
            let v = match self.base {
                Some(a) => a.checked_add(s).ok_or_else(|| WitnessFault::Malformed("base overflow".into()))?,
                None => s,
            };
            if !member(v) {
                return Err(WitnessFault::NotMember(v));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessFault {
    #[error("value {0} is not in the target set")]
    NotMember(i64),
    #[error("stored subset sum #{index} ({stored:?}) does not match the entries")]
    StoredSum { index: usize, stored: Option<i64> },
    #[error("malformed witness: {0}")]
    Malformed(String),
}

/// Extra condition carried down the search tree alongside the sum set.
pub(crate) trait Extension {
    type State: Clone;
    fn root(&self) -> Self::State;
    /// Updates the state for newly created subset sums; `None` prunes.
    fn extend(&self, state: &Self::State, new_sums: &[i64]) -> Option<Self::State>;
    /// Leaf acceptance, yielding the base point if there is one.
    fn accept(&self, state: &Self::State) -> Option<Option<i64>>;
}

pub(crate) struct NoExtension;

impl Extension for NoExtension {
    type State = ();
    fn root(&self) {}
    fn extend(&self, _: &(), _: &[i64]) -> Option<()> {
        Some(())
    }
    fn accept(&self, _: &()) -> Option<Option<i64>> {
        Some(None)
    }
}

struct Search<'a, E: Extension> {
    target: &'a IntegerWindow,
    bits: Bitset,
    d: usize,
    budget: SearchBudget,
    ext: &'a E,
    nodes: u64,
    limit: Option<Limit>,
}

impl<E: Extension> Search<'_, E> {
    fn value(&self, i: usize) -> i64 {
        self.target.lo() + i as i64
    }

    // returns Some(witness) or None; sets self.limit when cut short
    fn dfs(&mut self, prefix: &mut Vec<i64>, sums: &mut Vec<i64>, cand: &Bitset, state: &E::State) -> Option<(Vec<i64>, Option<i64>)> {
        let start = match prefix.last() {
            None => 0,
            Some(&last) => {
                let idx = (last - self.target.lo()) as usize;
                if self.budget.regime.allow_repeats { idx } else { idx + 1 }
            }
        };
        let mut tried = 0usize;
        let mut next = cand.next_set(start);
        while let Some(i) = next {
            next = cand.next_set(i + 1);
            let c = self.value(i);
            if c > self.budget.hi {
                break;
            }
            if let Some(max) = self.budget.max_candidates_per_level {
                if tried >= max {
                    self.limit.get_or_insert(Limit::CandidatesPerLevel);
                    break;
                }
            }
            if let Some(max) = self.budget.max_nodes {
                if self.nodes >= max {
                    self.limit = Some(Limit::Nodes);
                    return None;
                }
            }
            tried += 1;
            self.nodes += 1;

            let old = sums.len();
            let mut new_sums = Vec::with_capacity(old + 1);
            new_sums.push(c);
            new_sums.extend(sums.iter().map(|&s| s + c));
            let Some(next_state) = self.ext.extend(state, &new_sums) else { continue };
            prefix.push(c);
            if prefix.len() == self.d {
                if let Some(base) = self.ext.accept(&next_state) {
                    return Some((prefix.clone(), base));
                }
                prefix.pop();
                continue;
            }
            let mut child = cand.clone();
            for &s in &new_sums {
                child.and_shifted(&self.bits, s);
            }
            if child.next_set(if self.budget.regime.allow_repeats { i } else { i + 1 }).is_some() {
                sums.extend_from_slice(&new_sums);
                let found = self.dfs(prefix, sums, &child, &next_state);
                sums.truncate(old);
                if found.is_some() {
                    return found;
                }
                if self.limit == Some(Limit::Nodes) {
                    return None;
                }
            }
            prefix.pop();
        }
        None
    }
}

pub(crate) fn search<E: Extension>(target: &IntegerWindow, d: usize, budget: &SearchBudget, ext: &E) -> Result<Outcome<FSWitness>> {
    if d == 0 {
        return Err(Error::InvalidParameter("witness length must be >= 1".into()));
    }
    let bits = target.to_bitset();
    // candidates: members admitted by the regime and inside the budget window
    let mut cand = Bitset::new(bits.len());
    for m in target.iter() {
        if m >= budget.lo && m <= budget.hi && budget.regime.admits(m) {
            cand.set((m - target.lo()) as usize);
        }
    }
    let mut s = Search { target, bits, d, budget: *budget, ext, nodes: 0, limit: None };
    let root = ext.root();
    let found = s.dfs(&mut Vec::with_capacity(d), &mut Vec::new(), &cand, &root);
    Ok(match found {
        Some((n, base)) => Outcome::Found(FSWitness::new(n, base, budget.regime)?),
        None => Outcome::Exhausted(Exhaustion { nodes_expanded: s.nodes, limit: s.limit, lo: budget.lo, hi: budget.hi }),
    })
}

/// First (ascending lexicographic) `n_1 < … < n_d` inside the budget window
/// whose `2^d − 1` subset sums all lie in `target`.
pub fn find_fs_witness(target: &IntegerWindow, d: usize, budget: &SearchBudget) -> Result<Outcome<FSWitness>> {
    search(target, d, budget, &NoExtension)
}

/// Admissible base points `a ∈ F` with `a + FS(n) ⊆ F`, narrowed as sums appear.
struct BaseExtension<'a> {
    f: &'a IntegerWindow,
    bits: Bitset,
}

impl Extension for BaseExtension<'_> {
    type State = Bitset;
    fn root(&self) -> Bitset {
        self.bits.clone()
    }
    fn extend(&self, state: &Bitset, new_sums: &[i64]) -> Option<Bitset> {
        let mut next = state.clone();
        for &s in new_sums {
            next.and_shifted(&self.bits, s);
        }
        (!next.none()).then_some(next)
    }
    fn accept(&self, state: &Bitset) -> Option<Option<i64>> {
        state.next_set(0).map(|i| Some(self.f.lo() + i as i64))
    }
}

/// `FS(n) ⊆ p` and some `a ∈ f` with `a + FS(n) ⊆ f`; the smallest such `a`
/// is reported for the first `n` in ascending order.
pub fn intersective_witness(p: &IntegerWindow, f: &IntegerWindow, d: usize, budget: &SearchBudget) -> Result<Outcome<FSWitness>> {
    let ext = BaseExtension { f, bits: f.to_bitset() };
    search(p, d, budget, &ext)
}

/// Outcome of an SG_d containment check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "result")]
pub enum SgContainment {
    Contained,
    /// Smallest element of SG_d(P) in the window that is not in the target.
    Counterexample { sum: i64 },
    /// Every in-window element is in the target, but `outside` elements of
    /// SG_d(P) fall outside the window and were not checked.
    WindowTruncated { outside: usize },
}

/// Tests `SG_d(P) ⊆ target` on `[lo, hi]`.
pub fn check_sg_containment(
    p: &crate::intset::Sequence,
    d: usize,
    target: &crate::intset::SetDescriptor,
    lo: i64,
    hi: i64,
) -> Result<SgContainment> {
    let sg = crate::intset::generate_sg(p, d)?;
    let t = crate::intset::eval_window(target, lo, hi)?;
    let mut outside = 0;
    for s in sg.iter() {
        if !(lo..=hi).contains(&s) {
            outside += 1;
        } else if !t.contains(s) {
            return Ok(SgContainment::Counterexample { sum: s });
        }
    }
    Ok(if outside > 0 { SgContainment::WindowTruncated { outside } } else { SgContainment::Contained })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intset::{Sequence, SequenceSpec, SetDescriptor};

    fn budget(lo: i64, hi: i64) -> SearchBudget {
        SearchBudget::window(lo, hi)
    }

    #[test]
    fn subset_sum_order() {
        assert_eq!(subset_sums(&[5, 8]).unwrap(), vec![5, 8, 13]);
        assert_eq!(subset_sums(&[1, 2, 4]).unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn full_window_first_witness() {
        let t = IntegerWindow::full(1, 100).unwrap();
        let w = find_fs_witness(&t, 3, &budget(1, 100)).unwrap();
        // 1 + 2 = 3 is an admissible third entry: sums 1,2,3,3,4,5,6
        assert_eq!(w.found().unwrap().n, vec![1, 2, 3]);
    }

    #[test]
    fn two_point_target_is_exhausted() {
        let t = IntegerWindow::new(1, 2, vec![1, 2]).unwrap();
        match find_fs_witness(&t, 2, &budget(1, 2)).unwrap() {
            Outcome::Exhausted(e) => assert!(e.is_complete()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn node_limit_is_not_completeness() {
        let t = IntegerWindow::from_values(1, 1000, (1..=1000).filter(|v| v % 7 == 0)).unwrap();
        match find_fs_witness(&t, 5, &budget(1, 1000).with_max_nodes(3)).unwrap() {
            Outcome::Exhausted(e) => assert_eq!(e.limit, Some(Limit::Nodes)),
            other => panic!("{other:?}"),
        }
        assert_eq!(find_fs_witness(&t, 3, &budget(1, 1000)).unwrap().found().unwrap().n, vec![7, 14, 21]);
    }

    #[test]
    fn regimes() {
        let t = IntegerWindow::new(-5, 5, vec![-2, 0, 2, 4]).unwrap();
        assert!(find_fs_witness(&t, 2, &budget(-5, 5)).unwrap().is_exhausted());
        let rep = EntryRegime { allow_repeats: true, ..Default::default() };
        let w = find_fs_witness(&t, 2, &budget(-5, 5).with_regime(rep)).unwrap();
        assert_eq!(w.found().unwrap().n, vec![2, 2]);
        let neg = EntryRegime { allow_negative: true, allow_zero: true, ..Default::default() };
        let w = find_fs_witness(&t, 2, &budget(-5, 5).with_regime(neg)).unwrap();
        assert_eq!(w.found().unwrap().n, vec![-2, 0]);
        let w = w.found().unwrap();
        assert!(w.recheck(|v| t.contains(v)).is_ok());
    }

    #[test]
    fn intersective_examples() {
        let f = IntegerWindow::from_values(0, 200, (0..=200).filter(|v| v % 3 == 0)).unwrap();
        let p = IntegerWindow::from_values(1, 200, (1..=200).filter(|v| v % 6 == 0)).unwrap();
        let w = intersective_witness(&p, &f, 2, &budget(1, 200)).unwrap();
        let w = w.found().unwrap();
        assert_eq!((w.n.clone(), w.base), (vec![6, 12], Some(0)));
        let p2 = IntegerWindow::new(1, 2, vec![1, 2]).unwrap();
        assert!(intersective_witness(&p2, &f, 1, &budget(1, 2)).unwrap().is_exhausted());
        let full = IntegerWindow::full(10, 50).unwrap();
        let p3 = IntegerWindow::new(1, 20, vec![7, 9]).unwrap();
        let w = intersective_witness(&p3, &full, 1, &budget(1, 20)).unwrap();
        assert_eq!(w.found().unwrap().n, vec![7]);
        assert_eq!(w.found().unwrap().base, Some(10));
    }

    #[test]
    fn recheck_names_the_bad_sum() {
        let mut w = FSWitness::new(vec![5, 8], None, EntryRegime::default()).unwrap();
        assert!(w.recheck(|v| [5, 8, 13].contains(&v)).is_ok());
        assert_eq!(w.recheck(|v| [5, 8].contains(&v)), Err(WitnessFault::NotMember(13)));
        w.verified_sums[2] = 14;
        assert!(matches!(w.recheck(|_| true), Err(WitnessFault::StoredSum { index: 2, .. })));
    }

    #[test]
    fn sg_containment_examples() {
        let p = Sequence::new(vec![1, 2]);
        let evens = SetDescriptor::Ap { modulus: 2, residue: 0 };
        assert_eq!(check_sg_containment(&p, 1, &evens, 0, 100).unwrap(), SgContainment::Counterexample { sum: 1 });
        let all = SetDescriptor::Ap { modulus: 1, residue: 0 };
        let p = SequenceSpec::Explicit(vec![3, 5, 7]).generate().unwrap();
        assert_eq!(check_sg_containment(&p, 2, &all, 0, 100).unwrap(), SgContainment::Contained);
        assert_eq!(check_sg_containment(&p, 2, &all, 0, 10).unwrap(), SgContainment::WindowTruncated { outside: 2 });
    }
}
