//! Order-d recurrence witnesses and pigeonhole selection on finite
//! uniform measure systems.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::budget::{Outcome, SearchBudget};
use super::fs::{search, Extension, FSWitness};
use crate::bits::Bitset;
use crate::error::{Error, Result};
use crate::intset::IntegerWindow;
use crate::systems::{FiniteMeasureSystem, Neighborhood, SystemPoint, SystemSpec};

/// Points of `A ∩ ⋂_{m ∈ FS} T^{−m} A`, narrowed as sums appear.
struct ReturnExtension<'a> {
    fms: &'a FiniteMeasureSystem,
    a: &'a Bitset,
}

impl Extension for ReturnExtension<'_> {
    type State = Bitset;
    fn root(&self) -> Bitset {
        self.a.clone()
    }
    fn extend(&self, state: &Bitset, new_sums: &[i64]) -> Option<Bitset> {
        let mut next = state.clone();
        for &m in new_sums {
            next.and_assign(&self.fms.preimage(self.a, m));
        }
        (!next.none()).then_some(next)
    }
    fn accept(&self, _: &Bitset) -> Option<Option<i64>> {
        Some(None)
    }
}

/// A witness on a finite system with the exact size of the common return set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteWitness {
    pub witness: FSWitness,
    /// `μ(A ∩ ⋂_{m ∈ FS(n)} T^{−m} A)`.
    pub measure: BigRational,
    /// Number of points in that intersection.
    pub points: usize,
}

fn finite_search(p: &IntegerWindow, fms: &FiniteMeasureSystem, set: &str, d: usize, budget: &SearchBudget) -> Result<Outcome<FiniteWitness>> {
    let a = fms.set(set)?;
    let ext = ReturnExtension { fms, a };
    let out = search(p, d, budget, &ext)?;
    Ok(match out {
        Outcome::Found(w) => {
            let measure = fms.measure_intersection(set, &w.verified_sums)?;
            let points = (&measure * BigRational::from_integer(fms.modulus().into())).to_integer();
            let points = points.to_string().parse().unwrap_or(0);
            Outcome::Found(FiniteWitness { witness: w, measure, points })
        }
        Outcome::Exhausted(e) => Outcome::Exhausted(e),
    })
}

/// `FS(n) ⊆ p` with `μ(A ∩ ⋂_{m ∈ FS(n)} T^{−m} A) > 0`.
pub fn poincare_order_witness(
    p: &IntegerWindow,
    fms: &FiniteMeasureSystem,
    set: &str,
    d: usize,
    budget: &SearchBudget,
) -> Result<Outcome<FiniteWitness>> {
    if fms.set(set)?.none() {
        return Err(Error::InvalidParameter(format!("set {set:?} has measure zero")));
    }
    finite_search(p, fms, set, d, budget)
}

/// `FS(n) ⊆ p` with `U ∩ ⋂_{m ∈ FS(n)} T^{−m} U ≠ ∅`.
pub fn birkhoff_order_witness(
    p: &IntegerWindow,
    fms: &FiniteMeasureSystem,
    open_set: &str,
    d: usize,
    budget: &SearchBudget,
) -> Result<Outcome<FiniteWitness>> {
    if fms.set(open_set)?.none() {
        return Err(Error::InvalidParameter(format!("open set {open_set:?} is empty")));
    }
    finite_search(p, fms, open_set, d, budget)
}

/// Birkhoff witness for a cyclic rotation given as a system and a subset
/// neighborhood.
pub fn birkhoff_order_witness_cyclic(
    p: &IntegerWindow,
    sys: &SystemSpec,
    u: &Neighborhood,
    d: usize,
    budget: &SearchBudget,
) -> Result<Outcome<FiniteWitness>> {
    let (SystemSpec::CyclicRotation { n, k }, Neighborhood::Subset(residues)) = (sys, u) else {
        return Err(Error::IncompatibleNeighborhood("need a cyclic rotation and a subset".into()));
    };
    sys.check_point(&SystemPoint::Residue(0))?;
    let fms = FiniteMeasureSystem::new(*n, *k)?.with_set("U", residues.iter().copied());
    birkhoff_order_witness(p, &fms, "U", d, budget)
}

/// Indices `t_1 < … < t_k` into the supplied sets with the exact measure of
/// their intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Selection {
    pub indices: Vec<usize>,
    #[serde(serialize_with = "crate::witness::ser_rational")]
    pub measure: BigRational,
    /// `a = min_i μ(E_i)`.
    #[serde(serialize_with = "crate::witness::ser_rational")]
    pub a: BigRational,
    /// `a^k − eps`.
    #[serde(serialize_with = "crate::witness::ser_rational")]
    pub bound: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelectionOutcome {
    Found(Selection),
    /// No `k`-subset reaches the bound; `nodes` partial intersections examined.
    Exhausted { nodes: u64, a: BigRational, bound: BigRational },
}

/// First `k`-subset in lexicographic order with `μ(⋂ E_{t_j}) ≥ a^k − eps`,
/// where `a` is the smallest measure among the sets. Partial intersections
/// below the bound are pruned.
pub fn pigeonhole_select(fms: &FiniteMeasureSystem, sets: &[&str], k: usize, eps: &BigRational) -> Result<SelectionOutcome> {
    let bits: Vec<&Bitset> = sets.iter().map(|s| fms.set(s)).collect::<Result<_>>()?;
    select_bitsets(fms, &bits, k, eps)
}

pub(crate) fn select_bitsets(fms: &FiniteMeasureSystem, sets: &[&Bitset], k: usize, eps: &BigRational) -> Result<SelectionOutcome> {
    if k < 2 {
        return Err(Error::InvalidParameter("pigeonhole selection needs k >= 2".into()));
    }
    if sets.len() < k {
        return Err(Error::TooFewSets { need: k, got: sets.len() });
    }
    if eps.is_negative() {
        return Err(Error::InvalidParameter("eps must be nonnegative".into()));
    }
    let a = sets.iter().map(|b| fms.measure(b)).min().expect("nonempty");
    let bound = num_traits::pow(a.clone(), k) - eps;
    // count ≥ bound · N, compared exactly
    let n = BigRational::from_integer(fms.modulus().into());
    let need = &bound * &n;
    let enough = |b: &Bitset| BigRational::from_integer((b.count_ones() as u64).into()) >= need;

    let mut nodes = 0u64;
    let mut chosen = Vec::with_capacity(k);
    let full = Bitset::full(fms.modulus() as usize);
    fn go(
        sets: &[&Bitset],
        k: usize,
        start: usize,
        acc: &Bitset,
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        enough: &dyn Fn(&Bitset) -> bool,
    ) -> Option<Bitset> {
        for i in start..sets.len() {
            if sets.len() - i < k - chosen.len() {
                break;
            }
            *nodes += 1;
            let mut next = acc.clone();
            next.and_assign(sets[i]);
            // intersections only shrink, so a failing prefix fails for good
            if !enough(&next) {
                continue;
            }
            chosen.push(i);
            if chosen.len() == k {
                return Some(next);
            }
            if let Some(found) = go(sets, k, i + 1, &next, chosen, nodes, enough) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
    Ok(match go(sets, k, 0, &full, &mut chosen, &mut nodes, &enough) {
        Some(inter) => SelectionOutcome::Found(Selection { indices: chosen, measure: fms.measure(&inter), a, bound }),
        None => SelectionOutcome::Exhausted { nodes, a, bound },
    })
}

/// One round of the iterated pair selection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterativeRound {
    /// `a_j = μ(A_j)`.
    #[serde(serialize_with = "crate::witness::ser_rational")]
    pub a: BigRational,
    /// Selected positions `t_1 < t_2` in this round's shift list.
    pub pair: (usize, usize),
    /// `k_{t_2} − k_{t_1}`.
    pub shift_difference: i64,
    /// `μ(A_{j+1})` where `A_{j+1} = A_j ∩ T^{−(k_{t_2} − k_{t_1})} A_j`.
    #[serde(serialize_with = "crate::witness::ser_rational")]
    pub next_measure: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterativeRun {
    pub rounds: Vec<IterativeRound>,
    /// Index of the round whose shift list admitted no pair, if any.
    pub stalled_at: Option<usize>,
}

/// Repeated pair selection: in round `j`, with `E_i = T^{−k_i} A_j` for the
/// round's shifts `k_i`, pick `t_1 < t_2` with
/// `μ(E_{t_1} ∩ E_{t_2}) ≥ a_j² / 2`, then continue with
/// `A_{j+1} = A_j ∩ T^{−(k_{t_2} − k_{t_1})} A_j`, whose measure equals that
/// of the selected intersection.
pub fn iterative_pair_selection(fms: &FiniteMeasureSystem, set: &str, rounds: &[Vec<i64>]) -> Result<IterativeRun> {
    let mut current = fms.set(set)?.clone();
    let mut out = Vec::new();
    for (j, shifts) in rounds.iter().enumerate() {
        let a = fms.measure(&current);
        if a.is_zero() {
            return Ok(IterativeRun { rounds: out, stalled_at: Some(j) });
        }
        let es: Vec<Bitset> = shifts.iter().map(|&m| fms.preimage(&current, m)).collect();
        let refs: Vec<&Bitset> = es.iter().collect();
        let half = BigRational::new(One::one(), 2.into());
        // a² − a²/2 = a²/2 as the k = 2 bound
        let eps = &a * &a * &half;
        let sel = match select_bitsets(fms, &refs, 2, &eps)? {
            SelectionOutcome::Found(s) => s,
            SelectionOutcome::Exhausted { .. } => return Ok(IterativeRun { rounds: out, stalled_at: Some(j) }),
        };
        let (t1, t2) = (sel.indices[0], sel.indices[1]);
        let diff = shifts[t2] - shifts[t1];
        let shifted = fms.preimage(&current, diff);
        current.and_assign(&shifted);
        let next_measure = fms.measure(&current);
        debug_assert_eq!(next_measure, sel.measure, "measure preservation");
        out.push(IterativeRound { a, pair: (t1, t2), shift_difference: diff, next_measure });
    }
    Ok(IterativeRun { rounds: out, stalled_at: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ap(q: i64, lo: i64, hi: i64) -> IntegerWindow {
        IntegerWindow::from_values(lo, hi, (lo..=hi).filter(|v| v % q == 0)).unwrap()
    }

    #[test]
    fn poincare_examples() {
        let fms = FiniteMeasureSystem::new(8, 1).unwrap().with_set("A", [0]);
        let w = poincare_order_witness(&ap(8, 1, 100), &fms, "A", 2, &SearchBudget::window(1, 100)).unwrap();
        let w = w.found().unwrap();
        assert_eq!(w.witness.n, vec![8, 16]);
        assert_eq!(w.measure, r(1, 8));

        let full = FiniteMeasureSystem::new(5, 2).unwrap().with_set("X", 0..5);
        let p = IntegerWindow::new(1, 50, vec![3, 7, 10, 17, 20]).unwrap();
        let w = poincare_order_witness(&p, &full, "X", 2, &SearchBudget::window(1, 50)).unwrap();
        assert_eq!(w.found().unwrap().witness.n, vec![3, 7]);
        assert_eq!(w.found().unwrap().measure, r(1, 1));

        let z2 = FiniteMeasureSystem::new(2, 1).unwrap().with_set("A", [0]);
        let odd = IntegerWindow::new(1, 5, vec![1, 3, 5]).unwrap();
        assert!(poincare_order_witness(&odd, &z2, "A", 1, &SearchBudget::window(1, 5)).unwrap().is_exhausted());
    }

    #[test]
    fn birkhoff_examples() {
        let fms = FiniteMeasureSystem::new(8, 1).unwrap().with_set("U", [0, 1]);
        let w = birkhoff_order_witness(&ap(8, 1, 100), &fms, "U", 2, &SearchBudget::window(1, 100)).unwrap();
        assert_eq!(w.found().unwrap().witness.n, vec![8, 16]);
        assert_eq!(w.found().unwrap().points, 2);

        let sys = SystemSpec::CyclicRotation { n: 4, k: 1 };
        let p = IntegerWindow::new(1, 10, vec![2, 6]).unwrap();
        let out = birkhoff_order_witness_cyclic(&p, &sys, &Neighborhood::Subset(vec![0]), 1, &SearchBudget::window(1, 10)).unwrap();
        assert!(out.is_exhausted());
    }

    fn shifted_intervals() -> (FiniteMeasureSystem, Vec<String>) {
        let mut fms = FiniteMeasureSystem::new(10, 1).unwrap();
        let names: Vec<String> = (0..10).map(|i| format!("E{i}")).collect();
        for (i, name) in names.iter().enumerate() {
            fms.add_set(name.clone(), (0..5).map(|v| v - i as i64));
        }
        (fms, names)
    }

    #[test]
    fn pigeonhole_examples() {
        let (fms, names) = shifted_intervals();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        match pigeonhole_select(&fms, &refs, 2, &r(1, 20)).unwrap() {
            SelectionOutcome::Found(s) => {
                assert_eq!(s.indices, vec![0, 1]);
                assert_eq!(s.measure, r(2, 5));
                assert_eq!(s.bound, r(1, 5));
            }
            other => panic!("{other:?}"),
        }

        let same = FiniteMeasureSystem::new(6, 1).unwrap().with_set("A", [0, 2, 3]).with_set("B", [0, 2, 3]).with_set("C", [0, 2, 3]);
        match pigeonhole_select(&same, &["A", "B", "C"], 3, &r(0, 1)).unwrap() {
            SelectionOutcome::Found(s) => {
                assert_eq!(s.indices, vec![0, 1, 2]);
                assert_eq!(s.measure, r(1, 2));
            }
            other => panic!("{other:?}"),
        }

        let halves = FiniteMeasureSystem::new(10, 1).unwrap().with_set("E1", 0..5).with_set("E2", 5..10);
        assert!(matches!(
            pigeonhole_select(&halves, &["E1", "E2"], 2, &r(1, 100)).unwrap(),
            SelectionOutcome::Exhausted { .. }
        ));
        assert_eq!(pigeonhole_select(&halves, &["E1"], 2, &r(1, 100)), Err(Error::TooFewSets { need: 2, got: 1 }));
    }

    #[test]
    fn iterative_rounds_keep_the_half_square_bound() {
        let fms = FiniteMeasureSystem::new(60, 1).unwrap().with_set("A", 0..30);
        let rounds = vec![(1..=8).collect::<Vec<i64>>(), vec![2, 4, 6, 8, 10, 12], vec![5, 10, 15, 20]];
        let run = iterative_pair_selection(&fms, "A", &rounds).unwrap();
        assert!(!run.rounds.is_empty());
        for round in &run.rounds {
            assert!(round.next_measure >= &round.a * &round.a / BigRational::from_integer(2.into()));
        }
    }
}
