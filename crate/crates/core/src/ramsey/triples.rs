use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::partition::LabeledWindow;

/// `a_1 < a_2 < a_3` with `a_1, a_2, a_3, a_1+a_2, a_2+a_3, a_1+a_3` in one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub a: [i64; 3],
    pub class: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TripleBudget {
    /// Classes with more members are not searched.
    pub max_class_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TripleOutcome {
    Found(Triple),
    /// Every in-window triple was checked. `truncated` counts the
    /// candidate triples with a pairwise sum beyond the window.
    NoneInWindow { truncated: u64 },
    /// A class exceeded the budget; nothing is claimed about it.
    BudgetExceeded { class: String, size: usize },
}

impl TripleOutcome {
    pub fn found(&self) -> Option<&Triple> {
        match self {
            TripleOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// First triple of `members` (sorted) in ascending lexicographic order.
fn first_triple(members: &[i64], hi: i64) -> Option<[i64; 3]> {
    let has = |v: i64| members.binary_search(&v).is_ok();
    // partners[i]: positions j > i with members[i] + members[j] in the class
    let partners: Vec<Vec<usize>> = (0..members.len())
        .into_par_iter()
        .map(|i| {
            let a = members[i];
            (i + 1..members.len()).take_while(|&j| a.checked_add(members[j]).is_some_and(|s| s <= hi)).filter(|&j| has(a + members[j])).collect()
        })
        .collect();
    (0..members.len()).into_par_iter().find_map_first(|i| {
        let s1 = &partners[i];
        for (x, &j) in s1.iter().enumerate() {
            let s2 = &partners[j];
            // a_3 ∈ S(a_1) ∩ S(a_2), a_3 > a_2; both lists are sorted
            let mut y = 0;
            for &k in &s1[x + 1..] {
                while y < s2.len() && s2[y] < k {
                    y += 1;
                }
                if y < s2.len() && s2[y] == k {
                    return Some([members[i], members[j], members[k]]);
                }
            }
        }
        None
    })
}

/// Triples `a_1 < a_2 < a_3` of the class whose largest pairwise sum
/// `a_2 + a_3` exceeds `hi`.
fn truncated_triples(members: &[i64], hi: i64) -> u64 {
    (0..members.len())
        .into_par_iter()
        .map(|i| {
            let mut count = 0u64;
            for j in i + 1..members.len() {
                let a2 = members[j];
                let floor = hi.saturating_sub(a2);
                let first_over = members.partition_point(|&v| v <= floor).max(j + 1);
                count += (members.len() - first_over) as u64;
            }
            count
        })
        .sum()
}

/// Searches each class for a (*)-triple with all six values inside the
/// labeled window. Classes are scanned in label order and the first class
/// with a triple is reported.
pub fn find_monochromatic_triple(lw: &LabeledWindow, budget: &TripleBudget) -> TripleOutcome {
    let mut truncated = 0u64;
    for class in 0..lw.classes.len() {
        match class_triple(lw, class, budget) {
            TripleOutcome::NoneInWindow { truncated: t } => truncated += t,
            other => return other,
        }
    }
    TripleOutcome::NoneInWindow { truncated }
}

/// The search restricted to one class.
pub fn class_triple(lw: &LabeledWindow, class: usize, budget: &TripleBudget) -> TripleOutcome {
    let members = lw.class_window(class).into_members();
    let name = lw.classes[class].clone();
    if budget.max_class_size.is_some_and(|m| members.len() > m) {
        return TripleOutcome::BudgetExceeded { class: name, size: members.len() };
    }
    let hi = lw.window.hi();
    match first_triple(&members, hi) {
        Some(a) => TripleOutcome::Found(Triple { a, class: name }),
        None => TripleOutcome::NoneInWindow { truncated: truncated_triples(&members, hi) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intset::IntegerWindow;

    fn naive(members: &[i64]) -> Option<[i64; 3]> {
        let has = |v| members.contains(&v);
        for (x, &a) in members.iter().enumerate() {
            for (y, &b) in members.iter().enumerate().skip(x + 1) {
                for &c in &members[y + 1..] {
                    if has(a + b) && has(b + c) && has(a + c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    #[test]
    fn small_interval() {
        let lw = LabeledWindow::single(IntegerWindow::full(1, 7).unwrap(), "all");
        let t = find_monochromatic_triple(&lw, &TripleBudget::default());
        // (1, 2, 3) already has 3, 5, 4 in the interval
        assert_eq!(t.found().unwrap().a, [1, 2, 3]);
        assert_eq!(naive(&[1, 2, 3, 4, 5, 6, 7]), Some([1, 2, 3]));
    }

    #[test]
    fn matches_naive_on_sparse_sets() {
        let sets: [&[i64]; 4] = [&[1, 2, 4, 8, 16], &[2, 3, 5, 7, 8, 10, 12, 15], &[1, 3, 4, 5, 7, 8, 9, 12], &[5, 6, 11, 17, 22, 23, 28]];
        for s in sets {
            let w = IntegerWindow::spanning(s.iter().copied());
            let lw = LabeledWindow::single(w, "c");
            assert_eq!(find_monochromatic_triple(&lw, &TripleBudget::default()).found().map(|t| t.a), naive(s), "{s:?}");
        }
    }

    #[test]
    fn truncation_is_counted() {
        // {1, 2, 3} in [1, 4]: the only triple has 2 + 3 = 5 outside
        let w = IntegerWindow::new(1, 4, vec![1, 2, 3]).unwrap();
        let lw = LabeledWindow::single(w, "c");
        assert_eq!(find_monochromatic_triple(&lw, &TripleBudget::default()), TripleOutcome::NoneInWindow { truncated: 1 });
    }

    #[test]
    fn budget_refuses_large_classes() {
        let lw = LabeledWindow::single(IntegerWindow::full(1, 50).unwrap(), "c");
        let out = find_monochromatic_triple(&lw, &TripleBudget { max_class_size: Some(10) });
        assert!(matches!(out, TripleOutcome::BudgetExceeded { size: 50, .. }));
    }
}
