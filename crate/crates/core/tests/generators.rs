use std::collections::BTreeSet;

use proptest::prelude::*;
use reclab::intset::{
    banach_density_upper, delta_set, eval_window, generate_fs, generate_sg, syndetic_gap, IntegerWindow, Sequence, SequenceSpec, SetDescriptor,
};

/// Sums over every 0/1 vector that is not all zero and whose interior zero
/// runs are shorter than `d` (`d = None` means no gap rule).
fn brute(p: &[i64], d: Option<usize>) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for mask in 1u32..1 << p.len() {
        let ones: Vec<usize> = (0..p.len()).filter(|i| mask >> i & 1 == 1).collect();
        if let Some(d) = d {
            if ones.windows(2).any(|w| w[1] - w[0] - 1 >= d) {
                continue;
            }
        }
        out.insert(ones.iter().map(|&i| p[i]).sum());
    }
    out
}

fn seq() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..=50, 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generators_match_enumeration(p in seq(), d in 1usize..=4) {
        let s = Sequence::new(p.clone());
        let fs: BTreeSet<i64> = generate_fs(&s).unwrap().iter().collect();
        prop_assert_eq!(fs, brute(&p, None));
        let sg: BTreeSet<i64> = generate_sg(&s, d).unwrap().iter().collect();
        prop_assert_eq!(sg, brute(&p, Some(d)));
    }

    #[test]
    fn sg_chain(p in seq(), d in 1usize..=4) {
        let s = Sequence::new(p.clone());
        let a = generate_sg(&s, d).unwrap();
        let b = generate_sg(&s, d + 1).unwrap();
        let fs = generate_fs(&s).unwrap();
        prop_assert!(a.iter().all(|v| b.contains(v)));
        prop_assert!(b.iter().all(|v| fs.contains(v)));
        let full = generate_sg(&s, p.len().saturating_sub(1).max(1)).unwrap();
        prop_assert_eq!(full.members(), fs.members());
    }

    /// SG_1 of a positive sequence is the difference set of its partial
    /// sums with 0 adjoined.
    #[test]
    fn sg1_is_a_difference_set(p in seq()) {
        let mut partial = vec![0i64];
        for t in &p {
            partial.push(partial.last().unwrap() + t);
        }
        let sums = IntegerWindow::spanning(partial);
        let delta: BTreeSet<i64> = delta_set(&sums).unwrap().iter().collect();
        let sg1: BTreeSet<i64> = generate_sg(&Sequence::new(p), 1).unwrap().iter().collect();
        prop_assert_eq!(delta, sg1);
    }

    #[test]
    fn windows_are_monotone(p in seq(), d in 1usize..=3, lo in -20i64..40, len in 0i64..200, extra in 0i64..100) {
        let s = SetDescriptor::Sg { p: SequenceSpec::Explicit(p), d };
        let small = eval_window(&s, lo, lo + len).unwrap();
        let big = eval_window(&s, lo - extra, lo + len + extra).unwrap();
        prop_assert_eq!(big.restrict(lo, lo + len).unwrap(), small);
    }

    #[test]
    fn translation_commutes_with_windows(members in prop::collection::btree_set(-100i64..100, 0..30), c in -50i64..50) {
        let w = IntegerWindow::from_values(-100, 100, members.iter().copied()).unwrap();
        let t = w.translate(c).unwrap();
        prop_assert_eq!(t.lo(), -100 + c);
        let shifted: Vec<i64> = members.iter().map(|m| m + c).collect();
        prop_assert_eq!(t.members(), shifted.as_slice());
        // differences do not see translation
        prop_assert_eq!(delta_set(&t).unwrap().into_members(), delta_set(&w).unwrap().into_members());
    }

    #[test]
    fn ap_matches_filter(q in 1u64..20, r in -30i64..30, lo in -100i64..100, len in 0i64..300) {
        let w = eval_window(&SetDescriptor::Ap { modulus: q, residue: r }, lo, lo + len).unwrap();
        let expect: Vec<i64> = (lo..=lo + len).filter(|v| (v - r).rem_euclid(q as i64) == 0).collect();
        prop_assert_eq!(w.members(), expect.as_slice());
    }

    #[test]
    fn diagnostics_match_naive(members in prop::collection::btree_set(0i64..120, 0..40), block in 1u64..30) {
        let w = IntegerWindow::from_values(0, 119, members.iter().copied()).unwrap();
        let best = (0..=120 - block as i64).map(|s| members.range(s..s + block as i64).count() as u64).max().unwrap();
        let dens = banach_density_upper(&w, block).unwrap();
        prop_assert_eq!((*dens.numer(), *dens.denom()), {
            let g = num_integer::gcd(best, block);
            (best / g, block / g)
        });
        // scan once, measuring the distance back to the last member (or lo)
        let mut last = 0i64;
        let mut widest = 0i64;
        for v in 0..=119i64 {
            if members.contains(&v) {
                widest = widest.max(v - last);
                last = v;
            }
        }
        widest = widest.max(119 - last);
        let expect = (!members.is_empty()).then_some(widest);
        prop_assert_eq!(syndetic_gap(&w), expect);
    }
}

#[test]
fn super_lacunary_flag_is_checked() {
    assert!(SequenceSpec::SuperLacunary { seed: 3, slack: 3, count: 10 }.generate().unwrap().is_super_lacunary());
    assert!(!SequenceSpec::Geometric { first: 1, ratio: 2, count: 5 }.generate().unwrap().is_super_lacunary());
    assert!(SequenceSpec::Geometric { first: 1, ratio: 3, count: 5 }.generate().unwrap().is_super_lacunary());
}

#[test]
fn unions_and_intersections() {
    let a = SetDescriptor::Ap { modulus: 2, residue: 0 };
    let b = SetDescriptor::Ap { modulus: 3, residue: 0 };
    let i = eval_window(&SetDescriptor::Intersection(vec![a.clone(), b.clone()]), 0, 30).unwrap();
    assert_eq!(i.members(), &[0, 6, 12, 18, 24, 30]);
    let u = eval_window(&SetDescriptor::Union(vec![a, b]), 0, 10).unwrap();
    assert_eq!(u.members(), &[0, 2, 3, 4, 6, 8, 9, 10]);
}
