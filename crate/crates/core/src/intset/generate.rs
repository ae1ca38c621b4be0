//! FS and SG_d generators and the difference set.

use super::sequence::Sequence;
use super::window::IntegerWindow;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_GENERATOR_LEN: usize = 24;

fn check_len(p: &Sequence, max_len: usize) -> Result<()> {
    if p.len() > max_len {
        return Err(Error::SequenceTooLong { len: p.len(), max: max_len });
    }
    Ok(())
}

/// All sums over nonempty index subsets of `p`, deduplicated.
pub fn generate_fs(p: &Sequence) -> Result<IntegerWindow> {
    generate_fs_bounded(p, DEFAULT_MAX_GENERATOR_LEN)
}

pub fn generate_fs_bounded(p: &Sequence, max_len: usize) -> Result<IntegerWindow> {
    check_len(p, max_len)?;
    // sums[mask] for every subset, built by doubling
    let mut sums: Vec<i64> = Vec::with_capacity(1 << p.len());
    sums.push(0);
    for &t in p.terms() {
        let half = sums.len();
        for i in 0..half {
            let s = sums[i].checked_add(t).ok_or(Error::Overflow("summing FS terms"))?;
            sums.push(s);
        }
    }
    sums.swap_remove(0);
    Ok(IntegerWindow::spanning(sums))
}

/// Sums `ε_1 p_1 + … + ε_n p_n` with not all `ε_i` zero and every block of
/// zeros lying strictly between two ones shorter than `d`. Leading and
/// trailing zeros are unconstrained.
pub fn generate_sg(p: &Sequence, d: usize) -> Result<IntegerWindow> {
    generate_sg_bounded(p, d, DEFAULT_MAX_GENERATOR_LEN)
}

pub fn generate_sg_bounded(p: &Sequence, d: usize, max_len: usize) -> Result<IntegerWindow> {
    if d == 0 {
        return Err(Error::InvalidParameter("SG_d needs d >= 1".into()));
    }
    check_len(p, max_len)?;
    let terms = p.terms();
    let mut out = Vec::new();
    // every valid pattern is: a first one at `start`, then a chain of ones
    // each at most `d` positions after the previous one
    fn extend(terms: &[i64], d: usize, last: usize, sum: i64, out: &mut Vec<i64>) -> Result<()> {
        out.push(sum);
        for next in last + 1..terms.len().min(last + d + 1) {
            let s = sum.checked_add(terms[next]).ok_or(Error::Overflow("summing SG terms"))?;
            extend(terms, d, next, s, out)?;
        }
        Ok(())
    }
    for start in 0..terms.len() {
        extend(terms, d, start, terms[start], &mut out)?;
    }
    Ok(IntegerWindow::spanning(out))
}

/// `{ x − y : x, y ∈ a, x > y }`, on the window `[0, a.hi − a.lo]`.
pub fn delta_set(a: &IntegerWindow) -> Result<IntegerWindow> {
    let m = a.members();
    let hi = a.hi().checked_sub(a.lo()).ok_or(Error::Overflow("taking differences"))?;
    let mut diffs = Vec::with_capacity(m.len() * m.len().saturating_sub(1) / 2);
    for (i, &x) in m.iter().enumerate() {
        for &y in &m[..i] {
            diffs.push(x - y);
        }
    }
    IntegerWindow::from_values(0, hi, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(t: &[i64]) -> Sequence {
        Sequence::new(t.to_vec())
    }

    #[test]
    fn fs_examples() {
        assert_eq!(generate_fs(&seq(&[2, 3])).unwrap().members(), &[2, 3, 5]);
        assert_eq!(generate_fs(&seq(&[7])).unwrap().members(), &[7]);
        assert_eq!(generate_fs(&seq(&[1, 2, 4])).unwrap().members(), &[1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn sg_examples() {
        assert_eq!(generate_sg(&seq(&[1, 2, 4]), 1).unwrap().members(), &[1, 2, 3, 4, 6, 7]);
        assert_eq!(generate_sg(&seq(&[1, 2, 4]), 2).unwrap().members(), &[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(generate_sg(&seq(&[11]), 3).unwrap().members(), &[11]);
        let expect: Vec<i64> = (1..=15).filter(|&v| v != 9).collect();
        assert_eq!(generate_sg(&seq(&[1, 2, 4, 8]), 2).unwrap().members(), expect.as_slice());
    }

    #[test]
    fn length_cap() {
        let long = seq(&(1..=25).collect::<Vec<_>>());
        assert_eq!(generate_fs(&long), Err(Error::SequenceTooLong { len: 25, max: 24 }));
        assert!(generate_sg(&long, 2).is_err());
        assert!(generate_sg(&seq(&[1]), 0).is_err());
    }

    #[test]
    fn delta_examples() {
        let w = |v: &[i64]| IntegerWindow::spanning(v.to_vec());
        assert_eq!(delta_set(&w(&[1, 4, 6])).unwrap().members(), &[2, 3, 5]);
        assert!(delta_set(&w(&[5])).unwrap().is_empty());
        assert_eq!(delta_set(&w(&[0, 1, 3, 7])).unwrap().members(), &[1, 2, 3, 4, 6, 7]);
    }
}
