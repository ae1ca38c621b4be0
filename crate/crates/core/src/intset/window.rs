use serde::{Deserialize, Serialize};

use crate::bits::Bitset;
use crate::error::{Error, Result};

/// A finite subset of the integers known exactly on the closed interval
/// `[lo, hi]`. Nothing is claimed about integers outside the interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWindow")]
pub struct IntegerWindow {
    lo: i64,
    hi: i64,
    members: Vec<i64>,
}

#[derive(Deserialize)]
struct RawWindow {
    lo: i64,
    hi: i64,
    members: Vec<i64>,
}

impl TryFrom<RawWindow> for IntegerWindow {
    type Error = Error;
    fn try_from(raw: RawWindow) -> Result<Self> {
        IntegerWindow::new(raw.lo, raw.hi, raw.members)
    }
}

impl IntegerWindow {
    /// Validates that `members` is strictly increasing and inside `[lo, hi]`.
    pub fn new(lo: i64, hi: i64, members: Vec<i64>) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        let sorted = members.windows(2).all(|w| w[0] < w[1]);
        let inside = members.first().is_none_or(|&m| m >= lo) && members.last().is_none_or(|&m| m <= hi);
        if !sorted || !inside {
            return Err(Error::InvalidMembers);
        }
        Ok(IntegerWindow { lo, hi, members })
    }

    pub fn empty(lo: i64, hi: i64) -> Result<Self> {
        Self::new(lo, hi, Vec::new())
    }

    pub fn full(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        Ok(IntegerWindow { lo, hi, members: (lo..=hi).collect() })
    }

    /// Sorts, deduplicates and clips arbitrary values to `[lo, hi]`.
    pub fn from_values(lo: i64, hi: i64, values: impl IntoIterator<Item = i64>) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        let mut members: Vec<i64> = values.into_iter().filter(|m| (lo..=hi).contains(m)).collect();
        members.sort_unstable();
        members.dedup();
        Ok(IntegerWindow { lo, hi, members })
    }

    /// Window spanning exactly the given values (`[0, 0]` when there are none).
    pub fn spanning(values: impl IntoIterator<Item = i64>) -> Self {
        let mut members: Vec<i64> = values.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let (lo, hi) = match (members.first(), members.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => (0, 0),
        };
        IntegerWindow { lo, hi, members }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn members(&self) -> &[i64] {
        &self.members
    }

    pub fn into_members(self) -> Vec<i64> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Number of integers in `[lo, hi]`.
    pub fn span(&self) -> u64 {
        (self.hi as i128 - self.lo as i128 + 1) as u64
    }

    pub fn in_range(&self, n: i64) -> bool {
        (self.lo..=self.hi).contains(&n)
    }

    pub fn contains(&self, n: i64) -> bool {
        self.members.binary_search(&n).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.members.iter().copied()
    }

    /// Restriction to `[lo, hi] ∩ [self.lo, self.hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Self> {
        let (lo, hi) = (lo.max(self.lo), hi.min(self.hi));
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        let a = self.members.partition_point(|&m| m < lo);
        let b = self.members.partition_point(|&m| m <= hi);
        Ok(IntegerWindow { lo, hi, members: self.members[a..b].to_vec() })
    }

    pub fn translate(&self, c: i64) -> Result<Self> {
        let shift = |v: i64| v.checked_add(c).ok_or(Error::Overflow("translating a window"));
        Ok(IntegerWindow {
            lo: shift(self.lo)?,
            hi: shift(self.hi)?,
            members: self.members.iter().map(|&m| shift(m)).collect::<Result<_>>()?,
        })
    }

    /// Union on the common interval of the two windows.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let (lo, hi) = (self.lo.max(other.lo), self.hi.min(other.hi));
        Self::from_values(lo, hi, self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        let (lo, hi) = (self.lo.max(other.lo), self.hi.min(other.hi));
        Self::from_values(lo, hi, self.iter().filter(|&m| other.contains(m)))
    }

    /// Membership bitmap indexed by `n - lo`.
    pub fn to_bitset(&self) -> Bitset {
        let mut b = Bitset::new(self.span() as usize);
        for &m in &self.members {
            b.set((m - self.lo) as usize);
        }
        b
    }
}

impl<'a> IntoIterator for &'a IntegerWindow {
    type Item = &'a i64;
    type IntoIter = std::slice::Iter<'a, i64>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_members() {
        assert!(IntegerWindow::new(0, 10, vec![1, 1]).is_err());
        assert!(IntegerWindow::new(0, 10, vec![3, 2]).is_err());
        assert!(IntegerWindow::new(0, 10, vec![11]).is_err());
        assert!(IntegerWindow::new(5, 4, vec![]).is_err());
        assert!(IntegerWindow::new(-3, 3, vec![-3, 0, 3]).is_ok());
    }

    #[test]
    fn restrict_and_ops() {
        let w = IntegerWindow::new(0, 20, vec![1, 5, 9, 12, 20]).unwrap();
        assert_eq!(w.restrict(5, 12).unwrap().members(), &[5, 9, 12]);
        let v = IntegerWindow::new(4, 30, vec![5, 6, 12, 25]).unwrap();
        assert_eq!(w.union(&v).unwrap().members(), &[5, 6, 9, 12, 20]);
        assert_eq!(w.intersection(&v).unwrap().members(), &[5, 12]);
    }

    #[test]
    fn serde_validates() {
        let bad = r#"{"lo":0,"hi":3,"members":[2,1]}"#;
        assert!(serde_json::from_str::<IntegerWindow>(bad).is_err());
        let good = r#"{"lo":0,"hi":3,"members":[1,2]}"#;
        assert_eq!(serde_json::from_str::<IntegerWindow>(good).unwrap().len(), 2);
    }
}
