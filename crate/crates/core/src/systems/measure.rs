use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::bits::Bitset;
use crate::error::{Error, Result};

/// The rotation `r ↦ r + k` on `Z/N` with uniform measure and a family of
/// named subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMeasureSystem {
    n: u64,
    k: i64,
    sets: BTreeMap<String, Bitset>,
}

impl FiniteMeasureSystem {
    pub fn new(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("finite system needs N >= 1".into()));
        }
        Ok(FiniteMeasureSystem { n, k, sets: BTreeMap::new() })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn shift(&self) -> i64 {
        self.k
    }

    /// Adds (or replaces) a set given by residues; residues are reduced mod N.
    pub fn add_set(&mut self, name: impl Into<String>, residues: impl IntoIterator<Item = i64>) -> &mut Self {
        let mut b = Bitset::new(self.n as usize);
        for r in residues {
            b.set(self.reduce(r as i128));
        }
        self.sets.insert(name.into(), b);
        self
    }

    pub fn with_set(mut self, name: impl Into<String>, residues: impl IntoIterator<Item = i64>) -> Self {
        self.add_set(name, residues);
        self
    }

    pub fn set_names(&self) -> impl Iterator<Item = &str> {
        self.sets.keys().map(String::as_str)
    }

    pub fn set(&self, name: &str) -> Result<&Bitset> {
        self.sets.get(name).ok_or_else(|| Error::UnknownSet(name.to_string()))
    }

    pub fn residues(&self, name: &str) -> Result<Vec<i64>> {
        Ok(self.set(name)?.ones().map(|i| i as i64).collect())
    }

    pub(crate) fn reduce(&self, v: i128) -> usize {
        v.rem_euclid(self.n as i128) as usize
    }

    /// `T^{−m} A = { r : r + m k ∈ A }`.
    pub fn preimage(&self, a: &Bitset, m: i64) -> Bitset {
        let step = m as i128 * self.k as i128;
        let mut out = Bitset::new(self.n as usize);
        for r in 0..self.n as usize {
            if a.get(self.reduce(r as i128 + step)) {
                out.set(r);
            }
        }
        out
    }

    pub fn measure(&self, b: &Bitset) -> BigRational {
        BigRational::new((b.count_ones() as u64).into(), self.n.into())
    }

    /// `μ(A ∩ ⋂_{m ∈ shifts} T^{−m} A)`.
    pub fn measure_intersection(&self, set_name: &str, shifts: &[i64]) -> Result<BigRational> {
        let a = self.set(set_name)?;
        let mut acc = a.clone();
        for &m in shifts {
            acc.and_assign(&self.preimage(a, m));
        }
        Ok(self.measure(&acc))
    }
}
