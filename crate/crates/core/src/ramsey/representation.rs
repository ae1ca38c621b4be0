use serde::Serialize;

use crate::error::{Error, Result};
use crate::intset::{Sequence, SequenceSpec};

/// Largest sequence length handled by [`make_super_lacunary`]; the terms
/// roughly triple each step, so i64 runs out near 40 terms anyway.
pub const MAX_SUPER_LACUNARY_LEN: usize = 36;

/// `p_1 = seed`, `p_{i+1} = 2(p_1 + … + p_i) + slack`, returned as an
/// explicit sequence after the growth rule has been re-checked.
pub fn make_super_lacunary(seed: i64, slack: i64, count: usize) -> Result<SequenceSpec> {
    if count > MAX_SUPER_LACUNARY_LEN {
        return Err(Error::SequenceTooLong { len: count, max: MAX_SUPER_LACUNARY_LEN });
    }
    let seq = SequenceSpec::SuperLacunary { seed, slack, count }.generate()?;
    seq.require_super_lacunary()?;
    Ok(SequenceSpec::Explicit(seq.terms().to_vec()))
}

/// `value = Σ_{i ∈ indices} p_i` with 1-based, strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub value: i64,
    pub indices: Vec<usize>,
}

impl Representation {
    pub fn all_odd(&self) -> bool {
        self.indices.iter().all(|i| i % 2 == 1)
    }

    pub fn all_even(&self) -> bool {
        self.indices.iter().all(|i| i % 2 == 0)
    }
}

/// Greedy decomposition of `m` over a super-lacunary `p`: repeatedly take
/// the largest unused term not exceeding what remains. `None` when the
/// remainder does not reach zero. Growth makes the result unique.
pub fn unique_representation(p: &Sequence, m: i64) -> Result<Option<Representation>> {
    p.require_super_lacunary()?;
    Ok(greedy(p.terms(), m))
}

pub(crate) fn greedy(terms: &[i64], m: i64) -> Option<Representation> {
    if m <= 0 {
        return None;
    }
    let mut rest = m;
    let mut indices = Vec::new();
    for (i, &t) in terms.iter().enumerate().rev() {
        if t <= rest {
            rest -= t;
            indices.push(i + 1);
        }
    }
    if rest != 0 {
        return None;
    }
    indices.reverse();
    Some(Representation { value: m, indices })
}

/// Every index set (1-based) whose terms sum to `m`, by exhaustive search.
pub fn brute_representations(p: &Sequence, m: i64) -> Result<Vec<Vec<usize>>> {
    let terms = p.terms();
    if terms.len() > 20 {
        return Err(Error::SequenceTooLong { len: terms.len(), max: 20 });
    }
    let mut out = Vec::new();
    for mask in 1u32..1 << terms.len() {
        let mut s: i128 = 0;
        for (i, &t) in terms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s += t as i128;
            }
        }
        if s == m as i128 {
            out.push((0..terms.len()).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions() {
        assert_eq!(make_super_lacunary(3, 3, 4).unwrap(), SequenceSpec::Explicit(vec![3, 9, 27, 81]));
        assert_eq!(make_super_lacunary(1, 1, 3).unwrap(), SequenceSpec::Explicit(vec![1, 3, 9]));
        assert_eq!(make_super_lacunary(5, 2, 1).unwrap(), SequenceSpec::Explicit(vec![5]));
        assert!(make_super_lacunary(0, 1, 3).is_err());
    }

    #[test]
    fn representations() {
        let p = Sequence::new(vec![3, 9, 27, 81]);
        assert_eq!(unique_representation(&p, 30).unwrap().unwrap().indices, vec![1, 3]);
        assert_eq!(unique_representation(&p, 3).unwrap().unwrap().indices, vec![1]);
        assert_eq!(unique_representation(&p, 5).unwrap(), None);
        assert_eq!(unique_representation(&p, 0).unwrap(), None);
        let bad = Sequence::new(vec![1, 2, 3]);
        assert_eq!(unique_representation(&bad, 3), Err(Error::NotSuperLacunary { index: 2 }));
    }

    #[test]
    fn greedy_matches_brute_force() {
        let p = SequenceSpec::SuperLacunary { seed: 2, slack: 1, count: 8 }.generate().unwrap();
        let top: i64 = p.terms().iter().sum();
        for m in 0..=top + 3 {
            let brute = brute_representations(&p, m).unwrap();
            let fast = unique_representation(&p, m).unwrap();
            assert!(brute.len() <= 1);
            assert_eq!(fast.map(|r| r.indices), brute.into_iter().next(), "m = {m}");
        }
    }
}
