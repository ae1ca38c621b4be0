use crate::error::{Error, Result};

/// Intensional description of a finite generator sequence `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    Explicit(Vec<i64>),
    /// `first, first·ratio, first·ratio², …` (`count` terms, ratio ≥ 2).
    Geometric { first: i64, ratio: i64, count: usize },
    /// `p_1 = seed`, `p_{i+1} = 2(p_1 + … + p_i) + slack`.
    SuperLacunary { seed: i64, slack: i64, count: usize },
}

/// A generated sequence together with its checked growth flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    terms: Vec<i64>,
    super_lacunary: bool,
}

impl Sequence {
    pub fn new(terms: Vec<i64>) -> Self {
        let super_lacunary = first_growth_failure(&terms).is_none();
        Sequence { terms, super_lacunary }
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff every term is positive and `p_{i+1} > 2(p_1 + … + p_i)`
    /// holds for every prefix.
    pub fn is_super_lacunary(&self) -> bool {
        self.super_lacunary
    }

    pub fn require_super_lacunary(&self) -> Result<()> {
        match first_growth_failure(&self.terms) {
            None => Ok(()),
            Some(index) => Err(Error::NotSuperLacunary { index }),
        }
    }

    /// Subsequence of terms at odd (1-based) positions `p_1, p_3, …`.
    pub fn odd_positions(&self) -> Sequence {
        Sequence::new(self.terms.iter().step_by(2).copied().collect())
    }

    /// Subsequence of terms at even (1-based) positions `p_2, p_4, …`.
    pub fn even_positions(&self) -> Sequence {
        Sequence::new(self.terms.iter().skip(1).step_by(2).copied().collect())
    }
}

// 1-based index of the first term that breaks positivity or the growth rule
fn first_growth_failure(terms: &[i64]) -> Option<usize> {
    let mut prefix: i128 = 0;
    for (i, &p) in terms.iter().enumerate() {
        if p <= 0 || (i > 0 && (p as i128) <= 2 * prefix) {
            return Some(i + 1);
        }
        prefix += p as i128;
    }
    None
}

impl SequenceSpec {
    pub fn generate(&self) -> Result<Sequence> {
        let terms = match *self {
            SequenceSpec::Explicit(ref t) => t.clone(),
            SequenceSpec::Geometric { first, ratio, count } => {
                if ratio < 2 {
                    return Err(Error::InvalidParameter(format!("geometric ratio {ratio} < 2")));
                }
                let mut out = Vec::with_capacity(count);
                let mut cur = first;
                for i in 0..count {
                    if i > 0 {
                        cur = cur.checked_mul(ratio).ok_or(Error::Overflow("generating a geometric sequence"))?;
                    }
                    out.push(cur);
                }
                out
            }
            SequenceSpec::SuperLacunary { seed, slack, count } => {
                if seed < 1 || slack < 1 {
                    return Err(Error::InvalidParameter("super-lacunary seed and slack must be >= 1".into()));
                }
                let mut out = Vec::with_capacity(count);
                let mut sum: i64 = 0;
                for i in 0..count {
                    let next = if i == 0 {
                        seed
                    } else {
                        sum.checked_mul(2)
                            .and_then(|v| v.checked_add(slack))
                            .ok_or(Error::Overflow("generating a super-lacunary sequence"))?
                    };
                    sum = sum.checked_add(next).ok_or(Error::Overflow("generating a super-lacunary sequence"))?;
                    out.push(next);
                }
                out
            }
        };
        Ok(Sequence::new(terms))
    }
}
