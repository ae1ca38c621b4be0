//! Sturmian codings of irrational rotations.

use std::collections::HashSet;

use super::orbit::ReturnSet;
use super::scalar::{Coef, Fixed, TorusScalar};
use super::spec::{SystemPoint, SystemSpec};
use crate::error::{Error, Result};
use crate::intset::IntegerWindow;

/// Coding of an orbit segment. Symbols at `ambiguous` positions could not
/// be decided at the available precision; they are stored as `0` and must
/// not be trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmianWord {
    pub lo: i64,
    pub symbols: Vec<u8>,
    pub ambiguous: Vec<i64>,
}

impl SturmianWord {
    pub fn hi(&self) -> i64 {
        self.lo + self.symbols.len() as i64 - 1
    }

    pub fn symbol(&self, n: i64) -> Option<u8> {
        let i = n.checked_sub(self.lo)?;
        self.symbols.get(usize::try_from(i).ok()?).copied()
    }

    /// The symbols, or the first ambiguous position.
    pub fn certain(&self) -> Result<&[u8]> {
        match self.ambiguous.first() {
            Some(&n) => Err(Error::AmbiguousSymbol { n }),
            None => Ok(&self.symbols),
        }
    }

    pub fn to_bit_string(&self) -> String {
        self.symbols.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }
}

fn angle_of(sys: &SystemSpec) -> Result<(Fixed, Fixed)> {
    match sys {
        SystemSpec::Sturmian { alpha: TorusScalar::Fixed(a), base } => Ok((*a, base.to_fixed())),
        SystemSpec::Sturmian { .. } => Err(Error::RationalAngle),
        _ => Err(Error::InvalidParameter(format!("{} is not a Sturmian system", sys.kind_name()))),
    }
}

fn circular_gap(a: u128, b: u128) -> u128 {
    let d = a.wrapping_sub(b);
    d.min(d.wrapping_neg())
}

// symbol of a point: 1 iff it lies in [1 − α, 1); None if undecidable
fn symbol(p: Fixed, cut: Fixed) -> Option<u8> {
    let near_cut = cut.err.saturating_add(p.err) > 0 && circular_gap(p.value, cut.value) <= cut.err.saturating_add(p.err);
    let near_zero = p.err > 0 && circular_gap(p.value, 0) <= p.err;
    if near_cut || near_zero {
        None
    } else {
        Some(u8::from(p.value >= cut.value))
    }
}

/// `c(n) = 1` iff `x + nα mod 1 ∈ [1−α, 1)`, for `n ∈ [lo, hi]`.
pub fn code_point(sys: &SystemSpec, x: &TorusScalar, lo: i64, hi: i64) -> Result<SturmianWord> {
    if lo > hi {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let (alpha, _) = angle_of(sys)?;
    let cut = Fixed { value: alpha.value.wrapping_neg(), err: alpha.err };
    let start = x.to_fixed();
    let mut symbols = Vec::with_capacity((hi - lo + 1) as usize);
    let mut ambiguous = Vec::new();
    for n in lo..=hi {
        let p = start.add(alpha.mul_int(&Coef::Small(n as i128)));
        match symbol(p, cut) {
            Some(s) => symbols.push(s),
            None => {
                symbols.push(0);
                ambiguous.push(n);
            }
        }
    }
    Ok(SturmianWord { lo, symbols, ambiguous })
}

/// Coding of the system's base point over `[lo, hi]`.
pub fn sturmian_code(sys: &SystemSpec, lo: i64, hi: i64) -> Result<SturmianWord> {
    let SystemSpec::Sturmian { base, .. } = sys else {
        return Err(Error::InvalidParameter(format!("{} is not a Sturmian system", sys.kind_name())));
    };
    sys.validate()?;
    code_point(sys, base, lo, hi)
}

/// Number of distinct factors of length `len` in `word`.
pub fn factor_count(word: &[u8], len: usize) -> usize {
    if len == 0 {
        return 1;
    }
    word.windows(len).collect::<HashSet<_>>().len()
}

pub(crate) fn cylinder_return_set(
    sys: &SystemSpec,
    x: &SystemPoint,
    center: &SystemPoint,
    radius: u32,
    lo: i64,
    hi: i64,
) -> Result<ReturnSet> {
    let (SystemPoint::Circle(x), SystemPoint::Circle(c)) = (x, center) else {
        return Err(Error::ArityMismatch("Sturmian points are circle points".into()));
    };
    let l = radius as i64;
    let pattern = code_point(sys, c, -l, l)?;
    let pattern = pattern.certain()?.to_vec();
    let word = code_point(sys, x, lo - l, hi + l)?;
    let ambiguous: HashSet<i64> = word.ambiguous.iter().copied().collect();
    let mut members = Vec::new();
    let mut boundary = Vec::new();
    for n in lo..=hi {
        let mut mismatch = false;
        let mut unsure = false;
        for j in -l..=l {
            let m = n + j;
            if ambiguous.contains(&m) {
                unsure = true;
            } else if word.symbol(m) != Some(pattern[(j + l) as usize]) {
                mismatch = true;
                break;
            }
        }
        if !mismatch {
            if unsure {
                boundary.push(n);
            } else {
                members.push(n);
            }
        }
    }
    Ok(ReturnSet { window: IntegerWindow::new(lo, hi, members)?, boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::Neighborhood;

    fn golden(base: TorusScalar) -> SystemSpec {
        SystemSpec::Sturmian { alpha: TorusScalar::golden(), base }
    }

    #[test]
    fn golden_word_from_one_tenth() {
        // 0.1, 0.718, 0.336, 0.954, 0.572 against the cut 0.382
        let w = sturmian_code(&golden(TorusScalar::rational(1, 10)), 0, 4).unwrap();
        assert_eq!(w.to_bit_string(), "01011");
        assert!(w.ambiguous.is_empty());
    }

    #[test]
    fn first_symbol_for_base_below_cut() {
        let w = sturmian_code(&golden(TorusScalar::rational(1, 5)), 0, 0).unwrap();
        assert_eq!(w.symbols, vec![0]);
    }

    #[test]
    fn rational_angle_rejected() {
        let sys = SystemSpec::Sturmian { alpha: TorusScalar::rational(1, 3), base: TorusScalar::zero() };
        assert_eq!(sturmian_code(&sys, 0, 3), Err(Error::RationalAngle));
    }

    #[test]
    fn base_on_the_cut_is_flagged() {
        // base on the cut 1 − α: n = 0 sits on the cut and n = 1 on 0 ≡ 1
        let g = TorusScalar::golden();
        let cut = TorusScalar::zero().sub(&g);
        let w = sturmian_code(&golden(cut), 0, 3).unwrap();
        assert_eq!(w.ambiguous, vec![0, 1]);
        assert!(w.certain().is_err());
    }

    #[test]
    fn complexity_small() {
        let w = sturmian_code(&golden(TorusScalar::rational(1, 10)), 0, 2000).unwrap();
        let s = w.certain().unwrap();
        for len in 1..=8 {
            assert_eq!(factor_count(s, len), len + 1);
        }
    }

    #[test]
    fn cylinder_returns_include_zero() {
        let sys = golden(TorusScalar::rational(1, 10));
        let x = SystemPoint::Circle(TorusScalar::rational(1, 10));
        let u = Neighborhood::Cylinder { center: x.clone(), radius: 3 };
        let rs = crate::systems::return_set(&sys, &x, &u, -30, 30).unwrap();
        assert!(rs.window.contains(0));
        // every member reproduces the central block
        let w = code_point(&sys, &TorusScalar::rational(1, 10), -40, 40).unwrap();
        for n in rs.window.iter() {
            for j in -3..=3 {
                assert_eq!(w.symbol(n + j), w.symbol(j));
            }
        }
    }
}
