use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::representation::greedy;
use crate::error::{Error, Result};
use crate::intset::{generate_sg_bounded, IntegerWindow, Sequence, DEFAULT_MAX_GENERATOR_LEN};

/// A window whose members each carry exactly one class label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledWindow {
    pub window: IntegerWindow,
    /// `labels[i]` indexes `classes` and belongs to `window.members()[i]`.
    pub labels: Vec<usize>,
    pub classes: Vec<String>,
}

impl LabeledWindow {
    pub fn new(window: IntegerWindow, labels: Vec<usize>, classes: Vec<String>) -> Result<Self> {
        if labels.len() != window.len() || labels.iter().any(|&l| l >= classes.len()) {
            return Err(Error::InvalidParameter("every member needs exactly one known label".into()));
        }
        Ok(LabeledWindow { window, labels, classes })
    }

    /// All members in one class.
    pub fn single(window: IntegerWindow, class: &str) -> Self {
        let labels = vec![0; window.len()];
        LabeledWindow { window, labels, classes: vec![class.to_string()] }
    }

    /// Class `r` holds the members congruent to `r` mod `modulus`.
    pub fn by_residue(window: IntegerWindow, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("residue partition needs modulus >= 1".into()));
        }
        let m = modulus as i128;
        let labels = window.iter().map(|v| (v as i128).rem_euclid(m) as usize).collect();
        let classes = (0..modulus).map(|r| format!("r{r}")).collect();
        Ok(LabeledWindow { window, labels, classes })
    }

    pub fn label_of(&self, value: i64) -> Option<&str> {
        let i = self.window.members().binary_search(&value).ok()?;
        Some(&self.classes[self.labels[i]])
    }

    pub fn class_window(&self, class: usize) -> IntegerWindow {
        let members = self.window.iter().zip(&self.labels).filter(|(_, &l)| l == class).map(|(v, _)| v).collect();
        IntegerWindow::new(self.window.lo(), self.window.hi(), members).expect("subset of a valid window")
    }
}

pub const SG2_CLASSES: [&str; 3] = ["B0", "B1", "B2"];

/// Label of a single member of `SG_2(p)` from the parities of its indices.
fn parity_label(terms: &[i64], v: i64) -> Result<usize> {
    let rep = greedy(terms, v).ok_or(Error::InvalidParameter(format!("{v} is not a subset sum")))?;
    Ok(if rep.all_odd() {
        1
    } else if rep.all_even() {
        2
    } else {
        0
    })
}

/// Splits `SG_2(p) ∩ [lo, hi]` into `B1` (all indices odd), `B2` (all
/// indices even) and `B0` (mixed), using the unique representation.
///
/// A seeded 1% sample (at least one element) is re-labeled from the
/// definition, as membership in `SG_1` of the odd or even subsequence.
pub fn partition_sg2(p: &Sequence, lo: i64, hi: i64) -> Result<LabeledWindow> {
    partition_sg2_checked(p, lo, hi, 0x5eed)
}

pub fn partition_sg2_checked(p: &Sequence, lo: i64, hi: i64, seed: u64) -> Result<LabeledWindow> {
    p.require_super_lacunary()?;
    let all = generate_sg_bounded(p, 2, DEFAULT_MAX_GENERATOR_LEN)?;
    let window = IntegerWindow::from_values(lo, hi, all.iter())?;
    let terms = p.terms();
    let labels = window.members().par_iter().map(|&v| parity_label(terms, v)).collect::<Result<Vec<_>>>()?;
    let lw = LabeledWindow::new(window, labels, SG2_CLASSES.iter().map(|s| s.to_string()).collect())?;
    spot_check(p, &lw, seed)?;
    Ok(lw)
}

fn definitional_classes(p: &Sequence) -> Result<(IntegerWindow, IntegerWindow)> {
    let sg1 = |s: Sequence| -> Result<IntegerWindow> {
        if s.is_empty() {
            return Ok(IntegerWindow::spanning([]));
        }
        generate_sg_bounded(&s, 1, DEFAULT_MAX_GENERATOR_LEN)
    };
    Ok((sg1(p.odd_positions())?, sg1(p.even_positions())?))
}

fn spot_check(p: &Sequence, lw: &LabeledWindow, seed: u64) -> Result<()> {
    let n = lw.window.len();
    if n == 0 {
        return Ok(());
    }
    let (b1, b2) = definitional_classes(p)?;
    let k = n.div_ceil(100);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in sample(&mut rng, n, k) {
        let v = lw.window.members()[i];
        let definitional = if b1.contains(v) {
            1
        } else if b2.contains(v) {
            2
        } else {
            0
        };
        if definitional != lw.labels[i] {
            return Err(Error::ClassifierMismatch {
                value: v,
                parity: lw.classes[lw.labels[i]].clone(),
                definitional: lw.classes[definitional].clone(),
            });
        }
    }
    Ok(())
}

/// Labels every member from the definition; used to validate the parity
/// shortcut on whole windows.
pub fn definitional_labels(p: &Sequence, window: &IntegerWindow) -> Result<Vec<usize>> {
    let (b1, b2) = definitional_classes(p)?;
    Ok(window
        .iter()
        .map(|v| {
            if b1.contains(v) {
                1
            } else if b2.contains(v) {
                2
            } else {
                0
            }
        })
        .collect())
}
