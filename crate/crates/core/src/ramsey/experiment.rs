use serde::Serialize;

use super::partition::{partition_sg2, LabeledWindow};
use super::triples::{class_triple, TripleBudget, TripleOutcome};
use crate::error::{Error, Result};
use crate::intset::{eval_window, SetDescriptor};
use crate::witness::{find_fs_witness, FSWitness, Outcome, SearchBudget};

/// How to split the evaluated set into classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Partitioner {
    /// `B0 / B1 / B2` by index parity; needs `SG_2` of a super-lacunary sequence.
    Sg2Parity,
    ByResidue(u64),
    Single,
}

/// Witness structure looked for inside each class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    Triple(TripleBudget),
    /// Finite IP set of length `d`, entries bounded by the budget.
    Fs { d: usize, budget: SearchBudget },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "probe", rename_all = "kebab-case")]
pub enum ClassResult {
    Triple { outcome: TripleOutcome },
    Fs { witness: Option<FSWitness>, complete: bool, nodes_expanded: u64 },
}

impl ClassResult {
    pub fn has_witness(&self) -> bool {
        match self {
            ClassResult::Triple { outcome } => outcome.found().is_some(),
            ClassResult::Fs { witness, .. } => witness.is_some(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: String,
    pub size: usize,
    pub result: ClassResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyReport {
    pub lo: i64,
    pub hi: i64,
    pub classes: Vec<ClassReport>,
}

impl RamseyReport {
    pub fn witness_free(&self) -> bool {
        self.classes.iter().all(|c| !c.result.has_witness())
    }
}

pub fn label(s: &SetDescriptor, partitioner: &Partitioner, lo: i64, hi: i64) -> Result<LabeledWindow> {
    match partitioner {
        Partitioner::Sg2Parity => {
            let SetDescriptor::Sg { p, d: 2 } = s else {
                return Err(Error::InvalidParameter("the parity partition applies to SG_2 sets only".into()));
            };
            partition_sg2(&p.generate()?, lo, hi)
        }
        Partitioner::ByResidue(m) => LabeledWindow::by_residue(eval_window(s, lo, hi)?, *m),
        Partitioner::Single => Ok(LabeledWindow::single(eval_window(s, lo, hi)?, "all")),
    }
}

/// Partitions `s ∩ [lo, hi]` and runs the probe on every class.
pub fn ramsey_experiment(s: &SetDescriptor, partitioner: &Partitioner, lo: i64, hi: i64, probe: &Probe) -> Result<RamseyReport> {
    let lw = label(s, partitioner, lo, hi)?;
    let mut classes = Vec::with_capacity(lw.classes.len());
    for (c, name) in lw.classes.iter().enumerate() {
        let members = lw.class_window(c);
        let result = match probe {
            Probe::Triple(b) => ClassResult::Triple { outcome: class_triple(&lw, c, b) },
            Probe::Fs { d, budget } => match find_fs_witness(&members, *d, budget)? {
                Outcome::Found(w) => ClassResult::Fs { witness: Some(w), complete: true, nodes_expanded: 0 },
                Outcome::Exhausted(e) => ClassResult::Fs { witness: None, complete: e.is_complete(), nodes_expanded: e.nodes_expanded },
            },
        };
        classes.push(ClassReport { class: name.clone(), size: members.len(), result });
    }
    Ok(RamseyReport { lo, hi, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intset::SequenceSpec;

    #[test]
    fn parity_split_of_powers_of_two() {
        let s = SetDescriptor::Fs(SequenceSpec::Geometric { first: 1, ratio: 2, count: 6 });
        let probe = Probe::Fs { d: 2, budget: SearchBudget::window(1, 127) };
        let rep = ramsey_experiment(&s, &Partitioner::ByResidue(2), 1, 127, &probe).unwrap();
        let even = &rep.classes[0];
        assert_eq!(even.class, "r0");
        match &even.result {
            ClassResult::Fs { witness: Some(w), .. } => assert_eq!(w.n, vec![2, 4]),
            other => panic!("{other:?}"),
        }
        // odd + odd is even, so the odd class has no FS of length 2
        assert!(!rep.classes[1].result.has_witness());
    }

    #[test]
    fn parity_partition_is_witness_free() {
        let s = SetDescriptor::Sg { p: SequenceSpec::SuperLacunary { seed: 3, slack: 3, count: 7 }, d: 2 };
        let rep = ramsey_experiment(&s, &Partitioner::Sg2Parity, 1, 3i64.pow(8), &Probe::Triple(TripleBudget::default())).unwrap();
        assert_eq!(rep.classes.len(), 3);
        assert!(rep.witness_free());
        let single = ramsey_experiment(&s, &Partitioner::Single, 1, 3i64.pow(8), &Probe::Triple(TripleBudget::default())).unwrap();
        match &single.classes[0].result {
            ClassResult::Triple { outcome } => assert_eq!(outcome.found().unwrap().a, [3, 9, 27]),
            other => panic!("{other:?}"),
        }
    }
}
