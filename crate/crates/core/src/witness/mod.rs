//! Witness searches: finite IP sets inside targets, the regional
//! proximality criterion on explicit systems, SG_d containment,
//! intersectivity, order-d recurrence on finite systems, pigeonhole
//! selection, cube sampling and almost-automorphy scans.
//!
//! All searches walk candidates in ascending order and return the first
//! witness in lexicographic order, so identical inputs give identical
//! results.

mod budget;
mod cube;
mod finite;
mod fs;
mod rp;

pub use budget::{EntryRegime, Exhaustion, Limit, Outcome, SearchBudget};
pub use cube::{cube_sample, dot, CubePoint};
pub use finite::{
    birkhoff_order_witness, birkhoff_order_witness_cyclic, iterative_pair_selection, pigeonhole_select, poincare_order_witness, FiniteWitness,
    IterativeRound, IterativeRun, Selection, SelectionOutcome,
};
pub use fs::{check_sg_containment, find_fs_witness, intersective_witness, subset_sums, FSWitness, SgContainment, WitnessFault};
pub use rp::{aa_scan, rp_witness, AaScan};

pub(crate) fn ser_rational<S: serde::Serializer>(r: &num_rational::BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::systems::rational_to_string(r))
}
