//! Partition experiments on integer sets: the parity split of `SG_2` over
//! a super-lacunary sequence, exhaustive search for monochromatic
//! triples, and generic per-class witness probes.

mod experiment;
mod partition;
mod representation;
mod triples;

pub use experiment::{label, ramsey_experiment, ClassReport, ClassResult, Partitioner, Probe, RamseyReport};
pub use partition::{definitional_labels, partition_sg2, partition_sg2_checked, LabeledWindow, SG2_CLASSES};
pub use representation::{brute_representations, make_super_lacunary, unique_representation, Representation, MAX_SUPER_LACUNARY_LEN};
pub use triples::{class_triple, find_monochromatic_triple, Triple, TripleBudget, TripleOutcome};
