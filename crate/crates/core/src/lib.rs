//! A desk-scale laboratory for recurrence sets of dynamical systems.
//!
//! * [`intset`] builds FS, SG_d, difference, progression and return-time
//!   sets over explicit integer windows.
//! * [`systems`] evaluates orbits of rotations, affine Weyl nilsystems,
//!   cyclic rotations, Sturmian subshifts and products, exactly or with
//!   guarded fixed-point arithmetic.
//! * [`witness`] searches for finite IP sets and related certificates.
//! * [`ramsey`] runs the SG_2 partition experiment on super-lacunary
//!   sequences.
//! * [`cli`] turns experiment configs into hashed, verifiable reports.
//!
//! Every search returns either a witness, which is a sound certificate, or
//! an exhaustion record, which only describes how much was searched.

pub mod bits;
pub mod cli;
pub mod error;
pub mod intset;
pub mod ramsey;
pub mod systems;
pub mod witness;

pub use error::{Error, Result};
