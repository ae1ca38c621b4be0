use num_rational::BigRational;

use super::budget::{Outcome, SearchBudget};
use super::fs::{find_fs_witness, FSWitness};
use crate::error::Result;
use crate::systems::{return_set, Neighborhood, SystemPoint, SystemSpec};

/// Searches `N(x, B(y, eps))` over the budget window for a finite IP set of
/// length `d + 1`. A witness certifies the order-`d` regional proximality
/// criterion at scale `eps`; exhaustion is only evidence against it.
pub fn rp_witness(
    sys: &SystemSpec,
    x: &SystemPoint,
    y: &SystemPoint,
    d: usize,
    eps: &BigRational,
    budget: &SearchBudget,
) -> Result<Outcome<FSWitness>> {
    let ball = Neighborhood::ball(y.clone(), eps.clone())?;
    let target = return_set(sys, x, &ball, budget.lo, budget.hi)?;
    find_fs_witness(&target.window, d + 1, budget)
}

/// Result of scanning candidate partners of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AaScan {
    /// Grid points other than `x` with a witness.
    pub witnesses: Vec<(SystemPoint, FSWitness)>,
    /// Number of grid points equal to `x`; they are skipped.
    pub skipped_self: usize,
    pub exhausted: usize,
}

/// Runs [`rp_witness`] against every grid point. An empty witness list is
/// consistent with `x` being d-step almost automorphic at this scale and
/// window; it is not a proof.
pub fn aa_scan(
    sys: &SystemSpec,
    x: &SystemPoint,
    d: usize,
    eps: &BigRational,
    grid: &[SystemPoint],
    budget: &SearchBudget,
) -> Result<AaScan> {
    let mut scan = AaScan { witnesses: Vec::new(), skipped_self: 0, exhausted: 0 };
    for y in grid {
        if y == x {
            scan.skipped_self += 1;
            continue;
        }
        match rp_witness(sys, x, y, d, eps, budget)? {
            Outcome::Found(w) => scan.witnesses.push((y.clone(), w)),
            Outcome::Exhausted(_) => scan.exhausted += 1,
        }
    }
    Ok(scan)
}
