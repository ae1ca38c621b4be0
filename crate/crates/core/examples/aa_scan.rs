//! Scanning fiber partners of the origin of a Weyl system. An empty list
//! at a given scale is evidence, not proof, of almost automorphy.

use num_rational::BigRational;
use reclab::systems::{SystemPoint, SystemSpec, TorusScalar};
use reclab::witness::{aa_scan, SearchBudget};

fn main() -> reclab::Result<()> {
    let sys = SystemSpec::WeylAffine { d: 2, alpha: TorusScalar::sqrt2_minus_1() };
    let grid: Vec<SystemPoint> = [1, 2, 3].iter().map(|&k| SystemPoint::Torus(vec![TorusScalar::zero(), TorusScalar::rational(k, 4)])).collect();
    let budget = SearchBudget::window(1, 2000).with_max_nodes(200_000);

    for d in [1, 2] {
        let eps = BigRational::new(1.into(), 40.into());
        let scan = aa_scan(&sys, &sys.origin(), d, &eps, &grid, &budget)?;
        println!("d = {d}: {} partners with witnesses, {} exhausted", scan.witnesses.len(), scan.exhausted);
        for (y, w) in &scan.witnesses {
            println!("  {y:?}: n = {:?}", w.n);
        }
    }
    Ok(())
}
