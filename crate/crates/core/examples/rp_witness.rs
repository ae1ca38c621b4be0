//! The order-d regional proximality criterion on explicit systems: a
//! positive control, a separated pair and a Weyl fiber pair.

use num_rational::BigRational;
use reclab::systems::{torus_distance, SystemPoint, SystemSpec, TorusScalar};
use reclab::witness::{rp_witness, Outcome, SearchBudget};

fn show(label: &str, out: Outcome<reclab::witness::FSWitness>) {
    match out {
        Outcome::Found(w) => println!("{label}: n = {:?}, sums {:?}", w.n, w.verified_sums),
        Outcome::Exhausted(e) => println!("{label}: exhausted after {} nodes, complete = {}", e.nodes_expanded, e.is_complete()),
    }
}

fn main() -> reclab::Result<()> {
    let golden = SystemSpec::Rotation { alpha: TorusScalar::golden() };
    let o = golden.origin();
    show("golden, x = y = 0, ε = 3/20", rp_witness(&golden, &o, &o, 1, &BigRational::new(3.into(), 20.into()), &SearchBudget::window(1, 100))?);

    let half = SystemPoint::Circle(TorusScalar::rational(1, 2));
    println!("distance(0, 1/2) = {}", torus_distance(&golden, &o, &half)?.upper());
    show("golden, y = 1/2, ε = 1/10", rp_witness(&golden, &o, &half, 1, &BigRational::new(1.into(), 10.into()), &SearchBudget::window(1, 100_000))?);

    // same first coordinate, different fiber coordinate
    let weyl = SystemSpec::WeylAffine { d: 2, alpha: TorusScalar::sqrt2_minus_1() };
    let y = SystemPoint::Torus(vec![TorusScalar::zero(), TorusScalar::rational(1, 2)]);
    show("Weyl fiber, ε = 1/10", rp_witness(&weyl, &weyl.origin(), &y, 1, &BigRational::new(1.into(), 10.into()), &SearchBudget::window(1, 1_000_000))?);
    Ok(())
}
