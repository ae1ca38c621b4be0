//! Return-time sets N(x, U) of rotations, Weyl systems and cyclic
//! rotations, exact for rational data and guarded for irrational angles.

use num_rational::BigRational;
use reclab::systems::{return_set, Neighborhood, SystemPoint, SystemSpec, TorusScalar};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() -> reclab::Result<()> {
    let rot = SystemSpec::Rotation { alpha: TorusScalar::rational(2, 5) };
    let u = Neighborhood::ball(rot.origin(), r(3, 20))?;
    println!("rotation by 2/5: {:?}", return_set(&rot, &rot.origin(), &u, -20, 20)?.window.members());

    let weyl = SystemSpec::WeylAffine { d: 2, alpha: TorusScalar::rational(1, 4) };
    let u = Neighborhood::ball(weyl.origin(), r(1, 10))?;
    println!("Weyl d = 2, α = 1/4: {:?}", return_set(&weyl, &weyl.origin(), &u, 0, 64)?.window.members());

    let golden = SystemSpec::Rotation { alpha: TorusScalar::golden() };
    let u = Neighborhood::ball(golden.origin(), r(1, 20))?;
    let rs = return_set(&golden, &golden.origin(), &u, 1, 200)?;
    println!("golden rotation, ε = 1/20: {:?} (undecided: {:?})", rs.window.members(), rs.boundary);

    let cyc = SystemSpec::CyclicRotation { n: 6, k: 2 };
    let rs = return_set(&cyc, &SystemPoint::Residue(1), &Neighborhood::Subset(vec![1, 3]), 0, 12)?;
    println!("Z/6 by 2 from 1 into {{1, 3}}: {:?}", rs.window.members());
    Ok(())
}
