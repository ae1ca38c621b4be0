use num_rational::BigRational;
use reclab::intset::{SequenceSpec, SetDescriptor};
use reclab::systems::{Neighborhood, SystemSpec, TorusScalar};
use reclab::witness::check_sg_containment;

fn main() -> reclab::Result<()> {
    // every SG_2 sum of multiples of 5 returns under the rotation by 2/5
    let p = SequenceSpec::Explicit(vec![5, 10, 20, 40]);
    let sys = SystemSpec::Rotation { alpha: TorusScalar::rational(2, 5) };
    let target = SetDescriptor::ReturnSet {
        point: sys.origin(),
        neighborhood: Neighborhood::ball(sys.origin(), BigRational::new(3.into(), 20.into()))?,
        system: sys,
    };
    println!("{:?}", check_sg_containment(&p.generate()?, 2, &target, 1, 100)?);

    // SG_2(1, 2, 4) against the set {1, 2, 4, 6}: 3 = 1 + 2 is missing
    let q = SequenceSpec::Explicit(vec![1, 2, 4]).generate()?;
    let thin = SetDescriptor::Explicit(reclab::intset::IntegerWindow::spanning([1, 2, 4, 6]));
    println!("{:?}", check_sg_containment(&q, 2, &thin, 1, 10)?);
    Ok(())
}
