//! FS, SG_d and difference sets over a window, with the two density
//! diagnostics.

use reclab::intset::{banach_density_upper, eval_window, generate_fs, generate_sg, syndetic_gap, SequenceSpec, SetDescriptor};

fn main() -> reclab::Result<()> {
    let p = SequenceSpec::Explicit(vec![1, 2, 4, 8]).generate()?;
    println!("FS(1,2,4,8)   = {:?}", generate_fs(&p)?.members());
    for d in 1..=3 {
        println!("SG_{d}(1,2,4,8) = {:?}", generate_sg(&p, d)?.members());
    }

    let sg1 = SetDescriptor::Sg { p: SequenceSpec::Explicit(vec![1, 3, 9, 27]), d: 1 };
    let delta = eval_window(&SetDescriptor::Delta(Box::new(sg1)), 0, 40)?;
    println!("Δ(SG_1(1,3,9,27)) on [0, 40] = {:?}", delta.members());

    let odd = eval_window(&SetDescriptor::Ap { modulus: 2, residue: 1 }, 0, 1000)?;
    println!("odd numbers on [0, 1000]: gap {:?}, upper density {}", syndetic_gap(&odd), banach_density_upper(&odd, 100)?);
    Ok(())
}
