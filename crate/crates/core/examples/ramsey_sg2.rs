//! SG_2 over the powers of 3, split into B0/B1/B2 by index parity: no
//! class holds a triple with all pairwise sums, while the whole set does.

use std::time::Instant;

use reclab::intset::SequenceSpec;
use reclab::ramsey::{class_triple, find_monochromatic_triple, make_super_lacunary, partition_sg2, LabeledWindow, TripleBudget};

fn main() -> reclab::Result<()> {
    let p = make_super_lacunary(3, 3, 12)?;
    let SequenceSpec::Explicit(ref terms) = p else { unreachable!() };
    println!("P = {terms:?}");
    let p = p.generate()?;
    let hi = 3i64.pow(13);

    let start = Instant::now();
    let lw = partition_sg2(&p, 1, hi)?;
    for c in 0..lw.classes.len() {
        let out = class_triple(&lw, c, &TripleBudget::default());
        println!("{}: {} members, {:?}", lw.classes[c], lw.class_window(c).len(), out);
    }
    let all = LabeledWindow::single(lw.window.clone(), "SG_2");
    println!("unpartitioned: {:?}", find_monochromatic_triple(&all, &TripleBudget::default()));
    println!("elapsed {:?}", start.elapsed());
    Ok(())
}
