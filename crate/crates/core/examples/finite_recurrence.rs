//! Order-d Poincaré and Birkhoff recurrence on Z/N with the uniform
//! measure.

use reclab::intset::{eval_window, SetDescriptor};
use reclab::systems::FiniteMeasureSystem;
use reclab::witness::{birkhoff_order_witness, poincare_order_witness, SearchBudget};

fn main() -> reclab::Result<()> {
    let p = eval_window(&SetDescriptor::Ap { modulus: 8, residue: 0 }, 1, 100)?;
    let budget = SearchBudget::window(1, 100);

    let fms = FiniteMeasureSystem::new(8, 1)?.with_set("A", [0]).with_set("U", [0, 1]);
    if let Some(w) = poincare_order_witness(&p, &fms, "A", 2, &budget)?.found() {
        println!("Poincaré d = 2: n = {:?}, μ = {}", w.witness.n, w.measure);
    }
    if let Some(w) = birkhoff_order_witness(&p, &fms, "U", 2, &budget)?.found() {
        println!("Birkhoff d = 2: n = {:?}, {} points return", w.witness.n, w.points);
    }

    let z2 = FiniteMeasureSystem::new(2, 1)?.with_set("A", [0]);
    let odd = eval_window(&SetDescriptor::Ap { modulus: 2, residue: 1 }, 1, 50)?;
    let out = poincare_order_witness(&odd, &z2, "A", 1, &SearchBudget::window(1, 50))?;
    println!("odd shifts on Z/2: exhausted = {}", out.is_exhausted());
    Ok(())
}
