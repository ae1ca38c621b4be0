use reclab::intset::{eval_window, SetDescriptor};
use reclab::witness::{intersective_witness, Outcome, SearchBudget};

fn main() -> reclab::Result<()> {
    let p = eval_window(&SetDescriptor::Ap { modulus: 4, residue: 0 }, 1, 100)?;
    let f = eval_window(&SetDescriptor::Ap { modulus: 2, residue: 1 }, 1, 200)?;
    match intersective_witness(&p, &f, 2, &SearchBudget::window(1, 100))? {
        Outcome::Found(w) => println!("a = {:?}, n = {:?}, a + FS = {:?}", w.base, w.n, w.verified_sums.iter().map(|s| s + w.base.unwrap_or(0)).collect::<Vec<_>>()),
        Outcome::Exhausted(_) => println!("no witness"),
    }

    // odd entries give an even sum, which an odd F cannot absorb together with a
    let odd_p = eval_window(&SetDescriptor::Ap { modulus: 2, residue: 1 }, 1, 100)?;
    println!("odd P, odd F: exhausted = {}", intersective_witness(&odd_p, &f, 2, &SearchBudget::window(1, 100))?.is_exhausted());
    Ok(())
}
