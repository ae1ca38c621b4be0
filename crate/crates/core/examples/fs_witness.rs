use reclab::intset::{eval_window, SequenceSpec, SetDescriptor};
use reclab::witness::{find_fs_witness, Outcome, SearchBudget};

fn main() -> reclab::Result<()> {
    let multiples = eval_window(&SetDescriptor::Ap { modulus: 7, residue: 0 }, 1, 1000)?;
    match find_fs_witness(&multiples, 3, &SearchBudget::window(1, 1000))? {
        Outcome::Found(w) => println!("7Z: n = {:?}, sums {:?}", w.n, w.verified_sums),
        Outcome::Exhausted(e) => println!("7Z: nothing after {} nodes", e.nodes_expanded),
    }

    // an SG_1 set is holds FS sets of length 2 but none of length 3
    let sg1 = eval_window(&SetDescriptor::Sg { p: SequenceSpec::SuperLacunary { seed: 1, slack: 1, count: 8 }, d: 1 }, 1, 10_000)?;
    match find_fs_witness(&sg1, 3, &SearchBudget::window(1, 10_000))? {
        Outcome::Found(w) => println!("SG_1: n = {:?}", w.n),
        Outcome::Exhausted(e) => println!("SG_1: none in the window (complete: {})", e.is_complete()),
    }
    Ok(())
}
