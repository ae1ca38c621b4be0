use num_rational::BigRational;
use reclab::systems::FiniteMeasureSystem;
use reclab::witness::{iterative_pair_selection, pigeonhole_select, SelectionOutcome};

fn main() -> reclab::Result<()> {
    let mut fms = FiniteMeasureSystem::new(10, 1)?;
    let names: Vec<String> = (0..10).map(|i| format!("E{i}")).collect();
    for (i, name) in names.iter().enumerate() {
        fms.add_set(name.clone(), (0..5).map(|v| v - i as i64));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    match pigeonhole_select(&fms, &refs, 2, &BigRational::new(1.into(), 20.into()))? {
        SelectionOutcome::Found(s) => println!("indices {:?}: μ = {} >= {}", s.indices, s.measure, s.bound),
        SelectionOutcome::Exhausted { nodes, .. } => println!("no pair after {nodes} nodes"),
    }

    let big = FiniteMeasureSystem::new(60, 1)?.with_set("A", 0..30);
    let rounds = vec![(1..=8).collect(), vec![2, 4, 6, 8, 10, 12], vec![5, 10, 15, 20]];
    for (j, round) in iterative_pair_selection(&big, "A", &rounds)?.rounds.iter().enumerate() {
        println!("round {j}: a = {}, shift {}, next μ = {}", round.a, round.shift_difference, round.next_measure);
    }
    Ok(())
}
