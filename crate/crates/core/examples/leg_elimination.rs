//! The greedy leg-elimination process: sweep table, step counts and the
//! closed form.
//!
//! cargo run --example leg_elimination -- <stem> <depth> <label>

use weak_tree::construction::{l_formula, simulate_leg_elimination, LegSimState};
use weak_tree::count::count;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let (stem, depth, label) = match args[..] {
        [s, d, b] => (s, d, b),
        _ => (0, 5, 10),
    };
    let sim = simulate_leg_elimination(&LegSimState::new(label, stem, depth, depth)?)?;
    println!("from ({depth}, {depth}) stem {stem} at label {label}");
    println!("depth  from  extended  steps  to");
    for s in &sim.sweeps {
        println!(
            "{:>5} {:>5} {:>9} {:>6} {:>3}",
            s.from_depth, s.from_label, s.extended_left, s.steps, s.to_label
        );
    }
    println!(
        "{} steps, final state at label {}",
        sim.step_count, sim.final_state.label
    );

    println!();
    for x in [1u64, 2, 3, 4, 10, 46] {
        println!("L({x}) = {}", l_formula(&count(x))?);
    }
    Ok(())
}
