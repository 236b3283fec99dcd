//! The arithmetic behind the length of the lower-bound sequence, and the
//! simulated length of the restart sweep for both candidate leg lengths.

use weak_tree::construction::{bound_derivation, restart_audit};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = bound_derivation();
    println!("{}", serde_json::to_string_pretty(&d)?);
    println!();
    for a in restart_audit()? {
        let verdict = if a.simulated_steps == a.formula_steps {
            "matches"
        } else {
            "differs from"
        };
        println!(
            "legs {} (size {}): {} steps, {verdict} the closed form; sequence length {}",
            a.leg, a.size, a.simulated_steps, a.implied_bound
        );
    }
    Ok(())
}
