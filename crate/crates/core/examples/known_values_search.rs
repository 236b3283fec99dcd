//! Longest bad sequences for slack 0, 1 and 2, and a capped run for slack 3.

use weak_tree::search::{default_caps, longest_bad_sequence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 0..=3 {
        let (steps, sizes) = default_caps(n);
        let r = longest_bad_sequence(n, steps, sizes)?;
        let status = if r.exhausted { "exact" } else { "lower bound" };
        println!(
            "n = {n}: length {} ({status}; step cap {}, size cap {})",
            r.length, r.step_cap, r.size_cap
        );
        for rec in r.witness_records()? {
            println!("  {rec}");
        }
    }
    Ok(())
}
