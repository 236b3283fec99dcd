//! Build the full sequence, sample it, and audit it symbolically and against
//! explicit checks on its small members.

use weak_tree::construction::build_full_sequence;
use weak_tree::count::count;
use weak_tree::verifier::{cross_validate, verify_phases, verify_prefix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seq = build_full_sequence()?;
    println!("length {}", seq.total_length());
    for p in seq.phases() {
        println!("  positions {}..={}", p.start_position, p.end_position());
    }
    for pos in [
        1u64,
        9,
        10,
        91,
        92,
        93,
        422_212_465_065_979,
        844_424_930_131_960,
    ] {
        println!("  {pos:>15}  {}", seq.tree_at(&count(pos))?);
    }

    let prefix = verify_prefix(&seq, 91)?;
    println!(
        "prefix 1..=91: {} over {} pairs",
        prefix.verdict, prefix.checked_pairs
    );

    let symbolic = verify_phases(&seq);
    println!(
        "symbolic: {} over {} pairs",
        symbolic.verdict, symbolic.checked_pairs
    );
    for c in &symbolic.pair_classes {
        println!(
            "  {:<18} {:>5} segment pairs  {} violating",
            c.class, c.segment_pairs, c.violating_segment_pairs
        );
    }

    let cross = cross_validate(&seq, 60);
    println!(
        "cross-check up to 60 vertices: {} over {} pairs, {} disagreements",
        cross.verdict,
        cross.checked_pairs,
        cross.disagreements.len()
    );
    Ok(())
}
