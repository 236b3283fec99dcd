//! Count rooted unlabeled trees by size and list the small ones.

use weak_tree::enumerate::{enumerate_rooted_trees, trees_up_to};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let by_size = trees_up_to(10)?;
    for (n, group) in by_size.iter().enumerate().skip(1) {
        println!("{n:>2} vertices: {:>4} trees", group.len());
    }
    println!();
    for code in enumerate_rooted_trees(5)? {
        println!("{code}");
    }
    Ok(())
}
