//! Inf-embedding queries with witnesses.
//!
//! The three-leaf star does not embed into a root carrying a leaf and a
//! cherry: two of the three leaves of the target meet below the root. The
//! cherry itself embeds in two places.

use weak_tree::embedding::{inf_embeds, inf_embeds_witness, inf_embeds_witness_at, root_images};
use weak_tree::tree::RootedTree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let star = RootedTree::parse("(()()())")?;
    let target = RootedTree::parse("(()(()()))")?;
    let cherry = RootedTree::parse("(()())")?;

    println!("{star} into {target}: {}", inf_embeds(&star, &target));
    println!("{target} into {star}: {}", inf_embeds(&target, &star));

    let images = root_images(&cherry, &target);
    println!("{cherry} into {target}: root can go to {images:?}");
    for v in images {
        let w = inf_embeds_witness_at(&cherry, &target, v).expect("listed image");
        w.check(&cherry, &target).expect("replays");
        println!("  root at {v}: {:?}", w.images());
    }

    let chain = RootedTree::parse("((()))")?;
    match inf_embeds_witness(&chain, &target) {
        Some(w) => println!("{chain} into {target}: {:?}", w.images()),
        None => println!("{chain} into {target}: none"),
    }
    Ok(())
}
