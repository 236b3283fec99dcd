//! Parse a tree in any child order, print its canonical form and measures,
//! and render it as Graphviz DOT.
//!
//! cargo run --example parse_and_dot -- "((())(()()))"

use weak_tree::dot::to_dot;
use weak_tree::families::family_of;
use weak_tree::tree::RootedTree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "((()())(()))".to_owned());
    let tree = RootedTree::parse(&text)?;

    println!("input      {text}");
    println!("canonical  {}", tree.code());
    println!(
        "size {}  height {}  leaves {}  branching {}",
        tree.size(),
        tree.height(),
        tree.leaf_count(),
        tree.branching_count()
    );
    if let Some(family) = family_of(&tree) {
        println!("family     {family}");
    }
    print!("{}", to_dot(&tree));
    Ok(())
}
