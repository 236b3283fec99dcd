//! Graphviz export.

use std::fmt::Write;

use crate::tree::RootedTree;

/// Renders `t` as a DOT digraph: preorder node list (root first), edges from
/// parent to child, every vertex a small filled black circle.
pub fn to_dot(t: &RootedTree) -> String {
    let mut out = String::new();
    out.push_str("digraph tree {\n");
    out.push_str("  node [shape=circle, style=filled, fillcolor=black, color=black, label=\"\", width=0.15, fixedsize=true];\n");
    out.push_str("  edge [penwidth=2, arrowhead=none];\n");
    for v in t.vertices() {
        let _ = writeln!(out, "  n{};", v.0);
    }
    for v in t.vertices() {
        if let Some(p) = t.parent(v) {
            let _ = writeln!(out, "  n{} -> n{};", p.0, v.0);
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(dot: &str) -> (usize, usize) {
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        let nodes = dot
            .lines()
            .filter(|l| l.trim_start().starts_with('n') && !l.contains("->") && !l.contains('['))
            .count();
        (nodes, edges)
    }

    #[test]
    fn shapes() {
        let single = to_dot(&RootedTree::leaf());
        assert!(single.starts_with("digraph"));
        assert_eq!(counts(&single), (1, 0));

        let star = to_dot(&RootedTree::parse("(()()())").unwrap());
        assert_eq!(counts(&star), (4, 3));
        assert_eq!(star.lines().filter(|l| l.contains("n0 ->")).count(), 3);

        let chain = to_dot(&RootedTree::parse("((()))").unwrap());
        assert_eq!(counts(&chain), (3, 2));
        assert!(chain.contains("n0 -> n1;") && chain.contains("n1 -> n2;"));
        assert!(chain.contains("style=filled"));
    }
}
