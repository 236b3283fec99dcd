#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::Index;
use weak_tree::tree::RootedTree;

/// Parenthesis code of the tree with the given parent array (vertex 0 is the
/// root), listing children in the order given by `order` keys.
pub fn code_from_parents(parents: &[usize], order: &[u32]) -> String {
    let n = parents.len() + 1;
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate() {
        kids[p].push(i + 1);
    }
    for k in &mut kids {
        k.sort_by_key(|&c| order.get(c).copied().unwrap_or(0));
    }
    let mut out = String::with_capacity(2 * n);
    let mut stack = vec![(0usize, false)];
    while let Some((v, closing)) = stack.pop() {
        if closing {
            out.push(')');
            continue;
        }
        out.push('(');
        stack.push((v, true));
        for &c in kids[v].iter().rev() {
            stack.push((c, false));
        }
    }
    out
}

/// Parent arrays of trees with `1..=max` vertices.
pub fn parents(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<Index>(), 0..max).prop_map(|idx| {
        idx.iter()
            .enumerate()
            .map(|(i, x)| x.index(i + 1))
            .collect()
    })
}

pub fn tree(max: usize) -> impl Strategy<Value = RootedTree> {
    parents(max).prop_map(|p| RootedTree::parse(&code_from_parents(&p, &[])).unwrap())
}

pub fn t(code: &str) -> RootedTree {
    RootedTree::parse(code).unwrap()
}
