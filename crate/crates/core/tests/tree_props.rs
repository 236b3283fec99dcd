mod common;

use common::{code_from_parents, parents, t, tree};
use proptest::prelude::*;
use weak_tree::enumerate::{enumerate_rooted_trees, trees_up_to};
use weak_tree::tree::{lca, parse_tree, serialize_tree, RootedTree, VertexId};

/// Rooted unlabeled trees with n vertices (OEIS A000081), n = 1..=10.
const A000081: [usize; 10] = [1, 1, 2, 4, 9, 20, 48, 115, 286, 719];

#[test]
fn counts_match_a000081() {
    let by_size = trees_up_to(10).unwrap();
    for (n, &expected) in A000081.iter().enumerate() {
        assert_eq!(by_size[n + 1].len(), expected, "n = {}", n + 1);
    }
}

#[test]
fn enumeration_is_sorted_and_canonical() {
    for n in 1..=8 {
        let codes = enumerate_rooted_trees(n).unwrap();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        for c in &codes {
            assert_eq!(c.vertex_count(), n);
            assert_eq!(serialize_tree(&parse_tree(c.as_str()).unwrap()), *c);
        }
    }
}

/// Counts rooted trees by brute force: canonicalize every parent array.
#[test]
fn enumeration_matches_parent_arrays() {
    fn all(prefix: &mut Vec<usize>, n: usize, seen: &mut std::collections::BTreeSet<String>) {
        if prefix.len() + 1 == n {
            seen.insert(t(&code_from_parents(prefix, &[])).code().to_owned());
            return;
        }
        for p in 0..=prefix.len() {
            prefix.push(p);
            all(prefix, n, seen);
            prefix.pop();
        }
    }
    for n in 1..=7 {
        let mut seen = std::collections::BTreeSet::new();
        all(&mut Vec::new(), n, &mut seen);
        let listed: Vec<String> = enumerate_rooted_trees(n)
            .unwrap()
            .into_iter()
            .map(|c| c.into_string())
            .collect();
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), listed);
    }
}

#[test]
fn parse_errors_carry_offsets() {
    for (text, offset) in [("(()", 3), ("())", 2), ("()()", 2), ("(x)", 1)] {
        match RootedTree::parse(text) {
            Err(weak_tree::error::Error::Parse { offset: o, .. }) => {
                assert_eq!(o, offset, "{text}")
            }
            other => panic!("{text}: {other:?}"),
        }
    }
    assert_eq!(
        RootedTree::parse(""),
        Err(weak_tree::error::Error::EmptyTree)
    );
}

proptest! {
    #[test]
    fn canonical_code_ignores_child_order(p in parents(30), keys in prop::collection::vec(any::<u32>(), 30)) {
        let a = t(&code_from_parents(&p, &[]));
        let b = t(&code_from_parents(&p, &keys));
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.size(), p.len() + 1);
    }

    #[test]
    fn serialize_round_trips(x in tree(40)) {
        let again = parse_tree(serialize_tree(&x).as_str()).unwrap();
        prop_assert_eq!(serialize_tree(&again), serialize_tree(&x));
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<RootedTree>(&json).unwrap(), x);
    }

    #[test]
    fn lca_matches_parent_walk(x in tree(30), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (u, v) = (VertexId(a.index(x.size())), VertexId(b.index(x.size())));
        let ancestors = |mut w: VertexId| {
            let mut out = vec![w];
            while let Some(p) = x.parent(w) {
                out.push(p);
                w = p;
            }
            out
        };
        let au = ancestors(u);
        let expected = ancestors(v).into_iter().find(|w| au.contains(w)).unwrap();
        prop_assert_eq!(lca(&x, u, v).unwrap(), expected);
        prop_assert_eq!(x.is_ancestor(expected, u) && x.is_ancestor(expected, v), true);
    }

    #[test]
    fn measures_are_consistent(x in tree(40)) {
        let leaves = x.vertices().filter(|&v| x.is_leaf(v)).count();
        prop_assert_eq!(x.leaf_count(), leaves);
        prop_assert_eq!(x.leaf_depths().len(), leaves);
        prop_assert_eq!(x.height(), x.vertices().map(|v| x.depth(v) + 1).max().unwrap());
        let degree_sum: usize = x.vertices().map(|v| x.degree(v)).sum();
        prop_assert_eq!(degree_sum, x.size() - 1);
    }
}
