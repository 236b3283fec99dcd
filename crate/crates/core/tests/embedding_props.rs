mod common;

use common::{t, tree};
use proptest::prelude::*;
use weak_tree::embedding::{
    brute_force_inf_embeds, check_inf_embedding, inf_embeds, inf_embeds_witness,
    necessary_conditions, root_images, MapViolation,
};
use weak_tree::tree::{RootedTree, VertexId};

/// `x` with the leaf at preorder position `leaf` removed.
fn drop_leaf(x: &RootedTree, leaf: VertexId) -> Option<RootedTree> {
    if x.size() == 1 {
        return None;
    }
    let code = x.code();
    // A leaf is the "()" starting at its preorder bracket.
    let start = code
        .char_indices()
        .filter(|&(_, c)| c == '(')
        .nth(leaf.0)
        .map(|(i, _)| i)?;
    let mut s = code.to_owned();
    s.replace_range(start..start + 2, "");
    Some(t(&s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn agrees_with_brute_force(a in tree(8), b in tree(9)) {
        prop_assert_eq!(inf_embeds(&a, &b), brute_force_inf_embeds(&a, &b).unwrap());
    }

    #[test]
    fn witnesses_replay(a in tree(12), b in tree(20)) {
        match inf_embeds_witness(&a, &b) {
            Some(w) => {
                prop_assert!(inf_embeds(&a, &b));
                prop_assert_eq!(w.check(&a, &b), Ok(()));
            }
            None => prop_assert!(!inf_embeds(&a, &b)),
        }
    }

    #[test]
    fn reflexive(a in tree(30)) {
        prop_assert!(inf_embeds(&a, &a));
        let w = inf_embeds_witness(&a, &a).unwrap();
        prop_assert_eq!(w.check(&a, &a), Ok(()));
    }

    #[test]
    fn transitive(a in tree(6), b in tree(6), c in tree(6)) {
        if inf_embeds(&a, &b) && inf_embeds(&b, &c) {
            prop_assert!(inf_embeds(&a, &c));
        }
    }

    #[test]
    fn necessary_conditions_hold(a in tree(15), b in tree(20)) {
        if inf_embeds(&a, &b) {
            prop_assert!(necessary_conditions(&a, &b));
            prop_assert!(a.leaf_count() <= b.leaf_count());
            prop_assert!(a.branching_count() <= b.branching_count());
        }
    }

    #[test]
    fn removing_a_leaf_gives_a_smaller_tree(a in tree(25), pick in any::<prop::sample::Index>()) {
        let leaves: Vec<VertexId> = a.vertices().filter(|&v| a.is_leaf(v)).collect();
        let leaf = leaves[pick.index(leaves.len())];
        if let Some(smaller) = drop_leaf(&a, leaf) {
            prop_assert!(inf_embeds(&smaller, &a));
            prop_assert!(!inf_embeds(&a, &smaller));
        }
    }

    #[test]
    fn root_images_are_witnessed(a in tree(7), b in tree(12)) {
        let images = root_images(&a, &b);
        prop_assert_eq!(images.is_empty(), !inf_embeds(&a, &b));
        for v in images {
            let w = weak_tree::embedding::inf_embeds_witness_at(&a, &b, v).unwrap();
            prop_assert_eq!(w.images()[0], v);
            prop_assert_eq!(w.check(&a, &b), Ok(()));
        }
    }
}

#[test]
fn checker_rejects_tampered_witness() {
    let (a, b) = (t("(()())"), t("(()(()()))"));
    let mut images = inf_embeds_witness(&a, &b).unwrap().images();
    images.swap(0, 1);
    assert!(check_inf_embedding(&a, &b, &images).is_err());
    assert!(matches!(
        check_inf_embedding(&a, &b, &[VertexId(0)]),
        Err(MapViolation::Malformed(_))
    ));
}
