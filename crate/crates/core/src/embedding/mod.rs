//! The inf-embedding order on rooted trees.
//!
//! An inf-embedding that sends `u` to `v` must send the children of `u` into
//! pairwise distinct child subtrees of `v`: two children of `u` have infimum
//! `u`, so their images must have infimum `v`. Conversely any such placement
//! of the children, each recursively embedded inside its assigned child
//! subtree, extends to an inf-embedding. That gives a dynamic program over
//! vertex pairs in which each cell is a bipartite matching problem between
//! children.

mod matching;
mod oracle;

use serde::{Deserialize, Serialize};

pub use oracle::{
    brute_force_inf_embeds, check_inf_embedding, MapViolation, BRUTE_FORCE_MAX_SOURCE,
    BRUTE_FORCE_MAX_TARGET,
};

use crate::tree::{RootedTree, VertexId};
use matching::Matcher;

/// An inf-embedding given as one `(source, target)` pair per source vertex,
/// sorted by source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub mapping: Vec<(VertexId, VertexId)>,
}

impl EmbeddingWitness {
    /// Image of every source vertex, indexed by source preorder id.
    pub fn images(&self) -> Vec<VertexId> {
        self.mapping.iter().map(|&(_, t)| t).collect()
    }

    /// Replays the witness against the literal definition.
    pub fn check(&self, t1: &RootedTree, t2: &RootedTree) -> Result<(), MapViolation> {
        if self.mapping.iter().enumerate().any(|(i, &(s, _))| s.0 != i) {
            return Err(MapViolation::Malformed(
                "mapping is not indexed by source vertex".into(),
            ));
        }
        check_inf_embedding(t1, t2, &self.images())
    }
}

/// Cheap necessary conditions for `t1 <= t2` on the whole trees.
///
/// An embedding never decreases depth. Images of distinct leaves are
/// pairwise incomparable, so they sit above distinct leaves of `t2`: leaves
/// inject into leaves at least as deep. Two children of a branching vertex
/// have it as infimum, so its image branches too: branching vertices inject
/// into branching vertices at least as deep. Either injection exists iff the
/// depth lists, sorted descending, dominate entrywise.
pub fn necessary_conditions(t1: &RootedTree, t2: &RootedTree) -> bool {
    t1.size() <= t2.size()
        && t1.height() <= t2.height()
        && dominated(t1.leaf_depths(), t2.leaf_depths())
        && dominated(t1.branching_depths(), t2.branching_depths())
}

fn dominated(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// True iff `t1` inf-embeds into `t2`.
pub fn inf_embeds(t1: &RootedTree, t2: &RootedTree) -> bool {
    if !necessary_conditions(t1, t2) {
        return false;
    }
    Table::build(t1, t2).root_image().is_some()
}

/// A witness for `t1 <= t2` when one exists. Ties are broken towards the
/// smallest target preorder id.
pub fn inf_embeds_witness(t1: &RootedTree, t2: &RootedTree) -> Option<EmbeddingWitness> {
    if !necessary_conditions(t1, t2) {
        return None;
    }
    Table::build(t1, t2).witness()
}

/// Every vertex of `t2` the root of `t1` can be sent to, in preorder.
pub fn root_images(t1: &RootedTree, t2: &RootedTree) -> Vec<VertexId> {
    if !necessary_conditions(t1, t2) {
        return Vec::new();
    }
    let table = Table::build(t1, t2);
    (0..t2.size())
        .filter(|&v| table.fixed[v])
        .map(VertexId)
        .collect()
}

/// A witness sending the root of `t1` to `root_image`, if one exists.
pub fn inf_embeds_witness_at(
    t1: &RootedTree,
    t2: &RootedTree,
    root_image: VertexId,
) -> Option<EmbeddingWitness> {
    if !t2.contains(root_image) || !necessary_conditions(t1, t2) {
        return None;
    }
    let table = Table::build(t1, t2);
    table.fixed[root_image.0].then(|| table.witness_from(root_image.0))
}

/// `fixed[u][v]`: the subtree of `u` embeds with `u` sent to `v`.
/// `inside[u][v]`: it embeds with `u` sent somewhere in the subtree of `v`.
struct Table<'a> {
    t1: &'a RootedTree,
    t2: &'a RootedTree,
    fixed: Vec<bool>,
    inside: Vec<bool>,
}

impl<'a> Table<'a> {
    fn build(t1: &'a RootedTree, t2: &'a RootedTree) -> Self {
        let (n1, n2) = (t1.size(), t2.size());
        let mut fixed = vec![false; n1 * n2];
        let mut inside = vec![false; n1 * n2];
        let mut matcher = Matcher::default();
        let kids2: Vec<Vec<usize>> = t2
            .vertices()
            .map(|v| t2.children(v).map(VertexId::index).collect())
            .collect();
        let mut kids1 = Vec::new();

        for u in (0..n1).rev() {
            let uid = VertexId(u);
            let row = u * n2;
            if t1.is_leaf(uid) {
                fixed[row..row + n2].fill(true);
                inside[row..row + n2].fill(true);
                continue;
            }
            kids1.clear();
            kids1.extend(t1.children(uid).map(VertexId::index));
            for v in (0..n2).rev() {
                let vid = VertexId(v);
                let targets = &kids2[v];
                let plausible = targets.len() >= kids1.len()
                    && t1.subtree_size(uid) <= t2.subtree_size(vid)
                    && t1.subtree_height(uid) <= t2.subtree_height(vid)
                    && t1.subtree_leaves(uid) <= t2.subtree_leaves(vid)
                    && t1.subtree_branching(uid) <= t2.subtree_branching(vid);
                let here = plausible && {
                    let adj = |i: usize, j: usize| inside[kids1[i] * n2 + targets[j]];
                    if kids1.len() == 1 {
                        (0..targets.len()).any(|j| adj(0, j))
                    } else {
                        matcher.exists(kids1.len(), targets.len(), adj)
                    }
                };
                fixed[row + v] = here;
                inside[row + v] = here || targets.iter().any(|&w| inside[row + w]);
            }
        }
        Table {
            t1,
            t2,
            fixed,
            inside,
        }
    }

    fn n2(&self) -> usize {
        self.t2.size()
    }

    fn root_image(&self) -> Option<usize> {
        (0..self.n2()).find(|&v| self.fixed[v])
    }

    fn witness(&self) -> Option<EmbeddingWitness> {
        Some(self.witness_from(self.root_image()?))
    }

    fn witness_from(&self, root: usize) -> EmbeddingWitness {
        let n2 = self.n2();
        let mut images = vec![usize::MAX; self.t1.size()];
        let mut stack = vec![(0usize, root)];
        let mut matcher = Matcher::default();
        while let Some((u, v)) = stack.pop() {
            images[u] = v;
            let kids1: Vec<usize> = self.t1.children(VertexId(u)).map(VertexId::index).collect();
            if kids1.is_empty() {
                continue;
            }
            let kids2: Vec<usize> = self.t2.children(VertexId(v)).map(VertexId::index).collect();
            let partner = matcher
                .saturate(kids1.len(), kids2.len(), |i, j| {
                    self.inside[kids1[i] * n2 + kids2[j]]
                })
                .expect("cell was computed as embeddable");
            for (i, &c) in kids1.iter().enumerate() {
                let top = kids2[partner[i]];
                let end = self.t2.subtree_end(VertexId(top));
                let w = (top..end)
                    .find(|&w| self.fixed[c * n2 + w])
                    .expect("inside flag implies a fixed placement below");
                stack.push((c, w));
            }
        }
        EmbeddingWitness {
            mapping: images
                .into_iter()
                .enumerate()
                .map(|(s, t)| (VertexId(s), VertexId(t)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RootedTree {
        RootedTree::parse(s).unwrap()
    }

    #[test]
    fn single_vertex_embeds_everywhere() {
        for code in ["()", "(())", "(()()())", "(()(()()))"] {
            assert!(inf_embeds(&RootedTree::leaf(), &t(code)));
        }
    }

    #[test]
    fn star_does_not_embed_into_leaf_plus_cherry() {
        assert!(!inf_embeds(&t("(()()())"), &t("(()(()()))")));
    }

    #[test]
    fn chain_heights() {
        assert!(!inf_embeds(&t("(((())))"), &t("((()))")));
        assert!(inf_embeds(&t("((()))"), &t("(((())))")));
    }

    #[test]
    fn same_counts_different_shape() {
        // Same size, height and leaf count, but the two branch points sit differently.
        let a = t("((()())(()))");
        let b = t("(((()()))())");
        assert_eq!(inf_embeds(&a, &b), brute_force_inf_embeds(&a, &b).unwrap());
        assert_eq!(inf_embeds(&b, &a), brute_force_inf_embeds(&b, &a).unwrap());
    }

    #[test]
    fn witnesses_replay() {
        let t2 = t("(()(()()))");
        let cherry = t("(()())");
        let w = inf_embeds_witness(&cherry, &t2).unwrap();
        w.check(&cherry, &t2).unwrap();

        let chain2 = t("(())");
        let chain5 = t("((((()))))");
        let w = inf_embeds_witness(&chain2, &chain5).unwrap();
        w.check(&chain2, &chain5).unwrap();
        assert_eq!(
            w.mapping,
            vec![(VertexId(0), VertexId(0)), (VertexId(1), VertexId(1))]
        );

        assert!(inf_embeds_witness(&t("(()()())"), &t2).is_none());
    }

    #[test]
    fn cherry_root_images() {
        // Preorder of t2: 0 root, 1 leaf, 2 branch point, 3 and 4 its leaves.
        let t2 = t("(()(()()))");
        let cherry = t("(()())");
        assert_eq!(root_images(&cherry, &t2), vec![VertexId(0), VertexId(2)]);
        let w = inf_embeds_witness_at(&cherry, &t2, VertexId(2)).unwrap();
        w.check(&cherry, &t2).unwrap();
        let mut images = w.images();
        assert_eq!(images[0], VertexId(2));
        images.sort();
        assert_eq!(images, vec![VertexId(2), VertexId(3), VertexId(4)]);
        assert!(inf_embeds_witness_at(&cherry, &t2, VertexId(1)).is_none());
        assert!(root_images(&t("(()()())"), &t2).is_empty());
    }
}
