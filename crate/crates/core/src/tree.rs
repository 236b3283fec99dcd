//! Unordered rooted trees in canonical form.
//!
//! A [`RootedTree`] is stored as flat arrays over its vertices in preorder of
//! the canonical child order. Vertex `v`'s subtree is the preorder interval
//! `v..end(v)`, so ancestor tests are two comparisons and children can be
//! walked without a per-vertex child list.
//!
//! The text format is a balanced-parenthesis string with one `(`/`)` pair per
//! vertex. Children are ordered by descending (byte-wise) canonical code,
//! which makes the code of a tree a complete isomorphism invariant.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const NO_PARENT: usize = usize::MAX;

/// Preorder position of a vertex inside one specific tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Canonical balanced-parenthesis serialization of an isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Number of vertices encoded.
    pub fn vertex_count(&self) -> usize {
        self.0.len() / 2
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Raw preorder layout of a parenthesis string, in input child order.
struct Layout {
    parent: Vec<usize>,
    end: Vec<usize>,
}

impl Layout {
    fn scan(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        if bytes.is_empty() {
            return Err(Error::EmptyTree);
        }
        let mut parent = Vec::with_capacity(bytes.len() / 2);
        let mut end = Vec::with_capacity(bytes.len() / 2);
        let mut stack: Vec<usize> = Vec::new();
        for (offset, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => {
                    if stack.is_empty() && !parent.is_empty() {
                        return Err(Error::parse(offset, "input encodes more than one root"));
                    }
                    let id = parent.len();
                    parent.push(stack.last().copied().unwrap_or(NO_PARENT));
                    end.push(0);
                    stack.push(id);
                }
                b')' => {
                    let id = stack
                        .pop()
                        .ok_or_else(|| Error::parse(offset, "unmatched ')'"))?;
                    end[id] = parent.len();
                }
                other => {
                    return Err(Error::parse(
                        offset,
                        format!("unexpected byte {:?}, expected '(' or ')'", other as char),
                    ))
                }
            }
        }
        if !stack.is_empty() {
            return Err(Error::parse(bytes.len(), "unclosed '('"));
        }
        Ok(Layout { parent, end })
    }

    fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let end = self.end[v];
        std::iter::successors((v + 1 < end).then_some(v + 1), move |&c| {
            let next = self.end[c];
            (next < end).then_some(next)
        })
    }

    /// Canonical code of the whole tree.
    ///
    /// Unary vertices only count wrappers, so chains cost linear time; only
    /// branching vertices materialize and sort their children's codes.
    fn canonical_code(&self) -> String {
        struct Part {
            wraps: usize,
            core: String,
        }
        impl Part {
            fn into_string(self) -> String {
                if self.wraps == 0 {
                    return self.core;
                }
                let mut s = String::with_capacity(self.core.len() + 2 * self.wraps);
                s.extend(std::iter::repeat_n('(', self.wraps));
                s.push_str(&self.core);
                s.extend(std::iter::repeat_n(')', self.wraps));
                s
            }
        }

        let n = self.parent.len();
        let mut parts: Vec<Option<Part>> = (0..n).map(|_| None).collect();
        let mut kids = Vec::new();
        for v in (0..n).rev() {
            kids.clear();
            kids.extend(self.children(v));
            let part = match kids.len() {
                0 => Part {
                    wraps: 0,
                    core: "()".to_owned(),
                },
                1 => {
                    let mut p = parts[kids[0]].take().expect("child visited first");
                    p.wraps += 1;
                    p
                }
                _ => {
                    let mut codes: Vec<String> = kids
                        .iter()
                        .map(|&c| parts[c].take().expect("child visited first").into_string())
                        .collect();
                    codes.sort_unstable_by(|a, b| b.cmp(a));
                    let len = codes.iter().map(String::len).sum::<usize>() + 2;
                    let mut core = String::with_capacity(len);
                    core.push('(');
                    codes.iter().for_each(|c| core.push_str(c));
                    core.push(')');
                    Part { wraps: 0, core }
                }
            };
            parts[v] = Some(part);
        }
        parts[0].take().expect("nonempty").into_string()
    }
}

/// An immutable unordered rooted tree in canonical child order.
#[derive(Clone)]
pub struct RootedTree {
    code: String,
    parent: Vec<usize>,
    end: Vec<usize>,
    depth: Vec<usize>,
    sub_height: Vec<usize>,
    sub_leaves: Vec<usize>,
    sub_branching: Vec<usize>,
    leaf_depths: Vec<usize>,
    branching_depths: Vec<usize>,
}

impl RootedTree {
    /// Parses a balanced-parenthesis string and canonicalizes it.
    pub fn parse(text: &str) -> Result<Self> {
        let layout = Layout::scan(text)?;
        Ok(Self::from_canonical(layout.canonical_code()))
    }

    /// The single-vertex tree.
    pub fn leaf() -> Self {
        Self::from_canonical("()".to_owned())
    }

    /// A root whose children are the given subtrees.
    pub fn from_children<'a>(children: impl IntoIterator<Item = &'a RootedTree>) -> Self {
        let mut codes: Vec<&str> = children.into_iter().map(|c| c.code.as_str()).collect();
        codes.sort_unstable_by(|a, b| b.cmp(a));
        let mut code = String::with_capacity(codes.iter().map(|c| c.len()).sum::<usize>() + 2);
        code.push('(');
        codes.iter().for_each(|c| code.push_str(c));
        code.push(')');
        Self::from_canonical(code)
    }

    /// Builds the flat arrays from a code already known to be canonical.
    fn from_canonical(code: String) -> Self {
        let layout = Layout::scan(&code).expect("canonical code is well formed");
        let Layout { parent, end } = layout;
        let n = parent.len();
        let mut depth = vec![0; n];
        for v in 1..n {
            depth[v] = depth[parent[v]] + 1;
        }
        let mut sub_height = vec![1; n];
        let mut sub_leaves = vec![0; n];
        let mut sub_branching = vec![0; n];
        let mut degree = vec![0usize; n];
        for v in (0..n).rev() {
            if end[v] == v + 1 {
                sub_leaves[v] += 1;
            }
            if degree[v] >= 2 {
                sub_branching[v] += 1;
            }
            if v > 0 {
                let p = parent[v];
                degree[p] += 1;
                sub_height[p] = sub_height[p].max(sub_height[v] + 1);
                sub_leaves[p] += sub_leaves[v];
                sub_branching[p] += sub_branching[v];
            }
        }
        let profile = |keep: &dyn Fn(usize) -> bool| {
            let mut d: Vec<usize> = (0..n).filter(|&v| keep(v)).map(|v| depth[v]).collect();
            d.sort_unstable_by(|a, b| b.cmp(a));
            d
        };
        let leaf_depths = profile(&|v| end[v] == v + 1);
        let branching_depths = profile(&|v| degree[v] >= 2);
        RootedTree {
            code,
            parent,
            end,
            depth,
            sub_height,
            sub_leaves,
            sub_branching,
            leaf_depths,
            branching_depths,
        }
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        CanonicalCode(self.code.clone())
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    /// Vertices on a longest root-to-leaf path.
    pub fn height(&self) -> usize {
        self.sub_height[0]
    }

    pub fn leaf_count(&self) -> usize {
        self.sub_leaves[0]
    }

    /// Vertices with at least two children.
    pub fn branching_count(&self) -> usize {
        self.sub_branching[0]
    }

    /// Depths of all leaves, largest first.
    pub fn leaf_depths(&self) -> &[usize] {
        &self.leaf_depths
    }

    /// Depths of all vertices with at least two children, largest first.
    pub fn branching_depths(&self) -> &[usize] {
        &self.branching_depths
    }

    pub fn root(&self) -> VertexId {
        VertexId(0)
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.size()).map(VertexId)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.size()
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "vertex {} out of range for a tree with {} vertices",
                v.0,
                self.size()
            )))
        }
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        match self.parent[v.0] {
            NO_PARENT => None,
            p => Some(VertexId(p)),
        }
    }

    pub fn children(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let end = self.end[v.0];
        std::iter::successors((v.0 + 1 < end).then_some(v.0 + 1), move |&c| {
            let next = self.end[c];
            (next < end).then_some(next)
        })
        .map(VertexId)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.children(v).count()
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        self.end[v.0] == v.0 + 1
    }

    /// Edges from the root to `v`.
    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v.0]
    }

    /// One past the last preorder index of `v`'s subtree.
    pub fn subtree_end(&self, v: VertexId) -> usize {
        self.end[v.0]
    }

    pub fn subtree_size(&self, v: VertexId) -> usize {
        self.end[v.0] - v.0
    }

    pub fn subtree_height(&self, v: VertexId) -> usize {
        self.sub_height[v.0]
    }

    pub fn subtree_leaves(&self, v: VertexId) -> usize {
        self.sub_leaves[v.0]
    }

    pub fn subtree_branching(&self, v: VertexId) -> usize {
        self.sub_branching[v.0]
    }

    /// True when `u` lies on the root path of `v` (every vertex is its own ancestor).
    pub fn is_ancestor(&self, u: VertexId, v: VertexId) -> bool {
        u.0 <= v.0 && v.0 < self.end[u.0]
    }

    /// Least common ancestor (infimum) of `u` and `v`.
    pub fn lca(&self, u: VertexId, v: VertexId) -> Result<VertexId> {
        self.check(u)?;
        self.check(v)?;
        let mut w = u;
        while !self.is_ancestor(w, v) {
            w = VertexId(self.parent[w.0]);
        }
        Ok(w)
    }
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for RootedTree {}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootedTree({})", self.code)
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

impl FromStr for RootedTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for RootedTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.code)
    }
}

impl<'de> Deserialize<'de> for RootedTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        RootedTree::parse(&s).map_err(serde::de::Error::custom)
    }
}

pub fn parse_tree(text: &str) -> Result<RootedTree> {
    RootedTree::parse(text)
}

pub fn serialize_tree(t: &RootedTree) -> CanonicalCode {
    t.canonical_code()
}

pub fn lca(t: &RootedTree, u: VertexId, v: VertexId) -> Result<VertexId> {
    t.lca(u, v)
}

pub fn leaf_count(t: &RootedTree) -> usize {
    t.leaf_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RootedTree {
        RootedTree::parse(s).unwrap()
    }

    #[test]
    fn parses_small_trees() {
        assert_eq!(t("()").size(), 1);
        let star = t("(()()())");
        assert_eq!(star.size(), 4);
        assert_eq!(star.leaf_count(), 3);
        assert_eq!(star.height(), 2);
        assert_eq!(t("((())())"), t("(()(()))"));
        assert_eq!(t("((())())").code(), "(()(()))");
    }

    #[test]
    fn serializes_canonically() {
        assert_eq!(serialize_tree(&t("()")).as_str(), "()");
        assert_eq!(serialize_tree(&t("((()))")).as_str(), "((()))");
        let a = t("(()(()()))");
        let b = t("((()())())");
        assert_eq!(serialize_tree(&a), serialize_tree(&b));
        assert_eq!(a.code(), "(()(()()))");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(RootedTree::parse(""), Err(Error::EmptyTree));
        assert!(matches!(
            RootedTree::parse("(()"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            RootedTree::parse("())"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            RootedTree::parse("()()"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            RootedTree::parse("( )"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            RootedTree::parse(")"),
            Err(Error::Parse { offset: 0, .. })
        ));
    }

    #[test]
    fn lca_cases() {
        let star = t("(()()())");
        let leaves: Vec<_> = star.children(star.root()).collect();
        assert_eq!(star.lca(leaves[0], leaves[1]).unwrap(), star.root());
        assert_eq!(star.lca(leaves[2], leaves[2]).unwrap(), leaves[2]);

        // r' -> { y, x -> { p, q } }
        let t2 = t("(()(()()))");
        let kids: Vec<_> = t2.children(t2.root()).collect();
        let x = kids.into_iter().find(|&c| !t2.is_leaf(c)).unwrap();
        let pq: Vec<_> = t2.children(x).collect();
        assert_eq!(t2.lca(pq[0], pq[1]).unwrap(), x);
        assert_ne!(x, t2.root());

        assert!(matches!(
            star.lca(VertexId(4), VertexId(0)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn measures() {
        let chain = t("(((())))");
        assert_eq!(
            (chain.size(), chain.height(), chain.leaf_count()),
            (4, 4, 1)
        );
        assert_eq!(chain.branching_count(), 0);
        let t2 = t("(()(()()))");
        assert_eq!(t2.branching_count(), 2);
        assert_eq!(t2.height(), 3);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let n = 200_000;
        let code = format!("{}{}", "(".repeat(n), ")".repeat(n));
        let chain = t(&code);
        assert_eq!(chain.height(), n);
        assert_eq!(chain.leaf_count(), 1);
    }
}
