//! Literal semantics of inf-embedding, independent of the decision procedure.
//!
//! Ancestry and infima here are recomputed by walking parent pointers; the
//! preorder-interval machinery of [`RootedTree`] is deliberately not used.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{RootedTree, VertexId};

/// Largest source tree accepted by [`brute_force_inf_embeds`].
pub const BRUTE_FORCE_MAX_SOURCE: usize = 8;
/// Largest target tree accepted by [`brute_force_inf_embeds`].
pub const BRUTE_FORCE_MAX_TARGET: usize = 9;

/// First condition of the definition that a vertex map breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapViolation {
    /// Map is not defined on every source vertex, or names a vertex outside a tree.
    Malformed(String),
    NotInjective {
        u: VertexId,
        v: VertexId,
    },
    /// `v` is a descendant of `u` but `f(v)` is not a descendant of `f(u)`.
    Descendant {
        u: VertexId,
        v: VertexId,
    },
    /// `f(inf(u, v)) != inf(f(u), f(v))`.
    Infimum {
        u: VertexId,
        v: VertexId,
    },
}

struct Naive {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl Naive {
    fn new(t: &RootedTree) -> Self {
        let parent: Vec<Option<usize>> = t
            .vertices()
            .map(|v| t.parent(v).map(VertexId::index))
            .collect();
        let depth = (0..parent.len())
            .map(|mut v| {
                let mut d = 0;
                while let Some(p) = parent[v] {
                    v = p;
                    d += 1;
                }
                d
            })
            .collect();
        Naive { parent, depth }
    }

    /// `v` is a descendant of `u` (reflexive).
    fn descends(&self, v: usize, u: usize) -> bool {
        let mut w = Some(v);
        while let Some(x) = w {
            if x == u {
                return true;
            }
            w = self.parent[x];
        }
        false
    }

    fn inf(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].expect("deeper vertex has a parent");
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].expect("deeper vertex has a parent");
        }
        while u != v {
            u = self.parent[u].expect("distinct vertices below the root");
            v = self.parent[v].expect("distinct vertices below the root");
        }
        u
    }
}

/// Checks a candidate map `f` (indexed by source preorder id) against the
/// definition: injective, descendant-preserving and infimum-preserving.
pub fn check_inf_embedding(
    t1: &RootedTree,
    t2: &RootedTree,
    f: &[VertexId],
) -> Result<(), MapViolation> {
    if f.len() != t1.size() {
        return Err(MapViolation::Malformed(format!(
            "map covers {} of {} source vertices",
            f.len(),
            t1.size()
        )));
    }
    if let Some(bad) = f.iter().find(|v| !t2.contains(**v)) {
        return Err(MapViolation::Malformed(format!(
            "target vertex {bad} out of range"
        )));
    }
    let a = Naive::new(t1);
    let b = Naive::new(t2);
    let n = f.len();
    for u in 0..n {
        for v in 0..n {
            if u < v && f[u] == f[v] {
                return Err(MapViolation::NotInjective {
                    u: VertexId(u),
                    v: VertexId(v),
                });
            }
            if a.descends(v, u) && !b.descends(f[v].0, f[u].0) {
                return Err(MapViolation::Descendant {
                    u: VertexId(u),
                    v: VertexId(v),
                });
            }
            if f[a.inf(u, v)].0 != b.inf(f[u].0, f[v].0) {
                return Err(MapViolation::Infimum {
                    u: VertexId(u),
                    v: VertexId(v),
                });
            }
        }
    }
    Ok(())
}

/// Decides `t1 <= t2` by trying every injective vertex map.
///
/// Source vertices are assigned in preorder so both conditions can be tested
/// as soon as the vertices they mention are mapped; a partial map is abandoned
/// at its first failure. No structural lemma is used.
pub fn brute_force_inf_embeds(t1: &RootedTree, t2: &RootedTree) -> Result<bool> {
    if t1.size() > BRUTE_FORCE_MAX_SOURCE || t2.size() > BRUTE_FORCE_MAX_TARGET {
        return Err(Error::Capacity(format!(
            "brute force limited to {BRUTE_FORCE_MAX_SOURCE} -> {BRUTE_FORCE_MAX_TARGET} vertices, got {} -> {}",
            t1.size(),
            t2.size()
        )));
    }
    let search = BruteForce {
        a: Naive::new(t1),
        b: Naive::new(t2),
    };
    let mut f = Vec::with_capacity(t1.size());
    let mut used = vec![false; t2.size()];
    Ok(search.assign(&mut f, &mut used))
}

struct BruteForce {
    a: Naive,
    b: Naive,
}

impl BruteForce {
    fn assign(&self, f: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let x = f.len();
        if x == self.a.parent.len() {
            return true;
        }
        for y in 0..used.len() {
            if used[y] || !self.consistent(f, x, y) {
                continue;
            }
            used[y] = true;
            f.push(y);
            if self.assign(f, used) {
                return true;
            }
            f.pop();
            used[y] = false;
        }
        false
    }

    /// Conditions for every pair (z, x) with z already mapped and x -> y.
    fn consistent(&self, f: &[usize], x: usize, y: usize) -> bool {
        (0..f.len()).all(|z| {
            if self.a.descends(x, z) && !self.b.descends(y, f[z]) {
                return false;
            }
            if self.a.descends(z, x) && !self.b.descends(f[z], y) {
                return false;
            }
            let w = self.a.inf(x, z);
            let image = if w == x { y } else { f[w] };
            image == self.b.inf(y, f[z])
        })
    }
}
