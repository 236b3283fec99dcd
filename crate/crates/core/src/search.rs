//! Exhaustive search for long bad sequences with small slack.
//!
//! A sequence is bad for slack `n` when the tree at step `k` has at most
//! `k + n` vertices and no tree inf-embeds into a later one. The search is a
//! depth-first walk over canonical trees: at each step sizes are tried from
//! largest to smallest, and codes in ascending order within one size.
//!
//! Which trees may still follow depends only on the step and on the
//! embedding-minimal members of the prefix, so completed subtrees are
//! memoized under that key.
//!
//! # Exhaustiveness
//!
//! A branch is cut when a non-terminal prefix would be extended at a step
//! whose budget exceeds the size cap, or when it reaches the step cap with a
//! legal extension. A prefix holding the single vertex is terminal: it embeds
//! into every tree. When nothing is cut, every bad sequence was explored
//! among trees the caps allow, and no bad sequence can use a tree outside
//! them: the first such tree would sit at a step whose budget exceeds the
//! size cap, after a prefix that was explored and found terminal. So the
//! length is exact. For slack 2 and size cap 7 this holds because every bad
//! sequence of length 5 ends with the single vertex; otherwise appending it
//! would give length 6 at budget 7.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::construction::SequenceRecord;
use crate::count::count;
use crate::embedding::inf_embeds;
use crate::enumerate::{trees_up_to, ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::families::TreeDescriptor;
use crate::tree::{CanonicalCode, RootedTree};

/// Largest slack accepted.
pub const MAX_SLACK: u64 = 3;

/// Step and size caps used when none are given.
pub fn default_caps(n: u64) -> (u64, u64) {
    if n <= 2 {
        (64, 7)
    } else {
        (12, 12)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: u64,
    pub length: u64,
    pub witness: Vec<CanonicalCode>,
    /// True iff no branch was cut by either cap, so `length` is exact.
    pub exhausted: bool,
    pub step_cap: u64,
    pub size_cap: u64,
    /// Prefixes expanded, memo hits excluded.
    pub nodes: u64,
}

impl SearchResult {
    /// The witness as export records; the label of step `k` is `k + n`.
    pub fn witness_records(&self) -> Result<Vec<SequenceRecord>> {
        self.witness
            .iter()
            .enumerate()
            .map(|(i, code)| {
                let k = i as u64 + 1;
                Ok(SequenceRecord {
                    position: count(k),
                    label: count(k + self.n),
                    descriptor: TreeDescriptor::Explicit(RootedTree::parse(code.as_str())?)
                        .normalized()
                        .into_owned(),
                })
            })
            .collect()
    }
}

/// Longest bad sequence with slack `n`, tree sizes at step `k` bounded by
/// `min(k + n, size_cap)` and at most `step_cap` steps.
///
/// Ties go to the lexicographically smallest witness. Once a witness of
/// length `step_cap` turns up the search stops, returns it, and reports
/// `exhausted = false`.
pub fn longest_bad_sequence(n: u64, step_cap: u64, size_cap: u64) -> Result<SearchResult> {
    if n > MAX_SLACK {
        return Err(Error::Input(format!(
            "slack must be at most {MAX_SLACK}, got {n}"
        )));
    }
    if step_cap == 0 || size_cap == 0 {
        return Err(Error::Input("step and size caps must be at least 1".into()));
    }
    let largest = size_cap.min(step_cap.saturating_add(n));
    if largest > ENUMERATION_CAP as u64 {
        return Err(Error::Capacity(format!(
            "steps would need trees with {largest} vertices; enumeration stops at {ENUMERATION_CAP}"
        )));
    }
    let by_size = trees_up_to(largest as usize)?;
    let mut search = Search::new(n, step_cap, size_cap, by_size);
    let outcome = search.visit(1, &[]);
    let exhausted = !outcome.cut && !search.stopped;
    let witness: Vec<CanonicalCode> = outcome
        .suffix
        .iter()
        .map(|&i| search.trees[i].canonical_code())
        .collect();
    Ok(SearchResult {
        n,
        length: witness.len() as u64,
        witness,
        exhausted,
        step_cap,
        size_cap,
        nodes: search.nodes,
    })
}

#[derive(Debug, Clone)]
struct Outcome {
    suffix: Vec<usize>,
    cut: bool,
}

struct Search {
    n: u64,
    step_cap: u64,
    size_cap: u64,
    /// All candidate trees; `first_of_size[s]` is the index of the first
    /// tree with `s` vertices.
    trees: Vec<RootedTree>,
    first_of_size: Vec<usize>,
    single_vertex: usize,
    embeds: HashMap<(usize, usize), bool>,
    memo: HashMap<(u64, Vec<usize>), Outcome>,
    nodes: u64,
    stopped: bool,
}

impl Search {
    fn new(n: u64, step_cap: u64, size_cap: u64, by_size: Vec<Vec<RootedTree>>) -> Self {
        let mut trees = Vec::new();
        let mut first_of_size = Vec::new();
        for group in by_size {
            first_of_size.push(trees.len());
            trees.extend(group);
        }
        first_of_size.push(trees.len());
        let single_vertex = first_of_size[1];
        Search {
            n,
            step_cap,
            size_cap,
            trees,
            first_of_size,
            single_vertex,
            embeds: HashMap::new(),
            memo: HashMap::new(),
            nodes: 0,
            stopped: false,
        }
    }

    fn embeds(&mut self, a: usize, b: usize) -> bool {
        let trees = &self.trees;
        *self
            .embeds
            .entry((a, b))
            .or_insert_with(|| inf_embeds(&trees[a], &trees[b]))
    }

    /// Best continuation at step `k` given the minimal prefix members.
    fn visit(&mut self, k: u64, minimal: &[usize]) -> Outcome {
        if minimal.contains(&self.single_vertex) {
            return Outcome {
                suffix: Vec::new(),
                cut: false,
            };
        }
        if k > self.step_cap {
            // The single vertex always extends a non-terminal prefix.
            return Outcome {
                suffix: Vec::new(),
                cut: true,
            };
        }
        let key = (k, minimal.to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        self.nodes += 1;
        let budget = k + self.n;
        let mut cut = budget > self.size_cap;
        let top = budget.min(self.size_cap) as usize;
        let mut best: Option<Vec<usize>> = None;

        'sizes: for size in (1..=top).rev() {
            for t in self.first_of_size[size]..self.first_of_size[size + 1] {
                if minimal.iter().any(|&s| self.embeds(s, t)) {
                    continue;
                }
                let mut next: Vec<usize> = minimal
                    .iter()
                    .copied()
                    .filter(|&s| !self.embeds(t, s))
                    .collect();
                next.push(t);
                next.sort_unstable();
                let child = self.visit(k + 1, &next);
                cut |= child.cut;
                let mut candidate = Vec::with_capacity(child.suffix.len() + 1);
                candidate.push(t);
                candidate.extend(child.suffix);
                if best.as_ref().is_none_or(|b| self.better(&candidate, b)) {
                    best = Some(candidate);
                }
                if self.stopped
                    || best
                        .as_ref()
                        .is_some_and(|b| b.len() as u64 + k - 1 == self.step_cap)
                {
                    self.stopped = true;
                    break 'sizes;
                }
            }
        }
        let outcome = Outcome {
            suffix: best.unwrap_or_default(),
            cut,
        };
        if !self.stopped {
            self.memo.insert(key, outcome.clone());
        }
        outcome
    }

    /// Longer wins; equal lengths compare codes lexicographically.
    fn better(&self, a: &[usize], b: &[usize]) -> bool {
        if a.len() != b.len() {
            return a.len() > b.len();
        }
        let code = |i: usize| self.trees[i].code();
        a.iter().map(|&i| code(i)).lt(b.iter().map(|&i| code(i)))
    }
}
