//! Exhaustive generation of rooted trees up to isomorphism.

use crate::error::{Error, Result};
use crate::tree::{CanonicalCode, RootedTree};

/// Largest vertex count accepted by [`enumerate_rooted_trees`].
pub const ENUMERATION_CAP: usize = 12;

/// One canonical code per isomorphism class of rooted trees with exactly `n`
/// vertices, in ascending code order.
pub fn enumerate_rooted_trees(n: usize) -> Result<Vec<CanonicalCode>> {
    check_size(n)?;
    let mut by_size = trees_up_to(n)?;
    Ok(by_size
        .swap_remove(n)
        .into_iter()
        .map(|t| t.canonical_code())
        .collect())
}

/// All trees with 1..=n vertices, grouped by size (index 0 is empty).
/// Each group is sorted by canonical code.
pub fn trees_up_to(n: usize) -> Result<Vec<Vec<RootedTree>>> {
    check_size(n)?;
    let mut by_size: Vec<Vec<RootedTree>> = vec![Vec::new(), vec![RootedTree::leaf()]];
    for size in 2..=n {
        let mut out = Vec::new();
        let mut forest = Vec::new();
        // Forests are multisets: pick members in non-increasing (size, index) order.
        extend(
            &by_size,
            size - 1,
            (size - 1, usize::MAX),
            &mut forest,
            &mut out,
        );
        out.sort();
        debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
        by_size.push(out);
    }
    by_size.truncate(n + 1);
    Ok(by_size)
}

fn extend<'a>(
    by_size: &'a [Vec<RootedTree>],
    remaining: usize,
    max: (usize, usize),
    forest: &mut Vec<&'a RootedTree>,
    out: &mut Vec<RootedTree>,
) {
    if remaining == 0 {
        out.push(RootedTree::from_children(forest.iter().copied()));
        return;
    }
    for size in (1..=remaining.min(max.0)).rev() {
        let group = &by_size[size];
        let limit = if size == max.0 {
            max.1.min(group.len() - 1)
        } else {
            group.len() - 1
        };
        for idx in (0..=limit).rev() {
            forest.push(&group[idx]);
            extend(by_size, remaining - size, (size, idx), forest, out);
            forest.pop();
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("trees have at least one vertex".into()));
    }
    if n > ENUMERATION_CAP {
        return Err(Error::Capacity(format!(
            "enumeration is capped at {ENUMERATION_CAP} vertices, got {n}"
        )));
    }
    Ok(())
}
