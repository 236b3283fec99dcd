//! Symbolic tree families used by the construction: chains, two-leg trees
//! and small explicit trees, with closed-form measures and a closed-form
//! embedding predicate.
//!
//! The closed forms are checked against the explicit decision procedure on
//! a parameter grid (see the crate tests) before being used at parameters
//! far beyond what can be materialized.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::count::{to_usize, ExtendedCount};
use crate::embedding::{inf_embeds, necessary_conditions};
use crate::error::{Error, Result};
use crate::tree::{RootedTree, VertexId};

/// Default cap on vertices materialized by [`family_embeds`].
pub const DEFAULT_EXPANSION_LIMIT: usize = 1 << 16;

/// A stem path of `stem` vertices from the root whose last vertex carries
/// two chains of `left` and `right` vertices. Legs are unordered and stored
/// with `left >= right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoLeg {
    stem: ExtendedCount,
    left: ExtendedCount,
    right: ExtendedCount,
}

impl TwoLeg {
    pub fn new(stem: ExtendedCount, a: ExtendedCount, b: ExtendedCount) -> Result<Self> {
        if stem.is_zero() || a.is_zero() || b.is_zero() {
            return Err(Error::Input(format!(
                "two-leg parameters must be positive, got stem={stem} legs=({a}, {b})"
            )));
        }
        let (left, right) = if a >= b { (a, b) } else { (b, a) };
        Ok(TwoLeg { stem, left, right })
    }

    pub fn stem(&self) -> &ExtendedCount {
        &self.stem
    }

    /// The longer leg.
    pub fn left(&self) -> &ExtendedCount {
        &self.left
    }

    /// The shorter leg.
    pub fn right(&self) -> &ExtendedCount {
        &self.right
    }

    pub fn size(&self) -> ExtendedCount {
        &self.stem + &self.left + &self.right
    }

    pub fn height(&self) -> ExtendedCount {
        &self.stem + &self.left
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeDescriptor {
    Explicit(RootedTree),
    Chain(ExtendedCount),
    TwoLeg(TwoLeg),
}

impl TreeDescriptor {
    pub fn chain(len: impl Into<ExtendedCount>) -> Result<Self> {
        let len = len.into();
        if len.is_zero() {
            return Err(Error::Input("chain length must be at least 1".into()));
        }
        Ok(TreeDescriptor::Chain(len))
    }

    pub fn two_leg(
        stem: impl Into<ExtendedCount>,
        left: impl Into<ExtendedCount>,
        right: impl Into<ExtendedCount>,
    ) -> Result<Self> {
        TwoLeg::new(stem.into(), left.into(), right.into()).map(TreeDescriptor::TwoLeg)
    }

    pub fn explicit(tree: RootedTree) -> Self {
        TreeDescriptor::Explicit(tree)
    }

    /// Rewrites an explicit chain or two-leg tree into its family form.
    pub fn normalized(&self) -> Cow<'_, TreeDescriptor> {
        match self {
            TreeDescriptor::Explicit(t) => match family_of(t) {
                Some(d) => Cow::Owned(d),
                None => Cow::Borrowed(self),
            },
            _ => Cow::Borrowed(self),
        }
    }
}

/// Recognizes chains (one leaf) and two-leg trees (two leaves).
pub fn family_of(t: &RootedTree) -> Option<TreeDescriptor> {
    match t.leaf_count() {
        1 => Some(TreeDescriptor::Chain(BigUint::from(t.size()))),
        2 => {
            let mut v = t.root();
            let mut stem = 1usize;
            loop {
                let kids: Vec<VertexId> = t.children(v).collect();
                match kids.len() {
                    1 => {
                        v = kids[0];
                        stem += 1;
                    }
                    2 => {
                        let (a, b) = (t.subtree_size(kids[0]), t.subtree_size(kids[1]));
                        return TreeDescriptor::two_leg(stem, a, b).ok();
                    }
                    _ => unreachable!("a two-leaf tree branches exactly once into two chains"),
                }
            }
        }
        _ => None,
    }
}

pub fn desc_size(d: &TreeDescriptor) -> ExtendedCount {
    match d {
        TreeDescriptor::Explicit(t) => BigUint::from(t.size()),
        TreeDescriptor::Chain(n) => n.clone(),
        TreeDescriptor::TwoLeg(t) => t.size(),
    }
}

pub fn desc_height(d: &TreeDescriptor) -> ExtendedCount {
    match d {
        TreeDescriptor::Explicit(t) => BigUint::from(t.height()),
        TreeDescriptor::Chain(n) => n.clone(),
        TreeDescriptor::TwoLeg(t) => t.height(),
    }
}

pub fn desc_leaf_count(d: &TreeDescriptor) -> ExtendedCount {
    match d {
        TreeDescriptor::Explicit(t) => BigUint::from(t.leaf_count()),
        TreeDescriptor::Chain(_) => BigUint::one(),
        TreeDescriptor::TwoLeg(_) => BigUint::from(2u8),
    }
}

/// Materializes `d`, refusing anything above `limit` vertices.
pub fn expand(d: &TreeDescriptor, limit: usize) -> Result<RootedTree> {
    let size = desc_size(d);
    let n = to_usize(&size)
        .filter(|&n| n <= limit)
        .ok_or_else(|| Error::Capacity(format!("{d} has {size} vertices, limit is {limit}")))?;
    let chain = |len: usize| format!("{}{}", "(".repeat(len), ")".repeat(len));
    match d {
        TreeDescriptor::Explicit(t) => Ok(t.clone()),
        TreeDescriptor::Chain(_) => RootedTree::parse(&chain(n)),
        TreeDescriptor::TwoLeg(t) => {
            // All three parameters are bounded by `n` here.
            let stem = to_usize(&t.stem).expect("bounded by size");
            let left = to_usize(&t.left).expect("bounded by size");
            let right = to_usize(&t.right).expect("bounded by size");
            let code = format!(
                "{}{}{}{}",
                "(".repeat(stem),
                chain(left),
                chain(right),
                ")".repeat(stem)
            );
            RootedTree::parse(&code)
        }
    }
}

/// Closed-form inf-embedding between descriptors, with the default expansion limit.
pub fn family_embeds(d1: &TreeDescriptor, d2: &TreeDescriptor) -> Result<bool> {
    family_embeds_with_limit(d1, d2, DEFAULT_EXPANSION_LIMIT)
}

/// Closed-form inf-embedding between descriptors.
///
/// * chain `a` into chain `b`: `a <= b`;
/// * chain `a` into two-leg `(s, l, r)`: `a <= s + max(l, r)`;
/// * two-leg into chain: never (two leaves cannot land on one root path);
/// * two-leg into two-leg: the branch vertex must land on the branch vertex,
///   so stems compare and legs compare sorted;
/// * an explicit tree with three or more leaves never embeds into a chain or
///   two-leg tree; explicit targets are decided by bounded expansion.
pub fn family_embeds_with_limit(
    d1: &TreeDescriptor,
    d2: &TreeDescriptor,
    limit: usize,
) -> Result<bool> {
    use TreeDescriptor::*;
    let (a, b) = (d1.normalized(), d2.normalized());
    Ok(match (a.as_ref(), b.as_ref()) {
        (Chain(x), Chain(y)) => x <= y,
        (Chain(x), TwoLeg(t)) => *x <= t.height(),
        (TwoLeg(_), Chain(_)) => false,
        (TwoLeg(p), TwoLeg(q)) => p.stem <= q.stem && p.right <= q.right && p.left <= q.left,
        // Normalized explicit trees have at least three leaves.
        (Explicit(_), Chain(_) | TwoLeg(_)) => false,
        (source @ (Chain(_) | TwoLeg(_)), Explicit(t)) => {
            if desc_size(source) > BigUint::from(t.size())
                || desc_height(source) > BigUint::from(t.height())
            {
                false
            } else {
                inf_embeds(&expand(source, limit)?, t)
            }
        }
        (Explicit(s), Explicit(t)) => {
            if !necessary_conditions(s, t) {
                false
            } else if s.size() > limit || t.size() > limit {
                return Err(Error::Capacity(format!(
                    "explicit pair of {} and {} vertices exceeds limit {limit}",
                    s.size(),
                    t.size()
                )));
            } else {
                inf_embeds(s, t)
            }
        }
    })
}

impl fmt::Display for TreeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeDescriptor::Explicit(t) => write!(f, "explicit:{}", t.code()),
            TreeDescriptor::Chain(n) => write!(f, "chain:{n}"),
            TreeDescriptor::TwoLeg(t) => write!(f, "twoleg:{}:{}:{}", t.stem, t.left, t.right),
        }
    }
}

impl FromStr for TreeDescriptor {
    type Err = Error;

    /// Accepts `chain:<n>`, `twoleg:<s>:<l>:<r>` and `explicit:<code>`.
    fn from_str(s: &str) -> Result<Self> {
        let number = |text: &str, offset: usize| -> Result<ExtendedCount> {
            if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(
                    offset,
                    format!("expected a decimal number, got {text:?}"),
                ));
            }
            Ok(text.parse().expect("digits only"))
        };
        if let Some(code) = s.strip_prefix("explicit:") {
            return RootedTree::parse(code)
                .map(TreeDescriptor::Explicit)
                .map_err(|e| match e {
                    Error::Parse { offset, message } => Error::Parse {
                        offset: offset + "explicit:".len(),
                        message,
                    },
                    other => other,
                });
        }
        if let Some(rest) = s.strip_prefix("chain:") {
            return TreeDescriptor::chain(number(rest, "chain:".len())?);
        }
        if let Some(rest) = s.strip_prefix("twoleg:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::parse(
                    "twoleg:".len(),
                    "expected three colon-separated numbers",
                ));
            }
            let mut offset = "twoleg:".len();
            let mut values = Vec::with_capacity(3);
            for p in parts {
                values.push(number(p, offset)?);
                offset += p.len() + 1;
            }
            let [s, l, r]: [ExtendedCount; 3] = values.try_into().expect("three values");
            return TreeDescriptor::two_leg(s, l, r);
        }
        Err(Error::parse(0, format!("unknown descriptor syntax {s:?}")))
    }
}

impl Serialize for TreeDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TreeDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> TreeDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn expansions() {
        assert_eq!(expand(&d("chain:3"), 10).unwrap().code(), "((()))");
        let tree12 = expand(&d("twoleg:2:5:5"), 100).unwrap();
        assert_eq!(tree12.size(), 12);
        assert_eq!(tree12.leaf_count(), 2);
        assert_eq!(tree12.height(), 7);
        assert_eq!(expand(&d("twoleg:1:1:1"), 10).unwrap().code(), "(()())");
        assert!(matches!(
            expand(&d("chain:1000000000000"), 1000),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn measures() {
        assert_eq!(desc_size(&d("twoleg:1:46:46")), BigUint::from(93u32));
        assert_eq!(desc_size(&d("chain:17")), BigUint::from(17u32));
        assert_eq!(desc_leaf_count(&d("chain:17")), BigUint::one());
        // expand-and-measure value: stem 2 plus the longer leg 7
        let t = expand(&d("twoleg:2:7:4"), 100).unwrap();
        assert_eq!(t.height(), 9);
        assert_eq!(desc_height(&d("twoleg:2:7:4")), BigUint::from(9u32));
    }

    #[test]
    fn closed_form_examples() {
        assert!(!family_embeds(&d("twoleg:2:4:1"), &d("twoleg:2:3:1")).unwrap());
        assert!(family_embeds(&d("chain:5"), &d("twoleg:1:46:46")).unwrap());
        let huge = d("twoleg:1000000000000:1000000000000:1000000000000");
        assert!(!family_embeds(&d("explicit:(()()())"), &huge).unwrap());
        assert!(family_embeds(&d("chain:3"), &d("explicit:(((((())()))))")).unwrap());
    }

    #[test]
    fn explicit_oversized_pair_is_a_capacity_error() {
        let t = d("explicit:((()()())(()()()))");
        assert!(matches!(
            family_embeds_with_limit(&t, &t, 4),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn syntax() {
        assert_eq!(d("twoleg:3:1:4").to_string(), "twoleg:3:4:1");
        assert_eq!(d("explicit:((())())").to_string(), "explicit:(()(()))");
        for bad in [
            "chain:0",
            "chain:",
            "chain:-1",
            "twoleg:1:2",
            "twoleg:0:1:1",
            "tree:3",
            "explicit:(()",
        ] {
            assert!(bad.parse::<TreeDescriptor>().is_err(), "{bad}");
        }
        assert!(matches!(
            "twoleg:1:x:2".parse::<TreeDescriptor>(),
            Err(Error::Parse { offset: 9, .. })
        ));
    }

    #[test]
    fn recognizes_families() {
        let t = RootedTree::parse("((((()))(())))").unwrap();
        assert_eq!(family_of(&t), Some(d("twoleg:2:3:2")));
        assert_eq!(family_of(&RootedTree::leaf()), Some(d("chain:1")));
        assert_eq!(family_of(&RootedTree::parse("(()()())").unwrap()), None);
    }
}
