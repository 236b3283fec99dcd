//! Auditing a sequence against the two weak-tree conditions: the tree at
//! position `k` has at most `k + n` vertices, and no tree inf-embeds into a
//! later one.
//!
//! Three modes share one report type:
//!
//! * explicit: every pair of materialized trees goes through [`crate::embedding::inf_embeds`];
//! * symbolic: a [`SequenceDescription`] is cut into closed-form segments and
//!   every ordered pair of segments is decided by a family-level rule, so the
//!   cost depends on the number of segments only;
//! * mixed: both paths run on the positions small enough to materialize and
//!   their per-pair verdicts are compared.
//!
//! The symbolic rules rest on three facts. Within a leg run the right leg is
//! fixed and the left leg strictly drops, so the earlier longer leg cannot
//! fit. A tree with two leaves never embeds into a chain, and one with three
//! leaves never embeds into either family. Removing a vertex from a leg or
//! chain gives a tree that embeds into the original, so within a segment
//! "embeds into a fixed target" is monotone in the offset.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::{Segment, SegmentKind, SequenceDescription};
use crate::count::{count, decimal, ExtendedCount};
use crate::embedding::{inf_embeds_witness, EmbeddingWitness};
use crate::error::Result;
use crate::families::{desc_size, expand, family_embeds, TreeDescriptor, DEFAULT_EXPANSION_LIMIT};
use crate::tree::RootedTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Explicit,
    Symbolic,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Invalid,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Valid => "valid",
            Verdict::Invalid => "invalid",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetViolation {
    #[serde(with = "decimal")]
    pub position: ExtendedCount,
    #[serde(with = "decimal")]
    pub size: ExtendedCount,
    #[serde(with = "decimal")]
    pub budget: ExtendedCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// A replayable inf-embedding of the earlier tree into the later one.
    Witness(EmbeddingWitness),
    /// The segment pair class whose rule fired.
    Class(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingViolation {
    #[serde(with = "decimal")]
    pub earlier: ExtendedCount,
    #[serde(with = "decimal")]
    pub later: ExtendedCount,
    pub evidence: Evidence,
}

/// Tally of one pair class in a symbolic run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassSummary {
    pub class: String,
    pub segment_pairs: u64,
    #[serde(with = "decimal")]
    pub position_pairs: ExtendedCount,
    pub violating_segment_pairs: u64,
}

/// A segment pair no rule could settle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InconclusiveClass {
    pub class: String,
    #[serde(with = "decimal")]
    pub earlier_start: ExtendedCount,
    #[serde(with = "decimal")]
    pub later_start: ExtendedCount,
    pub reason: String,
}

/// A covered pair on which the explicit and symbolic paths disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    #[serde(with = "decimal")]
    pub earlier: ExtendedCount,
    #[serde(with = "decimal")]
    pub later: ExtendedCount,
    pub explicit: bool,
    pub symbolic: bool,
}

/// Outcome of a verification run. Violation lists are sorted by position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mode: Mode,
    pub verdict: Verdict,
    #[serde(with = "decimal")]
    pub checked_pairs: ExtendedCount,
    pub budget_violations: Vec<BudgetViolation>,
    pub embedding_violations: Vec<EmbeddingViolation>,
    pub pair_classes: Vec<PairClassSummary>,
    pub inconclusive_classes: Vec<InconclusiveClass>,
    pub disagreements: Vec<Disagreement>,
}

impl VerificationReport {
    fn finish(mut self) -> Self {
        self.budget_violations
            .sort_by(|a, b| a.position.cmp(&b.position));
        self.embedding_violations
            .sort_by(|a, b| (&a.earlier, &a.later).cmp(&(&b.earlier, &b.later)));
        self.verdict = if !self.inconclusive_classes.is_empty() || !self.disagreements.is_empty() {
            Verdict::Inconclusive
        } else if self.budget_violations.is_empty() && self.embedding_violations.is_empty() {
            Verdict::Valid
        } else {
            Verdict::Invalid
        };
        self
    }

    fn empty(mode: Mode) -> Self {
        VerificationReport {
            mode,
            verdict: Verdict::Valid,
            checked_pairs: BigUint::zero(),
            budget_violations: Vec::new(),
            embedding_violations: Vec::new(),
            pair_classes: Vec::new(),
            inconclusive_classes: Vec::new(),
            disagreements: Vec::new(),
        }
    }
}

/// Checks `trees[k-1]` has at most `k + n` vertices and that no tree embeds
/// into a later one. Pairs are checked in parallel; every embedding comes
/// with a witness.
pub fn verify_explicit_sequence(trees: &[RootedTree], n: u64) -> VerificationReport {
    let positions: Vec<ExtendedCount> = (1..=trees.len() as u64).map(count).collect();
    explicit_report(trees, &positions, n)
}

fn explicit_report(
    trees: &[RootedTree],
    positions: &[ExtendedCount],
    n: u64,
) -> VerificationReport {
    let mut report = VerificationReport::empty(Mode::Explicit);
    for (t, p) in trees.iter().zip(positions) {
        let budget = p + n;
        if BigUint::from(t.size()) > budget {
            report.budget_violations.push(BudgetViolation {
                position: p.clone(),
                size: BigUint::from(t.size()),
                budget,
            });
        }
    }
    report.embedding_violations = (0..trees.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..trees.len()).filter_map(move |j| {
                inf_embeds_witness(&trees[i], &trees[j]).map(|w| EmbeddingViolation {
                    earlier: positions[i].clone(),
                    later: positions[j].clone(),
                    evidence: Evidence::Witness(w),
                })
            })
        })
        .collect();
    let m = trees.len() as u64;
    report.checked_pairs = count(m * m.saturating_sub(1) / 2);
    report.finish()
}

/// Materializes positions `1..=len` of `seq` and checks them explicitly with
/// the sequence's own label offset as `n`.
pub fn verify_prefix(seq: &SequenceDescription, len: u64) -> Result<VerificationReport> {
    let to = count(len);
    let trees = seq
        .records(&BigUint::one(), &to, None)?
        .iter()
        .map(|r| expand(&r.descriptor, DEFAULT_EXPANSION_LIMIT))
        .collect::<Result<Vec<_>>>()?;
    Ok(verify_explicit_sequence(
        &trees,
        u64::from(seq.label_offset()),
    ))
}

/// What a class rule says about one ordered segment pair.
enum Finding {
    Clear,
    /// The lexicographically smallest embedding pair, as offsets.
    Embeds {
        earlier: ExtendedCount,
        later: ExtendedCount,
        witness: Option<EmbeddingWitness>,
    },
    Unresolved(String),
}

fn kind_name(k: &SegmentKind) -> &'static str {
    match k {
        SegmentKind::Explicit(_) => "explicit",
        SegmentKind::LegRun { .. } => "leg_run",
        SegmentKind::ChainRun { .. } => "chain",
    }
}

fn class_name(a: &Segment, b: Option<&Segment>) -> String {
    match b {
        None => format!("{}/self", kind_name(&a.kind)),
        Some(b) => format!("{}/{}", kind_name(&a.kind), kind_name(&b.kind)),
    }
}

fn sat_sub(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b {
        a - b
    } else {
        BigUint::zero()
    }
}

/// Decides whether some member of `a` embeds into some member of `b`, where
/// every position of `a` precedes every position of `b`.
fn decide_cross(a: &Segment, b: &Segment) -> Finding {
    use SegmentKind::*;
    let last = &a.len - 1u32;
    match (&a.kind, &b.kind) {
        (
            LegRun {
                stem: sa,
                right: ra,
                left_start: la,
            },
            LegRun {
                stem: sb,
                right: rb,
                left_start: lb,
            },
        ) => {
            // TwoLeg(s, l, r) <= TwoLeg(s', l', r') iff s <= s', l <= l', r <= r';
            // the smallest left leg of `a` against the largest of `b`.
            if sa <= sb && ra <= rb && &(la - &last) <= lb {
                Finding::Embeds {
                    earlier: sat_sub(la, lb),
                    later: BigUint::zero(),
                    witness: None,
                }
            } else {
                Finding::Clear
            }
        }
        (
            ChainRun { len_start: ca },
            LegRun {
                stem: sb,
                left_start: lb,
                ..
            },
        ) => {
            let height = sb + lb;
            if (ca - &last) <= height {
                Finding::Embeds {
                    earlier: sat_sub(ca, &height),
                    later: BigUint::zero(),
                    witness: None,
                }
            } else {
                Finding::Clear
            }
        }
        (ChainRun { len_start: ca }, ChainRun { len_start: cb }) => {
            if &(ca - &last) <= cb {
                Finding::Embeds {
                    earlier: sat_sub(ca, cb),
                    later: BigUint::zero(),
                    witness: None,
                }
            } else {
                Finding::Clear
            }
        }
        (LegRun { .. }, ChainRun { .. }) => Finding::Clear,
        (Explicit(t), LegRun { .. } | ChainRun { .. }) => {
            if t.leaf_count() >= 3 {
                Finding::Clear
            } else {
                Finding::Unresolved(format!("explicit tree {t} has fewer than three leaves"))
            }
        }
        (LegRun { .. } | ChainRun { .. }, Explicit(t)) => first_embedding_into(a, t),
        (Explicit(s), Explicit(t)) => match inf_embeds_witness(s, t) {
            Some(w) => Finding::Embeds {
                earlier: BigUint::zero(),
                later: BigUint::zero(),
                witness: Some(w),
            },
            None => Finding::Clear,
        },
    }
}

/// Smallest offset of `a` whose member embeds into `t`. Members shrink with
/// the offset, so the predicate is monotone and a binary search suffices.
fn first_embedding_into(a: &Segment, t: &RootedTree) -> Finding {
    let embeds =
        |off: &BigUint| family_embeds(&a.descriptor_at(off), &TreeDescriptor::Explicit(t.clone()));
    let last = &a.len - 1u32;
    match embeds(&last) {
        Err(e) => return Finding::Unresolved(e.to_string()),
        Ok(false) => return Finding::Clear,
        Ok(true) => {}
    }
    // Skip members too large to fit, without materializing them.
    let size0 = desc_size(&a.descriptor_at(&BigUint::zero()));
    let mut lo = sat_sub(&size0, &BigUint::from(t.size())).min(last.clone());
    let mut hi = last;
    while lo < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        match embeds(&mid) {
            Err(e) => return Finding::Unresolved(e.to_string()),
            Ok(true) => hi = mid,
            Ok(false) => lo = mid + 1u32,
        }
    }
    let source = match expand(&a.descriptor_at(&lo), DEFAULT_EXPANSION_LIMIT) {
        Ok(s) => s,
        Err(e) => return Finding::Unresolved(e.to_string()),
    };
    Finding::Embeds {
        witness: inf_embeds_witness(&source, t),
        earlier: lo,
        later: BigUint::zero(),
    }
}

fn pairs_within(len: &BigUint) -> BigUint {
    if len.is_zero() {
        return BigUint::zero();
    }
    len * (len - 1u32) / 2u32
}

/// Symbolic verification of the whole description: one rule application
/// per ordered pair of segments, plus one budget check per segment.
///
/// Budgets: within a segment sizes never grow while labels increase by one
/// per position, so the first member is the binding one.
pub fn verify_phases(seq: &SequenceDescription) -> VerificationReport {
    let segments = seq.segments();
    let mut report = VerificationReport::empty(Mode::Symbolic);
    let mut classes: BTreeMap<String, PairClassSummary> = BTreeMap::new();
    let mut tally = |class: String, pairs: BigUint, violating: bool| {
        let entry = classes
            .entry(class.clone())
            .or_insert_with(|| PairClassSummary {
                class,
                segment_pairs: 0,
                position_pairs: BigUint::zero(),
                violating_segment_pairs: 0,
            });
        entry.segment_pairs += 1;
        entry.position_pairs += pairs;
        entry.violating_segment_pairs += u64::from(violating);
    };

    for seg in &segments {
        let size = desc_size(&seg.descriptor_at(&BigUint::zero()));
        let budget = seq.label_of(&seg.start);
        if size > budget {
            report.budget_violations.push(BudgetViolation {
                position: seg.start.clone(),
                size,
                budget,
            });
        }
        // Runs strictly shrink, so members within one segment never embed forward.
        if seg.len > BigUint::one() {
            tally(class_name(seg, None), pairs_within(&seg.len), false);
        }
    }

    let findings: Vec<(usize, usize, Finding)> = (0..segments.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let segments = &segments;
            (i + 1..segments.len()).map(move |j| (i, j, decide_cross(&segments[i], &segments[j])))
        })
        .collect();

    for (i, j, finding) in findings {
        let (a, b) = (&segments[i], &segments[j]);
        let class = class_name(a, Some(b));
        let pairs = &a.len * &b.len;
        match finding {
            Finding::Clear => tally(class, pairs, false),
            Finding::Embeds {
                earlier,
                later,
                witness,
            } => {
                let evidence = match witness {
                    Some(w) => Evidence::Witness(w),
                    None => Evidence::Class(format!(
                        "{class} [{}..={}] -> [{}..={}]",
                        a.start,
                        a.end(),
                        b.start,
                        b.end()
                    )),
                };
                report.embedding_violations.push(EmbeddingViolation {
                    earlier: &a.start + earlier,
                    later: &b.start + later,
                    evidence,
                });
                tally(class, pairs, true);
            }
            Finding::Unresolved(reason) => {
                report.inconclusive_classes.push(InconclusiveClass {
                    class: class.clone(),
                    earlier_start: a.start.clone(),
                    later_start: b.start.clone(),
                    reason,
                });
                tally(class, pairs, false);
            }
        }
    }
    let total = seq.total_length();
    report.checked_pairs = pairs_within(total);
    report.pair_classes = classes.into_values().collect();
    report.finish()
}

/// Offsets of `seg` whose member has at most `limit` vertices.
fn small_offsets(seg: &Segment, limit: usize) -> std::ops::Range<u64> {
    let size0 = desc_size(&seg.descriptor_at(&BigUint::zero()));
    let limit = BigUint::from(limit);
    let len = seg.len.to_u64().unwrap_or(u64::MAX);
    if let SegmentKind::Explicit(_) = seg.kind {
        return if size0 <= limit { 0..len } else { 0..0 };
    }
    // Sizes drop by exactly one per offset.
    let first = sat_sub(&size0, &limit);
    match first.to_u64() {
        Some(f) if f < len => f..len,
        _ => 0..0,
    }
}

/// Materializes every position with at most `limit` vertices, checks the
/// covered pairs explicitly, and compares each verdict against the symbolic
/// path: the closed-form predicate per pair, and the segment-pair rules of
/// [`verify_phases`].
pub fn cross_validate(seq: &SequenceDescription, limit: usize) -> VerificationReport {
    let segments = seq.segments();
    let symbolic = verify_phases(seq);
    let mut covered: Vec<(usize, ExtendedCount, TreeDescriptor)> = Vec::new();
    for (s, seg) in segments.iter().enumerate() {
        for off in small_offsets(seg, limit) {
            let off = count(off);
            covered.push((s, &seg.start + &off, seg.descriptor_at(&off)));
        }
    }
    let trees: Vec<RootedTree> = covered
        .iter()
        .map(|(_, _, d)| expand(d, limit).expect("size bounded by limit"))
        .collect();
    let positions: Vec<ExtendedCount> = covered.iter().map(|(_, p, _)| p.clone()).collect();

    let mut report = explicit_report(&trees, &positions, u64::from(seq.label_offset()));
    report.mode = Mode::Mixed;
    report.pair_classes = symbolic.pair_classes.clone();
    report.inconclusive_classes = symbolic.inconclusive_classes.clone();

    // Segment pairs the symbolic run flagged, keyed by segment start.
    let flagged: std::collections::BTreeSet<(ExtendedCount, ExtendedCount)> = symbolic
        .embedding_violations
        .iter()
        .map(|v| {
            (
                segment_start(&segments, &v.earlier),
                segment_start(&segments, &v.later),
            )
        })
        .collect();

    let explicit_hits: std::collections::HashSet<(usize, usize)> = {
        let index: BTreeMap<&ExtendedCount, usize> =
            positions.iter().enumerate().map(|(i, p)| (p, i)).collect();
        report
            .embedding_violations
            .iter()
            .map(|v| (index[&v.earlier], index[&v.later]))
            .collect()
    };

    let mut disagreements: Vec<Disagreement> = (0..covered.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (covered, segments, flagged, explicit_hits) =
                (&covered, &segments, &flagged, &explicit_hits);
            (i + 1..covered.len()).filter_map(move |j| {
                let explicit = explicit_hits.contains(&(i, j));
                let (si, ref pi, ref di) = covered[i];
                let (sj, ref pj, ref dj) = covered[j];
                let closed_form = family_embeds(di, dj).ok();
                let segment_rule = si != sj
                    && flagged.contains(&(segments[si].start.clone(), segments[sj].start.clone()));
                // A flagged segment pair may still contain clear position pairs,
                // so the segment rule only has to cover every explicit hit.
                let agrees = closed_form == Some(explicit) && (!explicit || segment_rule);
                (!agrees).then(|| Disagreement {
                    earlier: pi.clone(),
                    later: pj.clone(),
                    explicit,
                    symbolic: closed_form.unwrap_or(false) && segment_rule,
                })
            })
        })
        .collect();
    disagreements.sort_by(|a, b| (&a.earlier, &a.later).cmp(&(&b.earlier, &b.later)));
    report.disagreements = disagreements;
    report.finish()
}

fn segment_start(segments: &[Segment], position: &ExtendedCount) -> ExtendedCount {
    let idx = segments.partition_point(|s| &s.start <= position) - 1;
    segments[idx].start.clone()
}
