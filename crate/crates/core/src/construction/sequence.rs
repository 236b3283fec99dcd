//! Compact phase encoding of a long sequence of trees.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::legs::{leg_runs, LegRun, LegSimState};
use crate::count::{decimal, ExtendedCount};
use crate::error::{Error, Result};
use crate::families::{TreeDescriptor, TwoLeg};
use crate::tree::RootedTree;

/// Position `k` of a sequence carries label (vertex budget) `k + LABEL_OFFSET`.
pub const LABEL_OFFSET: u32 = 3;

/// Most records [`SequenceDescription::records`] produces without `force`.
pub const DEFAULT_EXPORT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhaseKind {
    /// Listed trees, one per position.
    ExplicitPrefix { trees: Vec<TreeDescriptor> },
    /// The greedy leg-elimination process from `initial`. When
    /// `emit_initial` is false the phase starts with the successor state.
    LegElimination {
        initial: LegSimState,
        emit_initial: bool,
    },
    /// `Chain(start_len)`, `Chain(start_len - 1)`, ...
    ChainCountdown {
        #[serde(with = "decimal")]
        start_len: ExtendedCount,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequencePhase {
    pub kind: PhaseKind,
    #[serde(with = "decimal")]
    pub start_position: ExtendedCount,
    #[serde(with = "decimal")]
    pub length: ExtendedCount,
}

impl SequencePhase {
    pub fn end_position(&self) -> ExtendedCount {
        &self.start_position + &self.length - 1u32
    }
}

/// A maximal stretch of positions that one closed form describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub phase: usize,
    pub start: ExtendedCount,
    pub len: ExtendedCount,
    pub kind: SegmentKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentKind {
    /// One tree outside the chain and two-leg families.
    Explicit(RootedTree),
    /// `TwoLeg(stem, left_start - i, right)`; the left leg never drops below `right`.
    LegRun {
        stem: ExtendedCount,
        right: ExtendedCount,
        left_start: ExtendedCount,
    },
    /// `Chain(len_start - i)`.
    ChainRun { len_start: ExtendedCount },
}

impl Segment {
    pub fn end(&self) -> ExtendedCount {
        &self.start + &self.len - 1u32
    }

    pub fn descriptor_at(&self, offset: &ExtendedCount) -> TreeDescriptor {
        debug_assert!(offset < &self.len);
        match &self.kind {
            SegmentKind::Explicit(t) => TreeDescriptor::Explicit(t.clone()),
            SegmentKind::LegRun {
                stem,
                right,
                left_start,
            } => TreeDescriptor::TwoLeg(
                TwoLeg::new(stem.clone(), left_start - offset, right.clone())
                    .expect("positive legs"),
            ),
            SegmentKind::ChainRun { len_start } => TreeDescriptor::Chain(len_start - offset),
        }
    }

    fn single(phase: usize, start: ExtendedCount, d: &TreeDescriptor) -> Segment {
        let kind = match d.normalized().into_owned() {
            TreeDescriptor::Explicit(t) => SegmentKind::Explicit(t),
            TreeDescriptor::Chain(n) => SegmentKind::ChainRun { len_start: n },
            TreeDescriptor::TwoLeg(t) => SegmentKind::LegRun {
                stem: t.stem().clone(),
                right: t.right().clone(),
                left_start: t.left().clone(),
            },
        };
        Segment {
            phase,
            start,
            len: BigUint::one(),
            kind,
        }
    }
}

/// An ordered list of phases tiling positions `1..=total_length`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDescription {
    phases: Vec<SequencePhase>,
    #[serde(with = "decimal")]
    total_length: ExtendedCount,
    label_offset: u32,
}

impl SequenceDescription {
    /// Validates tiling and per-phase consistency.
    pub fn new(phases: Vec<SequencePhase>) -> Result<Self> {
        if phases.is_empty() {
            return Err(Error::Construction(
                "a sequence needs at least one phase".into(),
            ));
        }
        let mut next = BigUint::one();
        for (i, p) in phases.iter().enumerate() {
            if p.start_position != next {
                return Err(Error::Construction(format!(
                    "phase {i} starts at position {} but the previous phase ends at {}",
                    p.start_position,
                    &next - 1u32
                )));
            }
            if p.length.is_zero() {
                return Err(Error::Construction(format!("phase {i} is empty")));
            }
            check_phase(i, p)?;
            next = &p.start_position + &p.length;
        }
        Ok(SequenceDescription {
            phases,
            total_length: next - 1u32,
            label_offset: LABEL_OFFSET,
        })
    }

    pub fn phases(&self) -> &[SequencePhase] {
        &self.phases
    }

    pub fn total_length(&self) -> &ExtendedCount {
        &self.total_length
    }

    pub fn label_offset(&self) -> u32 {
        self.label_offset
    }

    pub fn label_of(&self, position: &ExtendedCount) -> ExtendedCount {
        position + self.label_offset
    }

    /// Closed-form segments of all phases, in position order.
    pub fn segments(&self) -> Vec<Segment> {
        let mut out = Vec::new();
        for (i, p) in self.phases.iter().enumerate() {
            match &p.kind {
                PhaseKind::ExplicitPrefix { trees } => {
                    for (k, d) in trees.iter().enumerate() {
                        out.push(Segment::single(i, &p.start_position + k, d));
                    }
                }
                PhaseKind::LegElimination {
                    initial,
                    emit_initial,
                } => {
                    let runs = leg_runs(initial, *emit_initial).expect("validated at construction");
                    let mut start = p.start_position.clone();
                    let mut remaining = p.length.clone();
                    for LegRun {
                        stem,
                        right,
                        left_start,
                        len,
                        ..
                    } in runs
                    {
                        if remaining.is_zero() {
                            break;
                        }
                        let len = len.min(remaining.clone());
                        remaining -= &len;
                        out.push(Segment {
                            phase: i,
                            start: start.clone(),
                            len: len.clone(),
                            kind: SegmentKind::LegRun {
                                stem,
                                right,
                                left_start,
                            },
                        });
                        start += len;
                    }
                }
                PhaseKind::ChainCountdown { start_len } => out.push(Segment {
                    phase: i,
                    start: p.start_position.clone(),
                    len: p.length.clone(),
                    kind: SegmentKind::ChainRun {
                        len_start: start_len.clone(),
                    },
                }),
            }
        }
        out
    }

    /// Tree at `position`, located through the segment table.
    pub fn tree_at(&self, position: &ExtendedCount) -> Result<TreeDescriptor> {
        if position.is_zero() || position > &self.total_length {
            return Err(Error::Input(format!(
                "position {position} outside 1..={}",
                self.total_length
            )));
        }
        let segments = self.segments();
        let idx = segments.partition_point(|s| &s.start <= position) - 1;
        let seg = &segments[idx];
        Ok(seg.descriptor_at(&(position - &seg.start)))
    }

    /// Walks the sequence one position at a time from position 1, stepping
    /// the leg-elimination process state by state.
    pub fn iter(&self) -> impl Iterator<Item = TreeDescriptor> + '_ {
        self.phases
            .iter()
            .flat_map(|p| -> Box<dyn Iterator<Item = TreeDescriptor> + '_> {
                let take = p.length.to_usize().unwrap_or(usize::MAX);
                match &p.kind {
                    PhaseKind::ExplicitPrefix { trees } => Box::new(trees.iter().cloned()),
                    PhaseKind::LegElimination {
                        initial,
                        emit_initial,
                    } => {
                        let first = if *emit_initial {
                            Some(initial.clone())
                        } else {
                            initial.step()
                        };
                        Box::new(
                            std::iter::successors(first, LegSimState::step)
                                .take(take)
                                .map(|s| {
                                    TreeDescriptor::two_leg(s.stem, s.left, s.right)
                                        .expect("positive stem and legs")
                                }),
                        )
                    }
                    PhaseKind::ChainCountdown { start_len } => {
                        let start_len = start_len.clone();
                        Box::new(
                            std::iter::successors(Some(start_len), |n| {
                                (!n.is_one()).then(|| n - 1u32)
                            })
                            .take(take)
                            .map(TreeDescriptor::Chain),
                        )
                    }
                }
            })
    }

    /// Export records for positions `from..=to`. Refuses more than `cap`
    /// records unless `cap` is `None`.
    pub fn records(
        &self,
        from: &ExtendedCount,
        to: &ExtendedCount,
        cap: Option<u64>,
    ) -> Result<Vec<SequenceRecord>> {
        if from.is_zero() || from > to || to > &self.total_length {
            return Err(Error::Input(format!(
                "range {from}..={to} outside 1..={}",
                self.total_length
            )));
        }
        let count = to - from + 1u32;
        if let Some(cap) = cap {
            if count > BigUint::from(cap) {
                return Err(Error::Capacity(format!(
                    "{count} records requested, cap is {cap}; pass --force to override"
                )));
            }
        }
        let segments = self.segments();
        let mut idx = segments.partition_point(|s| &s.start <= from) - 1;
        let mut out = Vec::new();
        let mut pos = from.clone();
        while &pos <= to {
            while segments[idx].end() < pos {
                idx += 1;
            }
            let seg = &segments[idx];
            out.push(SequenceRecord {
                label: self.label_of(&pos),
                descriptor: seg.descriptor_at(&(&pos - &seg.start)),
                position: pos.clone(),
            });
            pos += 1u32;
        }
        Ok(out)
    }
}

fn check_phase(i: usize, p: &SequencePhase) -> Result<()> {
    let start_label = &p.start_position + LABEL_OFFSET;
    match &p.kind {
        PhaseKind::ExplicitPrefix { trees } => {
            if BigUint::from(trees.len()) != p.length {
                return Err(Error::Construction(format!(
                    "phase {i} lists {} trees but has length {}",
                    trees.len(),
                    p.length
                )));
            }
        }
        PhaseKind::LegElimination {
            initial,
            emit_initial,
        } => {
            if initial.stem.is_zero() {
                return Err(Error::Construction(format!(
                    "phase {i}: sequence trees need a stem"
                )));
            }
            let expected = if *emit_initial {
                start_label
            } else {
                start_label - 1u32
            };
            if initial.label != expected {
                return Err(Error::Construction(format!(
                    "phase {i}: initial state has label {} but its position implies {expected}",
                    initial.label
                )));
            }
            let runs = leg_runs(initial, *emit_initial)?;
            let natural: ExtendedCount = runs.iter().map(|r| &r.len).sum();
            if p.length > natural {
                return Err(Error::Construction(format!(
                    "phase {i} claims {} positions but the process from its initial state only has {natural}",
                    p.length
                )));
            }
        }
        PhaseKind::ChainCountdown { start_len } => {
            if &p.length != start_len {
                return Err(Error::Construction(format!(
                    "phase {i}: countdown from {start_len} has length {}",
                    p.length
                )));
            }
        }
    }
    Ok(())
}

/// One line of sequence export: `<position>\t<label>\t<descriptor>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    #[serde(with = "decimal")]
    pub position: ExtendedCount,
    #[serde(with = "decimal")]
    pub label: ExtendedCount,
    pub descriptor: TreeDescriptor,
}

impl fmt::Display for SequenceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.position, self.label, self.descriptor)
    }
}

impl FromStr for SequenceRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::parse(0, "expected three tab-separated fields"));
        }
        let number = |s: &str, offset: usize| {
            s.parse::<ExtendedCount>()
                .map_err(|_| Error::parse(offset, format!("expected a decimal number, got {s:?}")))
        };
        Ok(SequenceRecord {
            position: number(fields[0], 0)?,
            label: number(fields[1], fields[0].len() + 1)?,
            descriptor: fields[2].parse()?,
        })
    }
}
