//! The greedy leg-elimination process on two-leg trees.
//!
//! From a symmetric state `(d, d)` at label `B`, one step shortens the right
//! leg to `d - 1` and stretches the left leg to use the whole budget of label
//! `B + 1`; every following step removes one vertex from the left leg until
//! the legs are equal again at `(d - 1, d - 1)`. The process stops at `(1, 1)`.
//!
//! States between two symmetric checkpoints form a *run*: constant right leg,
//! left leg dropping by one per label. Runs are computed in closed form, so a
//! process of 10^14 steps costs one loop iteration per checkpoint.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::count::{decimal, ExtendedCount};
use crate::error::{Error, Result};

/// Most checkpoints a single simulation will walk through.
pub const MAX_CHECKPOINTS: usize = 1 << 20;

/// One state of the process. `stem` may be 0, which describes the bare pair
/// of legs with root and stem removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LegSimState {
    #[serde(with = "decimal")]
    pub label: ExtendedCount,
    #[serde(with = "decimal")]
    pub stem: ExtendedCount,
    #[serde(with = "decimal")]
    pub left: ExtendedCount,
    #[serde(with = "decimal")]
    pub right: ExtendedCount,
}

impl LegSimState {
    /// Builds a state with legs normalized so that `left >= right`.
    pub fn new(
        label: impl Into<ExtendedCount>,
        stem: impl Into<ExtendedCount>,
        a: impl Into<ExtendedCount>,
        b: impl Into<ExtendedCount>,
    ) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a.is_zero() || b.is_zero() {
            return Err(Error::Input("legs must have at least one vertex".into()));
        }
        let (left, right) = if a >= b { (a, b) } else { (b, a) };
        let state = LegSimState {
            label: label.into(),
            stem: stem.into(),
            left,
            right,
        };
        if state.size() > state.label {
            return Err(Error::Input(format!(
                "state with {} vertices exceeds budget {}",
                state.size(),
                state.label
            )));
        }
        Ok(state)
    }

    pub fn size(&self) -> ExtendedCount {
        &self.stem + &self.left + &self.right
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right
    }

    pub fn is_terminal(&self) -> bool {
        self.left.is_one() && self.right.is_one()
    }

    /// The next state of the greedy process, or `None` at `(1, 1)`.
    pub fn step(&self) -> Option<LegSimState> {
        let label = &self.label + 1u32;
        if self.left > self.right {
            return Some(LegSimState {
                label,
                stem: self.stem.clone(),
                left: &self.left - 1u32,
                right: self.right.clone(),
            });
        }
        if self.right.is_one() {
            return None;
        }
        let right = &self.right - 1u32;
        let left = &label - &self.stem - &right;
        Some(LegSimState {
            label,
            stem: self.stem.clone(),
            left,
            right,
        })
    }
}

/// Steps the process one state at a time, starting after `initial`.
pub fn greedy_states(initial: &LegSimState) -> impl Iterator<Item = LegSimState> {
    std::iter::successors(initial.step(), LegSimState::step)
}

/// Consecutive states sharing the right leg: the state at offset `i` has
/// label `first_label + i` and left leg `left_start - i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegRun {
    pub first_label: ExtendedCount,
    pub stem: ExtendedCount,
    pub right: ExtendedCount,
    pub left_start: ExtendedCount,
    pub len: ExtendedCount,
}

impl LegRun {
    pub fn state_at(&self, offset: &ExtendedCount) -> LegSimState {
        LegSimState {
            label: &self.first_label + offset,
            stem: self.stem.clone(),
            left: &self.left_start - offset,
            right: self.right.clone(),
        }
    }

    pub fn last(&self) -> LegSimState {
        self.state_at(&(&self.len - 1u32))
    }
}

/// Splits the process from `initial` into runs. With `include_initial` the
/// first run starts at `initial` itself, otherwise at its successor.
pub fn leg_runs(initial: &LegSimState, include_initial: bool) -> Result<Vec<LegRun>> {
    if initial
        .right
        .to_usize()
        .is_none_or(|r| r > MAX_CHECKPOINTS)
    {
        return Err(Error::Capacity(format!(
            "right leg {} would need more than {MAX_CHECKPOINTS} checkpoints",
            initial.right
        )));
    }
    let mut runs = Vec::new();
    let mut current = LegRun {
        first_label: initial.label.clone(),
        stem: initial.stem.clone(),
        right: initial.right.clone(),
        left_start: initial.left.clone(),
        len: &initial.left - &initial.right + 1u32,
    };
    if !include_initial {
        current.first_label += 1u32;
        current.left_start -= 1u32;
        current.len -= 1u32;
    }
    loop {
        let last_label = &current.first_label + &current.len - 1u32;
        let right = current.right.clone();
        if !current.len.is_zero() {
            runs.push(current.clone());
        }
        if right.is_one() {
            return Ok(runs);
        }
        // Extension step out of the symmetric state (right, right) at last_label.
        let label = last_label + 1u32;
        let new_right = &right - 1u32;
        let left = &label - &current.stem - &new_right;
        current = LegRun {
            len: &left - &new_right + 1u32,
            first_label: label,
            stem: current.stem.clone(),
            right: new_right,
            left_start: left,
        };
    }
}

/// One sweep between consecutive symmetric checkpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    #[serde(with = "decimal")]
    pub from_depth: ExtendedCount,
    #[serde(with = "decimal")]
    pub from_label: ExtendedCount,
    /// Left leg right after the extension step.
    #[serde(with = "decimal")]
    pub extended_left: ExtendedCount,
    /// Vertices of the extended left leg beyond the new right leg.
    #[serde(with = "decimal")]
    pub extra: ExtendedCount,
    #[serde(with = "decimal")]
    pub to_label: ExtendedCount,
    #[serde(with = "decimal")]
    pub steps: ExtendedCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegSimulation {
    pub initial: LegSimState,
    pub sweeps: Vec<Sweep>,
    #[serde(with = "decimal")]
    pub step_count: ExtendedCount,
    pub final_state: LegSimState,
}

impl LegSimulation {
    /// Symmetric states visited, initial one included, with their labels.
    pub fn checkpoints(&self) -> Vec<(ExtendedCount, LegSimState)> {
        let mut out = vec![(self.initial.label.clone(), self.initial.clone())];
        for s in &self.sweeps {
            let depth = &s.from_depth - 1u32;
            out.push((
                s.to_label.clone(),
                LegSimState {
                    label: s.to_label.clone(),
                    stem: self.initial.stem.clone(),
                    left: depth.clone(),
                    right: depth,
                },
            ));
        }
        out
    }
}

/// Runs the process from a symmetric state down to legs `(1, 1)`.
pub fn simulate_leg_elimination(initial: &LegSimState) -> Result<LegSimulation> {
    if !initial.is_symmetric() || initial.right < BigUint::from(2u8) {
        return Err(Error::Input(format!(
            "simulation starts from symmetric legs of at least 2, got ({}, {})",
            initial.left, initial.right
        )));
    }
    let runs = leg_runs(initial, true)?;
    let mut sweeps = Vec::with_capacity(runs.len().saturating_sub(1));
    let mut step_count = BigUint::zero();
    let mut from = initial.clone();
    for run in &runs[1..] {
        let last = run.last();
        sweeps.push(Sweep {
            from_depth: from.right.clone(),
            from_label: from.label.clone(),
            extended_left: run.left_start.clone(),
            extra: &run.left_start - &run.right,
            to_label: last.label.clone(),
            steps: run.len.clone(),
        });
        step_count += &run.len;
        from = last;
    }
    Ok(LegSimulation {
        initial: initial.clone(),
        sweeps,
        step_count,
        final_state: from,
    })
}

/// `6 * 2^x - 2x - 6`: steps to eliminate a symmetric configuration of depth
/// `x` starting with no spare budget.
pub fn l_formula(x: &ExtendedCount) -> Result<ExtendedCount> {
    if x.is_zero() {
        return Err(Error::Input(
            "leg elimination formula is defined for x >= 1".into(),
        ));
    }
    let shift = x
        .to_usize()
        .filter(|&s| s <= 1 << 24)
        .ok_or_else(|| Error::Capacity(format!("2^{x} is too large to evaluate")))?;
    Ok((BigUint::from(6u8) << shift) - (x * 2u32) - 6u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(label: u64, stem: u64, l: u64, r: u64) -> LegSimState {
        LegSimState::new(label, stem, l, r).unwrap()
    }

    #[test]
    fn step_rule() {
        let s = st(10, 0, 5, 5).step().unwrap();
        assert_eq!(s, st(11, 0, 7, 4));
        assert_eq!(s.size(), s.label);
        assert_eq!(s.step().unwrap(), st(12, 0, 6, 4));
        assert!(st(4, 1, 1, 1).step().is_none());
        assert_eq!(st(5, 1, 2, 1).step().unwrap(), st(6, 1, 1, 1));
    }

    #[test]
    fn from_two_two_at_label_four() {
        let sim = simulate_leg_elimination(&st(4, 0, 2, 2)).unwrap();
        assert_eq!(sim.step_count, BigUint::from(4u8));
        assert_eq!(sim.final_state, st(8, 0, 1, 1));
        assert_eq!(greedy_states(&st(4, 0, 2, 2)).count(), 4);
    }

    #[test]
    fn rejects_bad_starts() {
        assert!(simulate_leg_elimination(&st(10, 0, 5, 4)).is_err());
        assert!(simulate_leg_elimination(&st(10, 0, 1, 1)).is_err());
        assert!(LegSimState::new(9u32, 0u32, 5u32, 5u32).is_err());
        assert!(l_formula(&BigUint::zero()).is_err());
    }

    #[test]
    fn runs_cover_stepwise_states() {
        let init = st(12, 2, 5, 5);
        let runs = leg_runs(&init, false).unwrap();
        let from_runs: Vec<LegSimState> = runs
            .iter()
            .flat_map(|r| {
                let n = r.len.to_u64().unwrap();
                (0..n).map(move |i| r.state_at(&BigUint::from(i)))
            })
            .collect();
        let stepwise: Vec<LegSimState> = greedy_states(&init).collect();
        assert_eq!(from_runs, stepwise);
        assert_eq!(stepwise.len(), 82);
        assert_eq!(stepwise.last().unwrap(), &st(94, 2, 1, 1));
    }
}
