//! The explicit lower-bound sequence for `tree(3)`.
//!
//! Layout, by label (position + 3):
//!
//! * labels 4..=12: nine hand-picked trees ending in `TwoLeg(2, 5, 5)`;
//! * labels 13..=94: greedy leg elimination from that tree down to `TwoLeg(2, 1, 1)`;
//! * label 95: a fresh two-leg tree with stem 1 filling the whole budget,
//!   followed by its greedy elimination down to `TwoLeg(1, 1, 1)`;
//! * then `Chain(B)` at label `B`, counting down to a single vertex.
//!
//! Phase boundaries are derived from the closed-form step count
//! [`l_formula`], and each boundary is checked against the simulated process;
//! a mismatch is a [`Error::Construction`].

mod legs;
mod sequence;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use legs::{
    greedy_states, l_formula, leg_runs, simulate_leg_elimination, LegRun, LegSimState,
    LegSimulation, Sweep, MAX_CHECKPOINTS,
};
pub use sequence::{
    PhaseKind, Segment, SegmentKind, SequenceDescription, SequencePhase, SequenceRecord,
    DEFAULT_EXPORT_CAP, LABEL_OFFSET,
};

use crate::count::{count, decimal, ExtendedCount};
use crate::error::{Error, Result};
use crate::families::TreeDescriptor;
use crate::tree::RootedTree;

/// Label of the tree that opens the first leg-elimination phase.
const FIRST_SWEEP_LABEL: u64 = 12;
/// Stem of the restart tree.
const RESTART_STEM: u64 = 1;
/// Legs of the restart tree: two 47-vertex legs under a one-vertex stem fill
/// the 95-vertex budget exactly, which is the start from which the greedy
/// process takes `l_formula(46)` steps.
const RESTART_LEG: u64 = 47;

/// Trees at labels 4..=12, paired with their labels.
pub fn initial_segment() -> Vec<(ExtendedCount, TreeDescriptor)> {
    let explicit =
        |code: &str| TreeDescriptor::Explicit(RootedTree::parse(code).expect("valid literal"));
    let leg = |s: u64, l: u64, r: u64| TreeDescriptor::two_leg(s, l, r).expect("positive literal");
    let trees = vec![
        // root with three leaves
        explicit("(()()())"),
        // root with a leaf and a cherry
        explicit("(()(()()))"),
        leg(4, 1, 1),
        leg(3, 2, 2),
        leg(3, 4, 1),
        leg(3, 3, 1),
        leg(3, 2, 1),
        leg(3, 1, 1),
        leg(2, 5, 5),
    ];
    trees
        .into_iter()
        .enumerate()
        .map(|(i, d)| (count(4 + i as u64), d))
        .collect()
}

/// `Chain(start_len)` down to `Chain(1)`, starting at `start_label`.
pub fn chain_countdown(
    start_label: &ExtendedCount,
    start_len: &ExtendedCount,
) -> Result<SequencePhase> {
    if start_len == &BigUint::from(0u8) {
        return Err(Error::Input(
            "chain countdown needs a start length of at least 1".into(),
        ));
    }
    if start_label <= &BigUint::from(LABEL_OFFSET) {
        return Err(Error::Input(format!(
            "labels start at {}",
            LABEL_OFFSET + 1
        )));
    }
    Ok(SequencePhase {
        kind: PhaseKind::ChainCountdown {
            start_len: start_len.clone(),
        },
        start_position: start_label - LABEL_OFFSET,
        length: start_len.clone(),
    })
}

/// Step-by-step arithmetic behind the length of the full sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundDerivation {
    #[serde(with = "decimal")]
    pub first_sweep_label: ExtendedCount,
    #[serde(with = "decimal")]
    pub first_sweep_steps: ExtendedCount,
    /// Label of `TwoLeg(2, 1, 1)`.
    #[serde(with = "decimal")]
    pub first_sweep_end: ExtendedCount,
    #[serde(with = "decimal")]
    pub restart_label: ExtendedCount,
    #[serde(with = "decimal")]
    pub second_sweep_steps: ExtendedCount,
    /// Label of `TwoLeg(1, 1, 1)`.
    #[serde(with = "decimal")]
    pub second_sweep_end: ExtendedCount,
    #[serde(with = "decimal")]
    pub chain_start: ExtendedCount,
    #[serde(with = "decimal")]
    pub last_label: ExtendedCount,
    #[serde(with = "decimal")]
    pub bound: ExtendedCount,
}

pub fn bound_derivation() -> BoundDerivation {
    let first_sweep_label = count(FIRST_SWEEP_LABEL);
    let first_sweep_steps = l_formula(&count(4)).expect("small argument");
    let first_sweep_end = &first_sweep_label + &first_sweep_steps;
    let restart_label = &first_sweep_end + 1u32;
    let second_sweep_steps = l_formula(&count(RESTART_LEG - 1)).expect("small argument");
    let second_sweep_end = &restart_label + &second_sweep_steps;
    let chain_start = &second_sweep_end + 1u32;
    // A chain of n vertices is followed by n - 1 shorter ones.
    let last_label = &chain_start + (&chain_start - 1u32);
    let bound = &last_label - LABEL_OFFSET;
    BoundDerivation {
        first_sweep_label,
        first_sweep_steps,
        first_sweep_end,
        restart_label,
        second_sweep_steps,
        second_sweep_end,
        chain_start,
        last_label,
        bound,
    }
}

/// Length of the full sequence, recomputed from the phase arithmetic.
pub fn total_bound() -> ExtendedCount {
    bound_derivation().bound
}

/// Assembles the full sequence and cross-checks every phase boundary against
/// the simulated process.
pub fn build_full_sequence() -> Result<SequenceDescription> {
    let arithmetic = bound_derivation();
    let prefix = initial_segment();
    let prefix_len = count(prefix.len() as u64);
    let mut phases = vec![SequencePhase {
        kind: PhaseKind::ExplicitPrefix {
            trees: prefix.into_iter().map(|(_, d)| d).collect(),
        },
        start_position: count(1),
        length: prefix_len.clone(),
    }];

    let first = LegSimState::new(arithmetic.first_sweep_label.clone(), 2u32, 5u32, 5u32)?;
    expect_steps("first sweep", &first, &arithmetic.first_sweep_steps)?;
    phases.push(SequencePhase {
        kind: PhaseKind::LegElimination {
            initial: first,
            emit_initial: false,
        },
        start_position: &prefix_len + 1u32,
        length: arithmetic.first_sweep_steps.clone(),
    });

    let restart = LegSimState::new(
        arithmetic.restart_label.clone(),
        RESTART_STEM,
        RESTART_LEG,
        RESTART_LEG,
    )?;
    expect_steps("restart sweep", &restart, &arithmetic.second_sweep_steps)?;
    phases.push(SequencePhase {
        kind: PhaseKind::LegElimination {
            initial: restart,
            emit_initial: true,
        },
        start_position: &arithmetic.restart_label - LABEL_OFFSET,
        length: &arithmetic.second_sweep_steps + 1u32,
    });

    phases.push(chain_countdown(
        &arithmetic.chain_start,
        &arithmetic.chain_start,
    )?);

    let seq = SequenceDescription::new(phases)?;
    if seq.total_length() != &arithmetic.bound {
        return Err(Error::Construction(format!(
            "phases tile {} positions, arithmetic says {}",
            seq.total_length(),
            arithmetic.bound
        )));
    }
    Ok(seq)
}

fn expect_steps(what: &str, initial: &LegSimState, claimed: &ExtendedCount) -> Result<()> {
    let sim = simulate_leg_elimination(initial)?;
    if &sim.step_count != claimed {
        return Err(Error::Construction(format!(
            "{what}: simulation from ({}, {}) at label {} takes {} steps, arithmetic needs {claimed}",
            initial.left, initial.right, initial.label, sim.step_count
        )));
    }
    Ok(())
}

pub fn tree_at(seq: &SequenceDescription, position: &ExtendedCount) -> Result<TreeDescriptor> {
    seq.tree_at(position)
}

/// Simulated versus closed-form length of the second sweep for a given
/// restart leg length at label 95.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestartAudit {
    #[serde(with = "decimal")]
    pub leg: ExtendedCount,
    #[serde(with = "decimal")]
    pub size: ExtendedCount,
    #[serde(with = "decimal")]
    pub simulated_steps: ExtendedCount,
    #[serde(with = "decimal")]
    pub formula_steps: ExtendedCount,
    /// Label at which the sweep reaches `TwoLeg(1, 1, 1)`.
    #[serde(with = "decimal")]
    pub end_label: ExtendedCount,
    /// Sequence length if the chain countdown follows this sweep.
    #[serde(with = "decimal")]
    pub implied_bound: ExtendedCount,
}

/// Simulates the restart sweep for 46- and 47-vertex legs.
pub fn restart_audit() -> Result<Vec<RestartAudit>> {
    let arithmetic = bound_derivation();
    [RESTART_LEG - 1, RESTART_LEG]
        .into_iter()
        .map(|leg| {
            let state = LegSimState::new(arithmetic.restart_label.clone(), RESTART_STEM, leg, leg)?;
            let sim = simulate_leg_elimination(&state)?;
            let end_label = sim.final_state.label.clone();
            let chain = &end_label + 1u32;
            Ok(RestartAudit {
                leg: count(leg),
                size: state.size(),
                simulated_steps: sim.step_count,
                formula_steps: arithmetic.second_sweep_steps.clone(),
                implied_bound: &chain + (&chain - 1u32) - LABEL_OFFSET,
                end_label,
            })
        })
        .collect()
}
