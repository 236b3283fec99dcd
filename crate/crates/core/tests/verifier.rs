mod common;

use common::t;
use num_bigint::BigUint;
use weak_tree::construction::{
    build_full_sequence, initial_segment, LegSimState, PhaseKind, SequenceDescription,
    SequencePhase,
};
use weak_tree::count::count;
use weak_tree::families::TreeDescriptor;
use weak_tree::verifier::{
    cross_validate, verify_explicit_sequence, verify_phases, verify_prefix, Evidence, Mode,
    Verdict, VerificationReport,
};

fn prefix_phase() -> SequencePhase {
    SequencePhase {
        kind: PhaseKind::ExplicitPrefix {
            trees: initial_segment().into_iter().map(|(_, d)| d).collect(),
        },
        start_position: count(1),
        length: count(9),
    }
}

fn stem_two_phase(start: u64, length: u64) -> SequencePhase {
    SequencePhase {
        kind: PhaseKind::LegElimination {
            initial: LegSimState::new(12u32, 2u32, 5u32, 5u32).unwrap(),
            emit_initial: false,
        },
        start_position: count(start),
        length: count(length),
    }
}

#[test]
fn small_sequences() {
    let r = verify_explicit_sequence(
        &[t("((()))"), t("(()()())"), t("(()())"), t("(())"), t("()")],
        2,
    );
    assert_eq!(r.verdict, Verdict::Valid);
    assert_eq!(r.checked_pairs, count(10));
    assert_eq!(r.mode, Mode::Explicit);
}

#[test]
fn explicit_violations_carry_replayable_witnesses() {
    let trees = [t("(()())"), t("((()))"), t("(()(()()))"), t("()")];
    let r = verify_explicit_sequence(&trees, 10);
    assert_eq!(r.verdict, Verdict::Invalid);
    assert!(!r.embedding_violations.is_empty());
    for v in &r.embedding_violations {
        let (i, j): (usize, usize) = (
            (&v.earlier).try_into().unwrap(),
            (&v.later).try_into().unwrap(),
        );
        match &v.evidence {
            Evidence::Witness(w) => assert_eq!(w.check(&trees[i - 1], &trees[j - 1]), Ok(())),
            Evidence::Class(c) => panic!("explicit mode produced class evidence {c}"),
        }
    }
    let positions: Vec<(u64, u64)> = r
        .embedding_violations
        .iter()
        .map(|v| {
            (
                (&v.earlier).try_into().unwrap(),
                (&v.later).try_into().unwrap(),
            )
        })
        .collect();
    assert_eq!(positions, vec![(1, 3), (2, 3)]);
}

#[test]
fn prefix_reports_are_restrictions_of_longer_ones() {
    let trees = [t("()"), t("(())"), t("((()))"), t("(()())")];
    let full = verify_explicit_sequence(&trees, 3);
    let part = verify_explicit_sequence(&trees[..3], 3);
    for v in &part.embedding_violations {
        assert!(full.embedding_violations.contains(v));
    }
}

#[test]
fn repeated_leg_step_is_caught_in_its_class() {
    // Phase A stops after 5 states; phase B restarts from A's last state, so
    // one two-leg tree appears twice.
    let a = stem_two_phase(10, 5);
    let last =
        weak_tree::construction::greedy_states(&LegSimState::new(12u32, 2u32, 5u32, 5u32).unwrap())
            .nth(4)
            .unwrap();
    let mut relabeled = last.clone();
    relabeled.label += 1u32;
    let b = SequencePhase {
        kind: PhaseKind::LegElimination {
            initial: relabeled,
            emit_initial: true,
        },
        start_position: count(15),
        length: count(10),
    };
    let seq = SequenceDescription::new(vec![prefix_phase(), a, b]).unwrap();
    assert_eq!(
        seq.tree_at(&count(14)).unwrap(),
        seq.tree_at(&count(15)).unwrap()
    );
    let r = verify_phases(&seq);
    assert_eq!(r.verdict, Verdict::Invalid);
    let v = &r.embedding_violations[0];
    assert_eq!((v.earlier.clone(), v.later.clone()), (count(14), count(15)));
    assert!(matches!(&v.evidence, Evidence::Class(c) if c.starts_with("leg_run/leg_run")));

    // The explicit path agrees.
    let explicit = verify_prefix(&seq, 24).unwrap();
    assert!(explicit
        .embedding_violations
        .iter()
        .any(|v| v.earlier == count(14) && v.later == count(15)));
    assert_eq!(cross_validate(&seq, 100).disagreements, vec![]);
}

#[test]
fn first_two_phases_check_both_ways() {
    let seq = SequenceDescription::new(vec![prefix_phase(), stem_two_phase(10, 82)]).unwrap();
    let symbolic = verify_phases(&seq);
    assert_eq!(symbolic.verdict, Verdict::Valid);
    let full = verify_phases(&build_full_sequence().unwrap());
    assert!(symbolic.pair_classes.len() < full.pair_classes.len());
    assert_eq!(verify_prefix(&seq, 91).unwrap().verdict, Verdict::Valid);
}

#[test]
fn stem_one_run_from_three_three() {
    // Three trees of sizes 4..6, then the process from TwoLeg(1, 3, 3) at label 7.
    let head = SequencePhase {
        kind: PhaseKind::ExplicitPrefix {
            trees: vec![
                TreeDescriptor::Explicit(t("(()()())")),
                TreeDescriptor::Explicit(t("(()(()()))")),
                TreeDescriptor::two_leg(4u32, 1u32, 1u32).unwrap(),
            ],
        },
        start_position: count(1),
        length: count(3),
    };
    let legs = SequencePhase {
        kind: PhaseKind::LegElimination {
            initial: LegSimState::new(7u32, 1u32, 3u32, 3u32).unwrap(),
            emit_initial: true,
        },
        start_position: count(4),
        length: count(1 + 10),
    };
    let seq = SequenceDescription::new(vec![head, legs]).unwrap();
    let r = cross_validate(&seq, 14);
    assert_eq!(r.disagreements, vec![]);
    assert_eq!(r.verdict, verify_phases(&seq).verdict);
}

#[test]
fn empty_cross_validation() {
    let seq = build_full_sequence().unwrap();
    let r = cross_validate(&seq, 0);
    assert_eq!(r.checked_pairs, BigUint::from(0u8));
    assert_eq!(r.verdict, Verdict::Valid);
}

#[test]
fn reports_round_trip_through_json() {
    let seq = build_full_sequence().unwrap();
    let r = verify_phases(&seq);
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(
        serde_json::from_str::<VerificationReport>(&json).unwrap(),
        r
    );
    assert!(json.contains("\"verdict\":\"valid\""));
}
