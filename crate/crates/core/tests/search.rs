mod common;

use weak_tree::search::longest_bad_sequence;
use weak_tree::tree::RootedTree;
use weak_tree::verifier::{verify_explicit_sequence, Verdict};

fn reverify(r: &weak_tree::search::SearchResult) {
    let trees: Vec<RootedTree> = r
        .witness
        .iter()
        .map(|c| RootedTree::parse(c.as_str()).unwrap())
        .collect();
    assert_eq!(trees.len() as u64, r.length);
    assert_eq!(
        verify_explicit_sequence(&trees, r.n).verdict,
        Verdict::Valid
    );
}

#[test]
fn exact_values() {
    for (n, expected) in [(0, 1), (1, 2), (2, 5)] {
        let r = longest_bad_sequence(n, 64, 7).unwrap();
        assert_eq!(r.length, expected, "n = {n}");
        assert!(r.exhausted);
        reverify(&r);
    }
}

#[test]
fn slack_three_reaches_the_step_cap() {
    let r = longest_bad_sequence(3, 12, 12).unwrap();
    assert!(r.length >= 9);
    assert!(!r.exhausted);
    reverify(&r);
}

#[test]
fn deterministic() {
    assert_eq!(
        longest_bad_sequence(2, 64, 7).unwrap(),
        longest_bad_sequence(2, 64, 7).unwrap()
    );
    assert_eq!(
        longest_bad_sequence(3, 8, 9).unwrap(),
        longest_bad_sequence(3, 8, 9).unwrap()
    );
}

#[test]
fn monotone_in_caps() {
    for n in 1..=3 {
        let mut prev = 0;
        for step_cap in 1..=7 {
            let len = longest_bad_sequence(n, step_cap, 8).unwrap().length;
            assert!(len >= prev);
            prev = len;
        }
        let mut prev = 0;
        for size_cap in 1..=8 {
            let len = longest_bad_sequence(n, 7, size_cap).unwrap().length;
            assert!(len >= prev);
            prev = len;
        }
    }
}

#[test]
fn small_size_cap_is_not_exhaustive() {
    let r = longest_bad_sequence(2, 64, 4).unwrap();
    assert!(!r.exhausted);
    reverify(&r);
}

#[test]
fn witness_records_use_export_format() {
    let r = longest_bad_sequence(1, 8, 7).unwrap();
    let lines: Vec<String> = r
        .witness_records()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    assert_eq!(lines, ["1\t2\tchain:2", "2\t3\tchain:1"]);
}
