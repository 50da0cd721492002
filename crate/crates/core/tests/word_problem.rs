mod common;

use common::{burau3_trivial, constructed_trivial, invert, random_braid, shuffle_equal};
use tiedbraid::fuzz::rng;
use tiedbraid::{handle_reduce, monoid_equal, BraidWord, Context, ReductionOutcome, TiedWord, DEFAULT_BUDGET};

#[test]
fn burau_oracle_sanity() {
    assert!(burau3_trivial(&[]));
    assert!(burau3_trivial(&[1, -1, -2, 2]));
    assert!(burau3_trivial(&[1, 2, 1, -2, -1, -2]));
    assert!(!burau3_trivial(&[1, 2, 1, -1, -2, -2, 1]));
    assert!(!burau3_trivial(&[1, 1, 1, 1, 1, 1]));
    // the full twist squared is pure but nontrivial
    assert!(!burau3_trivial(&[1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2]));
}

fn trivial(letters: &[i32], strands: usize) -> bool {
    let b = BraidWord::new(strands, letters.to_vec()).unwrap();
    match handle_reduce(&b, DEFAULT_BUDGET).outcome {
        ReductionOutcome::Trivial => true,
        ReductionOutcome::Nontrivial => false,
        ReductionOutcome::BudgetExhausted => panic!("budget exhausted on {b}"),
    }
}

#[test]
fn handle_reduction_agrees_with_burau() {
    let mut r = rng(2024);
    for case in 0..300 {
        let w = random_braid(&mut r, 3, case % 25);
        let word = if case % 2 == 0 {
            let mut v = w.clone();
            v.extend(invert(&shuffle_equal(&mut r, &w, 20)));
            v
        } else {
            w
        };
        assert_eq!(trivial(&word, 3), burau3_trivial(&word), "{word:?}");
    }
}

#[test]
fn constructed_trivial_words_reduce() {
    let mut r = rng(7);
    for strands in 2..=6 {
        for _ in 0..60 {
            let w = constructed_trivial(&mut r, strands, 60);
            assert!(trivial(&w, strands), "{w:?}");
        }
    }
}

#[test]
fn nontrivial_pure_braids_stay_nontrivial() {
    // the squared generators σ_i² are nontrivial and pure
    for strands in 2..=5 {
        for i in 1..strands as i32 {
            assert!(!trivial(&[i, i], strands));
            assert!(!trivial(&[i, i, -(i), -(i), i, i], strands));
        }
    }
}

#[test]
fn mixed_braid_examples() {
    let st = Context::solid_torus(2);
    let w = |s: &str| TiedWord::parse(s, st).unwrap();
    assert!(monoid_equal(&w("a1 s1 a1 s1"), &w("s1 a1 s1 a1")).unwrap());
    assert!(!monoid_equal(&w("a1 s1 a1 S1"), &w("s1 a1 S1 a1")).unwrap());
    let hb = Context::handlebody(2, 2);
    let h = |s: &str| TiedWord::parse(s, hb).unwrap();
    assert!(monoid_equal(&h("a2 s1 a1 S1"), &h("s1 a1 S1 a2")).unwrap());
    assert!(!monoid_equal(&h("a1 a2"), &h("a2 a1")).unwrap());
}
