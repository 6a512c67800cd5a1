mod common;

use std::collections::HashSet;

use common::*;
use proptest::prelude::*;
use sclgap_core::fgword::*;

proptest! {
    #[test]
    fn reduce_is_idempotent(v in prop::collection::vec(letter(), 0..30)) {
        let once = reduce(&v);
        prop_assert_eq!(reduce(once.letters()), once);
    }

    #[test]
    fn reduce_of_product(u in prop::collection::vec(letter(), 0..20), v in prop::collection::vec(letter(), 0..20)) {
        let mut raw = u.clone();
        raw.extend_from_slice(&v);
        prop_assert_eq!(reduce(&raw), reduce(&u).mul(&reduce(&v)));
    }

    #[test]
    fn inverse_cancels(w in reduced(30)) {
        prop_assert!(w.mul(&w.inverse()).is_empty());
        prop_assert!(w.inverse().mul(&w).is_empty());
        let flipped: Vec<Letter> = w.letters().iter().rev().map(|x| x.inverse()).collect();
        prop_assert_eq!(w.inverse().letters().to_vec(), flipped);
    }

    #[test]
    fn multiplication_is_associative(x in reduced(12), y in reduced(12), z in reduced(12)) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn powers_add(w in reduced(8), n in -4i64..5, m in -4i64..5) {
        prop_assert_eq!(w.pow(n).mul(&w.pow(m)), w.pow(n + m));
    }

    #[test]
    fn cyclic_reduce_splits(w in reduced(24)) {
        let (x, core) = w.cyclic_reduce();
        prop_assert_eq!(x.mul(&core).mul(&x.inverse()), w.clone());
        let c = core.letters();
        if c.len() >= 2 {
            prop_assert_ne!(c[0], c[c.len() - 1].inverse());
        }
    }

    #[test]
    fn text_roundtrip(w in reduced(20)) {
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn class_is_rotation_invariant(w in even_alternating(20), k in 0usize..20) {
        let c = cyc_class(&w).unwrap();
        prop_assert_eq!(cyc_class(&w.rotate(k)).unwrap(), c);
    }
}

#[test]
fn rotations_of_even_words_alternate_exhaustive() {
    for len in (0..=10).step_by(2) {
        for i in 0..alt_word_count(len) {
            let w = nth_alt_word(len, i);
            for k in 0..len.max(1) {
                assert!(is_alternating(w.rotate(k).letters()), "{w} rotated by {k}");
            }
        }
    }
}

#[test]
fn classes_separate_rotation_orbits_exhaustive() {
    for len in (2..=10).step_by(2) {
        let mut seen = HashSet::new();
        let mut classes = HashSet::new();
        for i in 0..alt_word_count(len) {
            let w = nth_alt_word(len, i);
            if seen.contains(&w) {
                continue;
            }
            let orbit: Vec<AltWord> = (0..len).map(|k| w.rotate(k)).collect();
            let c = cyc_class(&w).unwrap();
            assert!(classes.insert(c.clone()), "two orbits share {c}");
            for r in orbit {
                assert_eq!(cyc_class(&r).unwrap(), c);
                seen.insert(r);
            }
        }
        assert_eq!(seen.len() as u64, alt_word_count(len));
    }
}

#[test]
fn enumerations_are_complete() {
    for len in 0..=6 {
        let words: HashSet<Word> = (0..reduced_word_count(len)).map(|i| nth_reduced_word(len, i)).collect();
        assert_eq!(words.len() as u64, reduced_word_count(len));
        assert!(words.iter().all(|w| w.len() == len));
        let alts: HashSet<AltWord> = (0..alt_word_count(len)).map(|i| nth_alt_word(len, i)).collect();
        assert_eq!(alts.len() as u64, alt_word_count(len));
    }
}

#[test]
fn parse_examples() {
    assert_eq!(word("a^-1 b^3"), word("Abbb"));
    assert_eq!(word("aA"), Word::identity());
    assert!(matches!(Word::parse("abx"), Err(FgError::Parse { .. })));
    assert!(matches!(AltWord::parse("aab"), Err(FgError::NotAlternating { .. })));
    assert!(matches!(cyc_class(&alt("aba")), Err(FgError::OddLength { len: 3 })));
    assert_eq!(commutator_power(-1), alt("baBA"));
}
