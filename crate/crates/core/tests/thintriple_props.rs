mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use sclgap_core::fgword::*;
use sclgap_core::thintriple::*;

fn triple(a: &str, b: &str, c: &str) -> Triple {
    Triple::new(alt(a), alt(b), alt(c))
}

proptest! {
    #[test]
    fn classification_is_constant_on_orbits(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = if r.gen_bool(0.5) {
            gen_letter_thin(&mut r, 5)
        } else {
            let l = [r.gen_range(0..5), r.gen_range(0..5), r.gen_range(0..5)];
            Triple::new(random_alt(&mut r, l[0], None), random_alt(&mut r, l[1], None), random_alt(&mut r, l[2], None))
        };
        let tag = classify(&t).tag;
        for form in equivalent_forms(&t) {
            prop_assert_eq!(classify(&form).tag, tag, "{} vs {}", t, form);
        }
    }

    #[test]
    fn witnesses_reassemble(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = gen_letter_thin(&mut r, 6);
        let c = classify(&t);
        prop_assert!(c.tag.is_letter_thin());
        prop_assert_eq!(c.reassemble(), Some(t));
    }

    #[test]
    fn maps_preserve_letter_thin(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = gen_letter_thin(&mut r, 6);
        prop_assert!(classify(&t.alpha()).tag.is_letter_thin(), "alpha of {}", t);
        prop_assert!(classify(&t.beta()).tag.is_letter_thin(), "beta of {}", t);
    }

    #[test]
    fn maps_preserve_degenerate(w in alternating(16)) {
        let t = Triple::new(w.clone(), w.inverse(), AltWord::empty());
        prop_assert_eq!(classify(&t).tag, ThinTag::Degenerate);
        prop_assert_eq!(classify(&t.alpha()).tag, ThinTag::Degenerate);
        prop_assert_eq!(classify(&t.beta()).tag, ThinTag::Degenerate);
    }

    #[test]
    fn type_one_products_are_conjugate_to_a_letter(seed in any::<u64>()) {
        let mut r = rng(seed);
        let tag = if r.gen() { ThinTag::T1a } else { ThinTag::T1b };
        let (_, t) = gen_pattern(&mut r, tag, 6);
        let [x1, x2, x3] = &t.0;
        let prod = x1.to_word().mul(&x2.to_word()).mul(&x3.to_word());
        prop_assert_eq!(prod.cyclic_reduce().1.len(), 1);
    }
}

/// Random word that is empty or starts with a `b`-letter.
fn d_word<R: Rng>(r: &mut R) -> AltWord {
    let len = if r.gen_bool(0.3) { 0 } else { r.gen_range(1..=5) };
    random_alt(r, len, Some(Gen::B))
}

#[test]
fn d_form_criterion_agrees_with_search() {
    let mut r = rng(31);
    let mut seen = [0usize; 2];
    for _ in 0..5000 {
        let d: Vec<AltWord> = (0..3).map(|_| d_word(&mut r)).collect();
        let x: [Letter; 3] = loop {
            let x = [0, 1, 2].map(|_| if r.gen() { Letter::A } else { Letter::AInv });
            if !(x[0] == x[1] && x[1] == x[2]) {
                break x;
            }
        };
        let side = |i: usize| {
            let j = (i + 1) % 3;
            AltWord::concat(&[d[i].inverse().letters(), &[x[i]], d[j].letters()]).unwrap()
        };
        let t = Triple::new(side(0), side(1), side(2));
        let i = (0..3).find(|&i| x[i] == x[(i + 1) % 3]).unwrap();
        let predicted = !d[(i + 1) % 3].is_empty();
        let found = classify(&t).tag == ThinTag::T1a;
        assert_eq!(found, predicted, "{t} with d = {d:?}");
        seen[predicted as usize] += 1;
    }
    assert!(seen[0] > 100 && seen[1] > 100);
}

#[test]
fn worked_examples() {
    assert_eq!(classify(&triple("a", "a", "A")).tag, ThinTag::None);
    assert_eq!(classify(&triple("BA", "Ab", "Bab")).tag, ThinTag::None);
    assert!(classify(&triple("BAb", "BA", "ab")).tag.is_letter_thin());
    assert_eq!(classify(&triple("ab", "Ba", "A")).tag, ThinTag::T1a);
    assert_eq!(classify(&triple("abA", "aBA", "")).tag, ThinTag::Degenerate);
    assert_eq!(classify(&triple("ab", "", "a")).tag, ThinTag::None);
}

#[test]
fn move_group_has_24_distinct_elements() {
    let t = triple("abA", "bA", "aB");
    let images: std::collections::HashSet<Triple> = Move::all().map(|m| m.apply(&t)).collect();
    assert_eq!(Move::all().count(), 24);
    assert!(images.len() > 1);
    for m in Move::all() {
        assert_eq!(m.apply_inverse(&m.apply(&t)), t);
    }
}
