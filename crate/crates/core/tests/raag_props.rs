mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use sclgap_core::fgword::Word;
use sclgap_core::gapengine::{free_certificate, GapError};
use sclgap_core::qm::Rational;
use sclgap_core::raag::*;

fn graphs() -> Vec<Raag> {
    vec![
        path3(),
        cycle5(),
        Raag::new(Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")]).unwrap()),
        Raag::new(Graph::new(&["a", "b", "c"], &[]).unwrap()),
    ]
}

fn inverse_raw(raw: &[RLetter]) -> Vec<RLetter> {
    raw.iter().rev().map(|l| l.inverse()).collect()
}

proptest! {
    #[test]
    fn inverse_normal_forms_cancel(raw in raw_raag(5, 20)) {
        let r = cycle5();
        let g = r.normal_form(&raw);
        let gi = r.normal_form(&inverse_raw(&raw));
        prop_assert!(r.mul(&g, &gi).is_empty());
        prop_assert_eq!(r.normal_form(g.letters()), g);
    }

    #[test]
    fn normal_form_ignores_relators(raw in raw_raag(5, 16), pos in any::<prop::sample::Index>(), v in 0usize..5, inv in any::<bool>()) {
        let r = cycle5();
        let g = r.normal_form(&raw);
        let mut padded = raw.clone();
        let i = pos.index(raw.len() + 1);
        let x = RLetter::new(v, inv);
        padded.splice(i..i, [x, x.inverse()]);
        prop_assert_eq!(r.normal_form(&padded), g.clone());
        let mut swapped = raw.clone();
        for k in 0..swapped.len().saturating_sub(1) {
            if r.graph.adjacent(swapped[k].v as usize, swapped[k + 1].v as usize) {
                swapped.swap(k, k + 1);
            }
        }
        prop_assert_eq!(r.normal_form(&swapped), g);
    }

    #[test]
    fn multiplication_is_associative(a in raw_raag(4, 10), b in raw_raag(4, 10), c in raw_raag(4, 10)) {
        let r = graphs().swap_remove(2);
        let (x, y, z) = (r.normal_form(&a), r.normal_form(&b), r.normal_form(&c));
        prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
    }
}

#[test]
fn inverse_cancellation_randomized() {
    let mut rg = rng(91);
    for r in graphs() {
        for _ in 0..2500 {
            let len = rg.gen_range(0..24);
            let raw: Vec<RLetter> = (0..len).map(|_| RLetter::new(rg.gen_range(0..r.graph.len()), rg.gen())).collect();
            let mut both = raw.clone();
            both.extend(inverse_raw(&raw));
            assert!(r.normal_form(&both).is_empty());
        }
    }
}

#[test]
fn commutators_vanish_exactly_on_edges() {
    for r in graphs() {
        for u in 0..r.graph.len() {
            for v in 0..r.graph.len() {
                let c = r.commutator(&r.generator(u), &r.generator(v));
                assert_eq!(c.is_empty(), u == v || r.graph.adjacent(u, v), "{u} {v}");
            }
        }
    }
}

#[test]
fn cyclic_reduction_is_minimal_among_sampled_conjugates() {
    let mut rg = rng(92);
    for r in graphs() {
        for _ in 0..250 {
            let len = rg.gen_range(0..14);
            let g = r.random_word(&mut rg, len);
            let (x, core) = r.cyclic_reduce(&g);
            assert_eq!(r.mul(&r.mul(&x, &core), &r.inv(&x)), g);
            assert_eq!(core.support() & !g.support(), 0);
            for _ in 0..4 {
                let l = rg.gen_range(0..=3);
                let y = r.random_word(&mut rg, l);
                let conj = r.mul(&r.mul(&y, &g), &r.inv(&y));
                assert!(core.len() <= conj.len());
                assert_eq!(r.cyclic_reduce(&conj).1.len(), core.len());
            }
        }
    }
}

#[test]
fn retraction_is_a_homomorphism_and_detects_membership() {
    let mut rg = rng(93);
    for r in graphs() {
        let n = r.graph.len();
        for _ in 0..1000 {
            let lambda = rg.gen_range(0..(1u64 << n));
            let g = r.random_word(&mut rg, 10);
            let h = r.random_word(&mut rg, 10);
            let lhs = r.retract(lambda, &r.mul(&g, &h));
            let rhs = r.mul(&r.retract(lambda, &g), &r.retract(lambda, &h));
            assert_eq!(lhs, rhs);
            let m = r.random_word_in(&mut rg, 8, lambda);
            assert_eq!(r.retract(lambda, &m), m);
            assert_eq!(g.support() & !lambda == 0, r.retract(lambda, &g) == g);
        }
    }
}

#[test]
fn clique_examples() {
    let r = path3();
    assert!(!r.conjugates_into_clique(&r.parse("acAC").unwrap()));
    assert!(r.conjugates_into_clique(&r.parse("abb").unwrap()));
    assert!(r.conjugates_into_clique(&r.parse("bcBcbC").unwrap()));
    assert!(matches!(r.raag_certificate(&r.parse("abb").unwrap()), Err(GapError::NoCertificate(_))));
}

#[test]
fn commutator_elements_with_free_support_are_certified() {
    let mut rg = rng(94);
    for r in graphs() {
        let mut issued = 0;
        for _ in 0..400 {
            let u = r.random_word(&mut rg, 4);
            let v = r.random_word(&mut rg, 4);
            let g = r.commutator(&u, &v);
            if g.is_empty() || r.conjugates_into_clique(&g) {
                continue;
            }
            assert!(r.in_commutator_subgroup(&g));
            let c = r.raag_certificate(&g).unwrap_or_else(|e| panic!("{}: {e}", r.format(&g)));
            assert!(c.cert.phi_bar >= Rational::from_integer(1));
            assert!(c.cert.scl_lower_bound >= Rational::new(1, 2));
            issued += 1;
        }
        if r.graph.len() > 3 || r.graph.to_spec().edges.len() < 2 {
            assert!(issued > 50);
        }
    }
}

#[test]
fn five_cycle_matches_free_retraction() {
    let r = cycle5();
    let g = r.parse("acAC").unwrap();
    let via_raag = r.raag_certificate(&g).unwrap().cert.scl_lower_bound;
    let lambda = r.graph.set_of(&["a", "c"]).unwrap();
    let image = r.retract(lambda, &g);
    let word = Word::parse(&r.format(&image).replace('c', "b").replace('C', "B")).unwrap();
    let (_, _, free) = free_certificate(&word).unwrap();
    assert_eq!(via_raag, Rational::new(1, 2));
    assert_eq!(via_raag, free.scl_lower_bound);
}

#[test]
fn graph_spec_roundtrip() {
    for r in graphs() {
        assert_eq!(Graph::from_spec(&r.graph.to_spec()).unwrap(), r.graph);
    }
}
