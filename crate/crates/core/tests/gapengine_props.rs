mod common;

use common::*;
use rand::Rng;
use sclgap_core::fgword::*;
use sclgap_core::gapengine::*;
use sclgap_core::letterqm::{F2SignQm, LetterQm};
use sclgap_core::par::{filter_map_range, Exec};
use sclgap_core::qm::Rational;

fn random_commutator_word<R: Rng>(r: &mut R, max: usize) -> Word {
    loop {
        let len = r.gen_range(2..=max);
        let w = random_reduced(r, len);
        if w.in_commutator_subgroup() && !w.is_empty() {
            return w;
        }
    }
}

#[test]
fn commutator_power_values() {
    let phi = F2SignQm::new();
    let (_, gp, cert) = free_certificate(&word("abAB")).unwrap();
    assert_eq!(cert.scl_lower_bound, Rational::new(1, 2));
    for n in 1..=6i64 {
        let g = gp.pow(n);
        assert_eq!(psi_eval(&cert, &phi, &g), 2 * n - 1);
    }
    let (_, _, cert2) = free_certificate(&word("abABabAB")).unwrap();
    assert_eq!(cert2.psi_bar, Rational::from_integer(4));
    assert!(cert2.is_extended_bound());
    assert_eq!(cert2.scl_lower_bound, Rational::from_integer(1));
}

#[test]
fn every_short_commutator_word_is_certified() {
    for len in 2..=8usize {
        let failures = filter_map_range(Exec::default(), reduced_word_count(len), |i| {
            let g = nth_reduced_word(len, i);
            if !g.in_commutator_subgroup() {
                return None;
            }
            match free_certificate(&g) {
                Ok((_, _, c)) if c.phi_bar >= Rational::from_integer(1) => None,
                other => Some(format!("{g}: {other:?}")),
            }
        });
        assert!(failures.is_empty(), "{failures:?}");
    }
}

#[test]
fn psi_has_unit_defect() {
    let phi = F2SignQm::new();
    let mut r = rng(61);
    for _ in 0..20 {
        let g0 = random_commutator_word(&mut r, 16);
        let (_, _, cert) = free_certificate(&g0).unwrap();
        for _ in 0..1000 {
            let (l1, l2) = (r.gen_range(0..=40), r.gen_range(0..=40));
            let g = random_reduced(&mut r, l1);
            let h = random_reduced(&mut r, l2);
            let d = psi_eval(&cert, &phi, &g) + psi_eval(&cert, &phi, &h) - psi_eval(&cert, &phi, &g.mul(&h));
            assert!(d == 1 || d == -1, "defect {d} for {g0} at {g}, {h}");
            let c = coboundary_value(&cert, &phi, &g, &h).unwrap();
            assert!(c <= 1);
        }
    }
}

#[test]
fn homogenization_matches_cyclic_value() {
    let phi = F2SignQm::new();
    let mut r = rng(62);
    for _ in 0..300 {
        let g0 = random_commutator_word(&mut r, 20);
        let (_, gp, cert) = free_certificate(&g0).unwrap();
        assert!(cert.depth() <= phi.image(&gp).len());
        assert!(cert.phi_bar >= Rational::from_integer(1));
        assert_eq!(phi_bar_eval(&cert, &phi, &gp).unwrap(), cert.phi_bar, "{g0}");
    }
}

#[test]
fn homogeneous_value_is_conjugation_invariant() {
    let phi = F2SignQm::new();
    let mut r = rng(63);
    for _ in 0..100 {
        let g0 = random_commutator_word(&mut r, 14);
        let (_, gp, cert) = free_certificate(&g0).unwrap();
        let base = phi_bar_eval(&cert, &phi, &gp).unwrap();
        for _ in 0..5 {
            let l = r.gen_range(1..=3);
            let x = random_reduced(&mut r, l);
            let conj = x.mul(&gp).mul(&x.inverse());
            assert_eq!(phi_bar_eval(&cert, &phi, &conj).unwrap(), base, "{gp} by {x}");
        }
    }
}

#[test]
fn homogeneous_defect_is_at_most_one() {
    let phi = F2SignQm::new();
    let mut r = rng(64);
    let one = Rational::from_integer(1);
    for _ in 0..10 {
        let g0 = random_commutator_word(&mut r, 12);
        let (_, _, cert) = free_certificate(&g0).unwrap();
        for _ in 0..100 {
            let (l1, l2) = (r.gen_range(1..=8), r.gen_range(1..=8));
            let g = random_reduced(&mut r, l1);
            let h = random_reduced(&mut r, l2);
            let f = |x: &Word| phi_bar_eval(&cert, &phi, x).unwrap();
            let d = f(&g) + f(&h) - f(&g.mul(&h));
            assert!(d <= one && d >= -one, "defect {d} for {g0} at {g}, {h}");
        }
    }
}

#[test]
fn out_of_scope_word_gives_one_half() {
    let (_, _, cert) = free_certificate(&word("abABaBBBAbbb")).unwrap();
    assert_eq!(cert.scl_lower_bound, Rational::new(1, 2));
    assert_eq!(cert.power, PowerEvidence::Structural);
}

#[test]
fn hypothesis_failures() {
    assert!(matches!(free_certificate(&word("aaaaa")), Err(GapError::NoCertificate(_))));
    assert!(matches!(free_certificate(&Word::identity()), Err(GapError::NoCertificate(_))));
    let (_, _, c) = free_certificate(&word("aab")).unwrap();
    assert_eq!(c.stabilization.branch.name(), "exits-commutator");
    assert!(matches!(stabilize(&EvenAltClass::trivial()), Err(GapError::TrivialInput)));
}
