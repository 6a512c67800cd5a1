#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sclgap_core::fgword::{reduce, AltWord, Letter, Word};
use sclgap_core::raag::{Graph, Raag, RaagElement, RLetter};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn word(s: &str) -> Word {
    Word::parse(s).unwrap()
}

pub fn alt(s: &str) -> AltWord {
    AltWord::parse(s).unwrap()
}

pub fn letter() -> impl Strategy<Value = Letter> {
    (0usize..4).prop_map(|i| Letter::ALL[i])
}

/// Reduced word obtained from up to `max` random letters.
pub fn reduced(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(|v| reduce(&v))
}

/// Alternating word of length in `0..=max`.
pub fn alternating(max: usize) -> impl Strategy<Value = AltWord> {
    (0..=max, any::<bool>(), prop::collection::vec(any::<bool>(), max)).prop_map(
        |(len, start_a, signs)| {
            let mut out = Vec::with_capacity(len);
            let mut a = start_a;
            for s in signs.into_iter().take(len) {
                let x = match (a, s) {
                    (true, true) => Letter::A,
                    (true, false) => Letter::AInv,
                    (false, true) => Letter::B,
                    (false, false) => Letter::BInv,
                };
                out.push(x);
                a = !a;
            }
            AltWord::new(out).unwrap()
        },
    )
}

pub fn even_alternating(max: usize) -> impl Strategy<Value = AltWord> {
    alternating(max).prop_map(|w| {
        let mut v = w.into_letters();
        if v.len() % 2 == 1 {
            v.pop();
        }
        AltWord::new(v).unwrap()
    })
}

pub fn path3() -> Raag {
    Raag::new(Graph::path(&["a", "b", "c"]))
}

pub fn cycle5() -> Raag {
    Raag::new(Graph::cycle(&["a", "b", "c", "d", "e"]))
}

/// Raw letters over `n` vertices.
pub fn raw_raag(n: usize, max: usize) -> impl Strategy<Value = Vec<RLetter>> {
    prop::collection::vec((0..n, any::<bool>()), 0..=max)
        .prop_map(|v| v.into_iter().map(|(i, inv)| RLetter::new(i, inv)).collect())
}

pub fn raag_elem(r: &Raag, max: usize) -> impl Strategy<Value = RaagElement> {
    let r = r.clone();
    raw_raag(r.graph.len(), max).prop_map(move |raw| r.normal_form(&raw))
}
