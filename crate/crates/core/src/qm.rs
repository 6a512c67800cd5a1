//! Counting quasimorphisms, letter-sum homomorphisms, cyclic evaluation on
//! classes, homogenization and sampled defects.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fgword::{inverse_letters, EvenAltClass, Gen, Letter, Word};
use crate::letterqm::GroupOracle;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QmError {
    #[error("first differences did not stabilize within horizon {horizon}")]
    NoStabilization { horizon: usize },
}

/// Occurrences of `v` in `g` as a contiguous subword, overlaps allowed.
pub fn nu(v: &[Letter], g: &[Letter]) -> i64 {
    assert!(!v.is_empty(), "pattern must be nonempty");
    if v.len() > g.len() {
        return 0;
    }
    g.windows(v.len()).filter(|win| *win == v).count() as i64
}

/// Brooks counting quasimorphism `ν_w − ν_{w⁻¹}`.
pub fn eta_word(w: &[Letter], g: &[Letter]) -> i64 {
    nu(w, g) - nu(&inverse_letters(w), g)
}

fn eta0_pair(x: Letter, y: Letter) -> i64 {
    use Letter::*;
    match (x, y) {
        (A, B) | (AInv, BInv) => 1,
        (B, A) | (BInv, AInv) => -1,
        _ => 0,
    }
}

/// `η₀ = η_ab − η_ba` on a reduced word.
pub fn eta0(g: &[Letter]) -> i64 {
    g.windows(2).map(|p| eta0_pair(p[0], p[1])).sum()
}

pub fn eta0_word(g: &Word) -> i64 {
    eta0(g.letters())
}

/// Sum of the two letter counts with a chosen sign each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LetterHom {
    pub x: Letter,
    pub y: Letter,
}

impl LetterHom {
    /// The selection order used by the engine.
    pub const CANDIDATES: [LetterHom; 4] = [
        LetterHom { x: Letter::A, y: Letter::B },
        LetterHom { x: Letter::A, y: Letter::BInv },
        LetterHom { x: Letter::AInv, y: Letter::B },
        LetterHom { x: Letter::AInv, y: Letter::BInv },
    ];

    pub fn new(x: Letter, y: Letter) -> LetterHom {
        assert!(x.gen() == Gen::A && y.gen() == Gen::B);
        LetterHom { x, y }
    }

    pub fn eval(&self, g: &[Letter]) -> i64 {
        g.iter()
            .map(|l| match l.gen() {
                Gen::A => (l.sign() * self.x.sign()) as i64,
                Gen::B => (l.sign() * self.y.sign()) as i64,
            })
            .sum()
    }
}

impl fmt::Display for LetterHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hom({},{})", self.x.to_char(), self.y.to_char())
    }
}

pub fn eta_hom(h: &LetterHom, g: &[Letter]) -> i64 {
    h.eval(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Functional {
    Eta0,
    Hom(LetterHom),
}

impl Functional {
    pub fn eval(&self, g: &[Letter]) -> i64 {
        match self {
            Functional::Eta0 => eta0(g),
            Functional::Hom(h) => h.eval(g),
        }
    }

    pub fn parse(s: &str) -> Option<Functional> {
        if s == "eta0" {
            return Some(Functional::Eta0);
        }
        let inner = s.strip_prefix("hom(")?.strip_suffix(')')?;
        let (x, y) = inner.split_once(',')?;
        let one = |t: &str| {
            let mut c = t.trim().chars();
            match (c.next(), c.next()) {
                (Some(ch), None) => Letter::from_char(ch),
                _ => None,
            }
        };
        let (x, y) = (one(x)?, one(y)?);
        (x.gen() == Gen::A && y.gen() == Gen::B).then_some(Functional::Hom(LetterHom { x, y }))
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::Eta0 => f.write_str("eta0"),
            Functional::Hom(h) => write!(f, "{h}"),
        }
    }
}

/// Homogeneous value on a class. For `η₀` this counts the length two windows
/// of the representative read cyclically.
pub fn cyclic_eval(f: &Functional, c: &EvenAltClass) -> i64 {
    let w = c.rep().letters();
    match f {
        Functional::Hom(h) => h.eval(w),
        Functional::Eta0 => {
            let n = w.len();
            (0..n).map(|i| eta0_pair(w[i], w[(i + 1) % n])).sum()
        }
    }
}

/// Slope of an eventually affine sequence `values[k] = f(g^{k+1})`: the run of
/// equal first differences must reach the end of the sequence and span at
/// least three steps.
pub fn affine_slope(values: &[i64]) -> Option<i64> {
    if values.len() < 4 {
        return None;
    }
    let diffs: Vec<i64> = values.windows(2).map(|p| p[1] - p[0]).collect();
    let last = *diffs.last()?;
    let run = diffs.iter().rev().take_while(|&&d| d == last).count();
    (run >= 3).then_some(last)
}

/// `lim f(gⁿ)/n` read off from `n = 1..=horizon`.
pub fn homogenize<G: GroupOracle>(
    group: &G,
    f: impl Fn(&G::Element) -> i64,
    g: &G::Element,
    horizon: usize,
) -> Result<Rational, QmError> {
    let horizon = horizon.max(4);
    let mut values = Vec::with_capacity(horizon);
    let mut power = g.clone();
    for n in 1..=horizon {
        if n > 1 {
            power = group.multiply(&power, g);
        }
        values.push(f(&power));
    }
    affine_slope(&values)
        .map(Rational::from_integer)
        .ok_or(QmError::NoStabilization { horizon })
}

/// Largest `|f(g) + f(h) − f(gh)|` over the sample.
pub fn sampled_defect<'a, G: GroupOracle + 'a>(
    group: &G,
    f: impl Fn(&G::Element) -> i64,
    pairs: impl IntoIterator<Item = (&'a G::Element, &'a G::Element)>,
) -> i64
where
    G::Element: 'a,
{
    pairs
        .into_iter()
        .map(|(g, h)| (f(g) + f(h) - f(&group.multiply(g, h))).abs())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgword::{cyc_class, AltWord};
    use crate::letterqm::FreeGroup2;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(w("ab").letters(), w("abAB").letters()), 1);
        assert_eq!(nu(w("aa").letters(), w("aaa").letters()), 2);
        assert_eq!(nu(w("BA").letters(), w("abABA").letters()), 1);
    }

    #[test]
    fn eta0_examples() {
        assert_eq!(eta0_word(&w("abAB")), 2);
        assert_eq!(eta0_word(&Word::identity()), 0);
        assert_eq!(eta0_word(&w("abABA")), 1);
    }

    #[test]
    fn eta0_matches_counting_definition() {
        for g in ["abAB", "abABA", "aabbABab", "BAbaBBa", "bababAAAB"] {
            let g = w(g);
            let l = g.letters();
            let direct = eta_word(w("ab").letters(), l) - eta_word(w("ba").letters(), l);
            assert_eq!(eta0(l), direct, "{g}");
        }
    }

    #[test]
    fn hom_examples() {
        let ab = LetterHom::new(Letter::A, Letter::B);
        assert_eq!(ab.eval(w("ab").letters()), 2);
        let ainv_b = LetterHom::new(Letter::AInv, Letter::B);
        assert_eq!(ainv_b.eval(w("bABA").letters()), 2);
        for h in LetterHom::CANDIDATES {
            assert_eq!(h.eval(w("abABbaBA").letters()), 0);
        }
    }

    #[test]
    fn cyclic_eval_examples() {
        let c = cyc_class(&AltWord::parse("abAB").unwrap()).unwrap();
        assert_eq!(cyclic_eval(&Functional::Eta0, &c), 2);
        assert_eq!(cyclic_eval(&Functional::Eta0, &EvenAltClass::trivial()), 0);
    }

    #[test]
    fn homogenize_examples() {
        let f2 = FreeGroup2;
        let c = w("abAB");
        assert_eq!(homogenize(&f2, |g| eta0_word(g), &c, 8), Ok(Rational::from_integer(2)));
        let h = LetterHom::new(Letter::A, Letter::BInv);
        let g = w("aabAb");
        assert_eq!(
            homogenize(&f2, |x| h.eval(x.letters()), &g, 5),
            Ok(Rational::from_integer(h.eval(g.letters())))
        );
    }

    #[test]
    fn affine_slope_needs_a_tail_run() {
        assert_eq!(affine_slope(&[0, 5, 1, 3, 5, 7]), Some(2));
        assert_eq!(affine_slope(&[0, 2, 4, 6, 7]), None);
        assert_eq!(affine_slope(&[1, 2, 3]), None);
    }

    #[test]
    fn functional_names_roundtrip() {
        for f in [Functional::Eta0]
            .into_iter()
            .chain(LetterHom::CANDIDATES.map(Functional::Hom))
        {
            assert_eq!(Functional::parse(&f.to_string()), Some(f));
        }
        assert_eq!(Functional::parse("hom(b,a)"), None);
    }
}
