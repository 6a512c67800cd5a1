//! Amalgamated free products `A ⋆_C B` driven by factor oracles.
//!
//! Both factors and the edge group live inside one carrier group, so an
//! element of `C` is literally an element of `A` and of `B`. Factor oracles
//! answer membership questions and give coset signs; everything else is
//! syllable bookkeeping.

use std::fmt::Debug;

use thiserror::Error;

use crate::fgword::{AltWord, Gen, Letter, Word};
use crate::gapengine::{certificate_for, GapCertificate, GapError};
use crate::letterqm::{FreeGroup2, GroupOracle, LetterQm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmalgamError {
    #[error("factor oracles are inconsistent: {0}")]
    OracleInconsistency(String),
    #[error("the element conjugates into a factor")]
    NotApplicable,
}

/// Membership and coset-sign access to one factor.
pub trait FactorOracle<E>: Sync {
    fn contains(&self, g: &E) -> bool;
    fn in_edge_group(&self, g: &E) -> bool;
    /// `0` exactly on the edge group, otherwise the sign of `g C` against `C`.
    fn sign(&self, g: &E) -> i8;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
    /// The edge group; only used for the single syllable of an element of `C`.
    C,
}

#[derive(Debug, Clone)]
pub struct Syllable<E> {
    pub side: Side,
    pub elem: E,
}

/// A normalized element: either one `C`-syllable, or syllables alternating
/// between the factors with none of them in `C`.
#[derive(Debug, Clone)]
pub struct AmalgamElement<E> {
    syllables: Vec<Syllable<E>>,
}

impl<E> AmalgamElement<E> {
    pub fn syllables(&self) -> &[Syllable<E>] {
        &self.syllables
    }

    pub fn in_edge_group(&self) -> bool {
        self.syllables.len() == 1 && self.syllables[0].side == Side::C
    }

    /// Syllable count, with an edge group element counting as zero.
    pub fn syllable_len(&self) -> usize {
        if self.in_edge_group() {
            0
        } else {
            self.syllables.len()
        }
    }
}

pub struct Amalgam<G, FA, FB> {
    pub carrier: G,
    pub a: FA,
    pub b: FB,
}

impl<G, FA, FB> Amalgam<G, FA, FB>
where
    G: GroupOracle,
    FA: FactorOracle<G::Element>,
    FB: FactorOracle<G::Element>,
{
    pub fn new(carrier: G, a: FA, b: FB) -> Self {
        Amalgam { carrier, a, b }
    }

    fn factor(&self, side: Side) -> &dyn FactorOracle<G::Element> {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
            Side::C => unreachable!("edge syllables have no single factor"),
        }
    }

    fn in_c(&self, g: &G::Element) -> bool {
        self.a.in_edge_group(g)
    }

    fn push(&self, out: &mut Vec<Syllable<G::Element>>, s: Syllable<G::Element>) {
        let is_c = s.side == Side::C || self.in_c(&s.elem);
        let Some(last) = out.last_mut() else {
            let side = if is_c { Side::C } else { s.side };
            out.push(Syllable { side, elem: s.elem });
            return;
        };
        if is_c {
            last.elem = self.carrier.multiply(&last.elem, &s.elem);
            return;
        }
        match last.side {
            Side::C => {
                last.elem = self.carrier.multiply(&last.elem, &s.elem);
                last.side = s.side;
            }
            side if side == s.side => {
                let merged = self.carrier.multiply(&last.elem, &s.elem);
                if self.in_c(&merged) {
                    out.pop();
                    self.push(
                        out,
                        Syllable {
                            side: Side::C,
                            elem: merged,
                        },
                    );
                } else {
                    last.elem = merged;
                }
            }
            _ => out.push(s),
        }
    }

    /// Normal form of a product of factor elements.
    pub fn normalize(
        &self,
        raw: Vec<Syllable<G::Element>>,
    ) -> Result<AmalgamElement<G::Element>, AmalgamError> {
        let mut out: Vec<Syllable<G::Element>> = Vec::with_capacity(raw.len());
        for s in raw {
            let ok = match s.side {
                Side::A => self.a.contains(&s.elem),
                Side::B => self.b.contains(&s.elem),
                Side::C => self.a.in_edge_group(&s.elem) && self.b.in_edge_group(&s.elem),
            };
            if !ok {
                return Err(AmalgamError::OracleInconsistency(format!(
                    "{:?} is not in its tagged factor {:?}",
                    s.elem, s.side
                )));
            }
            self.push(&mut out, s);
        }
        if out.is_empty() {
            out.push(Syllable {
                side: Side::C,
                elem: self.carrier.identity(),
            });
        }
        for s in &out {
            if s.side == Side::C {
                continue;
            }
            let f = self.factor(s.side);
            if f.in_edge_group(&s.elem) || f.sign(&s.elem) == 0 {
                return Err(AmalgamError::OracleInconsistency(format!(
                    "syllable {:?} outside the edge group has sign 0",
                    s.elem
                )));
            }
        }
        Ok(AmalgamElement { syllables: out })
    }

    pub fn element(
        &self,
        raw: Vec<(Side, G::Element)>,
    ) -> Result<AmalgamElement<G::Element>, AmalgamError> {
        self.normalize(raw.into_iter().map(|(side, elem)| Syllable { side, elem }).collect())
    }

    pub fn syllable_normal_form(
        &self,
        g: &AmalgamElement<G::Element>,
    ) -> Result<AmalgamElement<G::Element>, AmalgamError> {
        self.normalize(g.syllables.clone())
    }

    /// Coset signs of the syllables, `A`-letters for `A` and `b`-letters for `B`.
    pub fn phi_amalgam(&self, g: &AmalgamElement<G::Element>) -> AltWord {
        if g.in_edge_group() {
            return AltWord::empty();
        }
        let letters = g
            .syllables
            .iter()
            .map(|s| {
                let gen = if s.side == Side::A { Gen::A } else { Gen::B };
                Letter::new(gen, self.factor(s.side).sign(&s.elem) as i32)
            })
            .collect();
        AltWord::new(letters).expect("syllables alternate")
    }

    fn product(
        &self,
        g: &AmalgamElement<G::Element>,
        h: &AmalgamElement<G::Element>,
    ) -> Result<AmalgamElement<G::Element>, AmalgamError> {
        let raw = g.syllables.iter().chain(&h.syllables).cloned().collect();
        self.normalize(raw)
    }

    fn inverse(&self, g: &AmalgamElement<G::Element>) -> AmalgamElement<G::Element> {
        let syllables = g
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable {
                side: s.side,
                elem: self.carrier.invert(&s.elem),
            })
            .collect();
        AmalgamElement { syllables }
    }

    fn single(&self, s: &Syllable<G::Element>) -> AmalgamElement<G::Element> {
        AmalgamElement {
            syllables: vec![s.clone()],
        }
    }

    /// Cyclic syllable reduction. On success `g′ = x g x⁻¹` has an even number
    /// of syllables, starting in `A` and ending in `B`.
    pub fn alternating_conjugate(
        &self,
        g: &AmalgamElement<G::Element>,
    ) -> Result<(AmalgamElement<G::Element>, AmalgamElement<G::Element>), AmalgamError> {
        let mut x = self.normalize(Vec::new())?;
        let mut cur = self.syllable_normal_form(g)?;
        loop {
            let k = cur.syllable_len();
            if k <= 1 {
                return Err(AmalgamError::NotApplicable);
            }
            let first = &cur.syllables[0];
            let last = &cur.syllables[k - 1];
            let t = if first.side == last.side {
                self.single(last)
            } else if first.side == Side::B {
                self.inverse(&self.single(first))
            } else {
                return Ok((x, cur));
            };
            cur = self.product(&self.product(&t, &cur)?, &self.inverse(&t))?;
            x = self.product(&t, &x)?;
        }
    }

    pub fn amalgam_scl_bound(
        &self,
        g: &AmalgamElement<G::Element>,
    ) -> Result<(AmalgamElement<G::Element>, GapCertificate), GapError> {
        let (x, gp) = match self.alternating_conjugate(g) {
            Ok(pair) => pair,
            Err(AmalgamError::NotApplicable) => {
                return Err(GapError::NoCertificate(
                    "the element conjugates into a factor".into(),
                ))
            }
            Err(e) => return Err(GapError::Invariant(e.to_string())),
        };
        let cert = certificate_for(self, &gp)?;
        Ok((x, cert))
    }
}

impl<G, FA, FB> GroupOracle for Amalgam<G, FA, FB>
where
    G: GroupOracle,
    FA: FactorOracle<G::Element>,
    FB: FactorOracle<G::Element>,
{
    type Element = AmalgamElement<G::Element>;

    fn identity(&self) -> Self::Element {
        AmalgamElement {
            syllables: vec![Syllable {
                side: Side::C,
                elem: self.carrier.identity(),
            }],
        }
    }

    /// Panics if the oracles contradict each other; [`Amalgam::normalize`]
    /// reports the same condition as an error.
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element {
        self.product(g, h).unwrap_or_else(|e| panic!("{e}"))
    }

    fn invert(&self, g: &Self::Element) -> Self::Element {
        self.inverse(g)
    }

    fn equal(&self, g: &Self::Element, h: &Self::Element) -> bool {
        let d = self.multiply(g, &self.inverse(h));
        d.in_edge_group() && self.carrier.equal(&d.syllables[0].elem, &self.carrier.identity())
    }
}

impl<G, FA, FB> LetterQm for Amalgam<G, FA, FB>
where
    G: GroupOracle,
    FA: FactorOracle<G::Element>,
    FB: FactorOracle<G::Element>,
{
    type Group = Self;

    fn group(&self) -> &Self {
        self
    }

    fn image(&self, g: &AmalgamElement<G::Element>) -> AltWord {
        self.phi_amalgam(g)
    }

    fn structurally_power_compatible(&self, g: &AmalgamElement<G::Element>) -> bool {
        let s = g.syllables();
        let k = g.syllable_len();
        k >= 2 && k % 2 == 0 && s[0].side == Side::A && s[k - 1].side == Side::B
    }

    fn describe(&self) -> String {
        "amalgam sign map".to_string()
    }
}

/// `⟨x⟩` inside the free group on `a`, `b`, with the exponent sign.
#[derive(Debug, Clone, Copy)]
pub struct CyclicFactor(pub Gen);

impl FactorOracle<Word> for CyclicFactor {
    fn contains(&self, g: &Word) -> bool {
        g.letters().iter().all(|l| l.gen() == self.0)
    }

    fn in_edge_group(&self, g: &Word) -> bool {
        g.is_empty()
    }

    fn sign(&self, g: &Word) -> i8 {
        g.exp_sum(self.0).signum() as i8
    }
}

/// The free group as `ℤ ⋆ ℤ`.
pub type FreeProductZZ = Amalgam<FreeGroup2, CyclicFactor, CyclicFactor>;

pub fn free_product_zz() -> FreeProductZZ {
    Amalgam::new(FreeGroup2, CyclicFactor(Gen::A), CyclicFactor(Gen::B))
}

/// Splits a free group word into its generator syllables.
pub fn zz_element(z: &FreeProductZZ, w: &Word) -> AmalgamElement<Word> {
    let raw = w
        .letters()
        .iter()
        .map(|l| {
            let side = if l.gen() == Gen::A { Side::A } else { Side::B };
            (side, Word::from_letters(&[*l]))
        })
        .collect();
    z.element(raw).expect("cyclic factor oracles are exact")
}
