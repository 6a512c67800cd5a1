//! Triples of alternating words, their equivalence moves, and the
//! letter-thin / degenerate classification.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::alphabeta::{alpha, beta};
use crate::fgword::{inverse_letters, random_alt, AltWord, Gen, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple(pub [AltWord; 3]);

impl Triple {
    pub fn new(x1: AltWord, x2: AltWord, x3: AltWord) -> Triple {
        Triple([x1, x2, x3])
    }

    pub fn map(&self, f: impl Fn(&AltWord) -> AltWord) -> Triple {
        Triple([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }

    pub fn alpha(&self) -> Triple {
        self.map(alpha)
    }

    pub fn beta(&self) -> Triple {
        self.map(beta)
    }

    pub fn rotate(&self) -> Triple {
        let [x1, x2, x3] = self.0.clone();
        Triple([x2, x3, x1])
    }

    pub fn flip(&self) -> Triple {
        let [x1, x2, x3] = &self.0;
        Triple([x3.inverse(), x2.inverse(), x1.inverse()])
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &AltWord| if w.is_empty() { "e".to_string() } else { w.to_string() };
        write!(f, "({}, {}, {})", show(&self.0[0]), show(&self.0[1]), show(&self.0[2]))
    }
}

/// An element of the 24 element group of moves: `rot^r ∘ flip^f ∘ φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Move {
    pub rot: u8,
    pub flip: bool,
    pub phi_a: bool,
    pub phi_b: bool,
}

impl Move {
    pub fn all() -> impl Iterator<Item = Move> {
        // sign changes vary fastest so witnesses prefer them over reorderings
        (0..24u8).map(|i| Move {
            phi_a: i % 2 == 1,
            phi_b: (i / 2) % 2 == 1,
            flip: (i / 4) % 2 == 1,
            rot: i / 8,
        })
    }

    fn apply_phi(&self, t: &Triple) -> Triple {
        let mut out = t.clone();
        if self.phi_a {
            out = out.map(|w| w.flip_sign_of(Gen::A));
        }
        if self.phi_b {
            out = out.map(|w| w.flip_sign_of(Gen::B));
        }
        out
    }

    pub fn apply(&self, t: &Triple) -> Triple {
        let mut out = self.apply_phi(t);
        if self.flip {
            out = out.flip();
        }
        for _ in 0..self.rot {
            out = out.rotate();
        }
        out
    }

    /// Undoes [`Move::apply`]. The sign automorphisms commute with the rest.
    pub fn apply_inverse(&self, t: &Triple) -> Triple {
        let mut out = t.clone();
        for _ in 0..(3 - self.rot) % 3 {
            out = out.rotate();
        }
        if self.flip {
            out = out.flip();
        }
        self.apply_phi(&out)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.phi_a {
            parts.push("phi_a".to_string());
        }
        if self.phi_b {
            parts.push("phi_b".to_string());
        }
        if self.flip {
            parts.push("flip".to_string());
        }
        if self.rot > 0 {
            parts.push(format!("rot^{}", self.rot));
        }
        if parts.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{}", parts.join(" then "))
        }
    }
}

pub fn equivalent_forms(t: &Triple) -> BTreeSet<Triple> {
    Move::all().map(|m| m.apply(t)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThinTag {
    T1a,
    T1b,
    T2a,
    T2b,
    Degenerate,
    None,
}

impl ThinTag {
    pub const PATTERNS: [ThinTag; 4] = [ThinTag::T1a, ThinTag::T1b, ThinTag::T2a, ThinTag::T2b];

    pub fn is_letter_thin(self) -> bool {
        matches!(self, ThinTag::T1a | ThinTag::T1b | ThinTag::T2a | ThinTag::T2b)
    }
}

impl fmt::Display for ThinTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ThinTag::T1a => "T1a",
            ThinTag::T1b => "T1b",
            ThinTag::T2a => "T2a",
            ThinTag::T2b => "T2b",
            ThinTag::Degenerate => "degenerate",
            ThinTag::None => "none",
        };
        f.write_str(s)
    }
}

/// The move taking the input to the pattern form, plus the pattern's words:
/// `c₁, c₂, c₃` for T1, `c₁, c₂` for T2, and `w` for a degenerate `(w, w⁻¹, e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub mv: Move,
    pub words: Vec<AltWord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinType {
    pub tag: ThinTag,
    pub witness: Option<Witness>,
}

impl ThinType {
    /// Rebuilds the original triple from the witness.
    pub fn reassemble(&self) -> Option<Triple> {
        let w = self.witness.as_ref()?;
        let form = pattern_triple(self.tag, &w.words)?;
        Some(w.mv.apply_inverse(&form))
    }
}

impl fmt::Display for ThinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if let Some(w) = &self.witness {
            let names: &[&str] = match self.tag {
                ThinTag::Degenerate => &["w"],
                _ => &["c1", "c2", "c3"],
            };
            write!(f, " via {}", w.mv)?;
            for (name, word) in names.iter().zip(&w.words) {
                let s = if word.is_empty() { "e".to_string() } else { word.to_string() };
                write!(f, ", {name}={s}")?;
            }
        }
        Ok(())
    }
}

fn cat(parts: &[&[Letter]]) -> Option<AltWord> {
    AltWord::concat(parts).ok()
}

/// Literal pattern instance; `None` if the pieces do not alternate.
pub fn pattern_triple(tag: ThinTag, words: &[AltWord]) -> Option<Triple> {
    let inv = |w: &AltWord| inverse_letters(w.letters());
    match tag {
        ThinTag::T1a | ThinTag::T1b => {
            let [c1, c2, c3] = words else { return None };
            let (p, q) = if tag == ThinTag::T1a {
                (Letter::A, Letter::B)
            } else {
                (Letter::B, Letter::A)
            };
            Some(Triple::new(
                cat(&[&inv(c1), &[p, q], c2.letters()])?,
                cat(&[&inv(c2), &[q.inverse(), p], c3.letters()])?,
                cat(&[&inv(c3), &[p.inverse()], c1.letters()])?,
            ))
        }
        ThinTag::T2a | ThinTag::T2b => {
            let [c1, c2] = words else { return None };
            let (p, q) = if tag == ThinTag::T2a {
                (Letter::B, Letter::A)
            } else {
                (Letter::A, Letter::B)
            };
            Some(Triple::new(
                cat(&[&inv(c1), &[p.inverse(), q, p], c2.letters()])?,
                cat(&[&inv(c2), &[p.inverse()]])?,
                cat(&[&[p], c1.letters()])?,
            ))
        }
        ThinTag::Degenerate => {
            let [w] = words else { return None };
            Some(Triple::new(w.clone(), w.inverse(), AltWord::empty()))
        }
        ThinTag::None => None,
    }
}

fn alt_of(v: &[Letter]) -> AltWord {
    AltWord::new(v.to_vec()).expect("subword of an alternating word")
}

fn strip_prefix<'a>(w: &'a [Letter], p: &[Letter]) -> Option<&'a [Letter]> {
    w.strip_prefix(p)
}

fn match_t1(form: &Triple, p: Letter, q: Letter) -> Option<Vec<AltWord>> {
    let [x1, x2, x3] = &form.0;
    let (x1, x2, x3) = (x1.letters(), x2.letters(), x3.letters());
    for pos in (0..x3.len()).filter(|&i| x3[i] == p.inverse()) {
        let c3 = inverse_letters(&x3[..pos]);
        let c1 = &x3[pos + 1..];
        let Some(rest) = strip_prefix(x1, &inverse_letters(c1)) else { continue };
        let Some(c2) = strip_prefix(rest, &[p, q]) else { continue };
        let mut expect2 = inverse_letters(c2);
        expect2.extend_from_slice(&[q.inverse(), p]);
        expect2.extend_from_slice(&c3);
        if expect2 == x2 {
            return Some(vec![alt_of(c1), alt_of(c2), alt_of(&c3)]);
        }
    }
    None
}

fn match_t2(form: &Triple, p: Letter, q: Letter) -> Option<Vec<AltWord>> {
    let [x1, x2, x3] = &form.0;
    let (x1, x2, x3) = (x1.letters(), x2.letters(), x3.letters());
    let c1 = x3.strip_prefix(&[p])?;
    let c2inv = x2.strip_suffix(&[p.inverse()])?;
    let c2 = inverse_letters(c2inv);
    let mut expect1 = inverse_letters(c1);
    expect1.extend_from_slice(&[p.inverse(), q, p]);
    expect1.extend_from_slice(&c2);
    (expect1 == x1).then(|| vec![alt_of(c1), alt_of(&c2)])
}

/// Solves for the pattern words of `tag` on this exact form.
pub fn match_pattern(tag: ThinTag, form: &Triple) -> Option<Vec<AltWord>> {
    match tag {
        ThinTag::T1a => match_t1(form, Letter::A, Letter::B),
        ThinTag::T1b => match_t1(form, Letter::B, Letter::A),
        ThinTag::T2a => match_t2(form, Letter::B, Letter::A),
        ThinTag::T2b => match_t2(form, Letter::A, Letter::B),
        ThinTag::Degenerate => {
            let [x1, x2, x3] = &form.0;
            (x3.is_empty() && *x2 == x1.inverse()).then(|| vec![x1.clone()])
        }
        ThinTag::None => None,
    }
}

/// First move putting `t` into the shape of `tag`, with its pattern words.
pub fn find_witness(tag: ThinTag, t: &Triple) -> Option<Witness> {
    Move::all().find_map(|mv| {
        match_pattern(tag, &mv.apply(t)).map(|words| Witness { mv, words })
    })
}

pub fn is_degenerate(t: &Triple) -> bool {
    let x = &t.0;
    (0..3).any(|i| x[i].is_empty() && x[(i + 1) % 3] == x[(i + 2) % 3].inverse())
}

pub fn classify(t: &Triple) -> ThinType {
    let order = [
        ThinTag::Degenerate,
        ThinTag::T1a,
        ThinTag::T1b,
        ThinTag::T2a,
        ThinTag::T2b,
    ];
    if !is_degenerate(t) && t.0.iter().any(|x| x.is_empty()) {
        // letter-thin triples have three nonempty sides
        return ThinType {
            tag: ThinTag::None,
            witness: None,
        };
    }
    for tag in order {
        if let Some(witness) = find_witness(tag, t) {
            return ThinType {
                tag,
                witness: Some(witness),
            };
        }
    }
    ThinType {
        tag: ThinTag::None,
        witness: None,
    }
}

/// Random letter-thin instance of a given tag, before any move is applied.
/// The `c`-words have random length up to `size_bound` and start with the
/// generator the pattern forces.
pub fn gen_pattern<R: Rng + ?Sized>(rng: &mut R, tag: ThinTag, size_bound: usize) -> (Vec<AltWord>, Triple) {
    let starts: &[Gen] = match tag {
        ThinTag::T1a => &[Gen::B, Gen::A, Gen::B],
        ThinTag::T1b => &[Gen::A, Gen::B, Gen::A],
        ThinTag::T2a => &[Gen::A, Gen::A],
        ThinTag::T2b => &[Gen::B, Gen::B],
        _ => panic!("not a letter-thin pattern: {tag}"),
    };
    let words: Vec<AltWord> = starts
        .iter()
        .map(|&g| {
            let len = rng.gen_range(0..=size_bound);
            random_alt(rng, len, Some(g))
        })
        .collect();
    let t = pattern_triple(tag, &words).expect("boundary letters chosen compatibly");
    (words, t)
}

/// A random letter-thin triple: uniform pattern type, random `c`-words, and a
/// uniformly random equivalence move.
pub fn gen_letter_thin<R: Rng + ?Sized>(rng: &mut R, size_bound: usize) -> Triple {
    let tag = ThinTag::PATTERNS[rng.gen_range(0..4)];
    let (_, t) = gen_pattern(rng, tag, size_bound);
    let mv = Move::all().nth(rng.gen_range(0..24)).expect("24 moves");
    mv.apply(&t)
}
