//! Words in the free group on `a`, `b`.
//!
//! Text syntax: lowercase letters are generators and uppercase letters their
//! inverses, so `"abAB"` is the commutator `[a,b]`. Whitespace separated tokens
//! such as `a^-1 b^3` are accepted as well.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FgError {
    #[error("letters {pos} and {} share a generator", pos + 1)]
    NotAlternating { pos: usize },
    #[error("expected an even length word, got length {len}")]
    OddLength { len: usize },
    #[error("cannot parse word token `{token}`")]
    Parse { token: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    A,
    B,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::A => Gen::B,
            Gen::B => Gen::A,
        }
    }
}

/// One of the four letters. The derived order `a < A < b < B` is the fixed
/// order used for canonical class representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn new(gen: Gen, sign: i32) -> Letter {
        match (gen, sign > 0) {
            (Gen::A, true) => Letter::A,
            (Gen::A, false) => Letter::AInv,
            (Gen::B, true) => Letter::B,
            (Gen::B, false) => Letter::BInv,
        }
    }

    pub fn gen(self) -> Gen {
        match self {
            Letter::A | Letter::AInv => Gen::A,
            Letter::B | Letter::BInv => Gen::B,
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Letter::A | Letter::B => 1,
            Letter::AInv | Letter::BInv => -1,
        }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn swap(self) -> Letter {
        Letter::new(self.gen().other(), self.sign())
    }

    /// Flips the sign when the letter belongs to `gen` (the automorphisms φ_a, φ_b).
    pub fn flip_sign_of(self, gen: Gen) -> Letter {
        if self.gen() == gen {
            self.inverse()
        } else {
            self
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::AInv),
            'b' => Some(Letter::B),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }
}

/// Free reduction with a stack.
pub fn reduce(raw: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
    for &x in raw {
        if out.last() == Some(&x.inverse()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    Word(out)
}

pub fn inverse_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|x| x.inverse()).collect()
}

pub fn is_alternating(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0].gen() != p[1].gen())
}

fn fmt_letters(w: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for x in w {
        write!(f, "{}", x.to_char())?;
    }
    Ok(())
}

/// Parses raw (unreduced) letters from text.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>, FgError> {
    let s = s.trim();
    if s.is_empty() || s == "e" || s == "1" {
        return Ok(Vec::new());
    }
    let tokenized = s.contains(char::is_whitespace) || s.contains('^');
    if !tokenized {
        return s
            .chars()
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| FgError::Parse {
                    token: c.to_string(),
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let bad = || FgError::Parse {
            token: tok.to_string(),
        };
        let (base, exp) = match tok.split_once('^') {
            Some((base, exp)) => (base, exp.parse::<i64>().map_err(|_| bad())?),
            None => (tok, 1),
        };
        let mut chars = base.chars();
        let letter = match (chars.next(), chars.next()) {
            (Some(c), None) => Letter::from_char(c).ok_or_else(bad)?,
            _ => return Err(bad()),
        };
        let letter = if exp < 0 { letter.inverse() } else { letter };
        for _ in 0..exp.unsigned_abs() {
            out.push(letter);
        }
    }
    Ok(out)
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(raw: &[Letter]) -> Word {
        reduce(raw)
    }

    pub fn parse(s: &str) -> Result<Word, FgError> {
        Ok(reduce(&parse_letters(s)?))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(inverse_letters(&self.0))
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &x in &other.0 {
            if out.last() == Some(&x.inverse()) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn exp_sum(&self, g: Gen) -> i64 {
        self.0
            .iter()
            .filter(|x| x.gen() == g)
            .map(|x| x.sign() as i64)
            .sum()
    }

    pub fn in_commutator_subgroup(&self) -> bool {
        self.exp_sum(Gen::A) == 0 && self.exp_sum(Gen::B) == 0
    }

    pub fn swap_generators(&self) -> Word {
        Word(self.0.iter().map(|x| x.swap()).collect())
    }

    /// Splits `self = x · core · x⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let w = &self.0;
        let mut k = 0;
        while 2 * k + 1 < w.len() && w[k] == w[w.len() - 1 - k].inverse() {
            k += 1;
        }
        (Word(w[..k].to_vec()), Word(w[k..w.len() - k].to_vec()))
    }

    pub fn as_alternating(&self) -> Result<AltWord, FgError> {
        AltWord::new(self.0.clone())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

/// A word whose letters alternate between `a`-letters and `b`-letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AltWord(Vec<Letter>);

impl AltWord {
    pub fn new(letters: Vec<Letter>) -> Result<AltWord, FgError> {
        match letters.windows(2).position(|p| p[0].gen() == p[1].gen()) {
            Some(pos) => Err(FgError::NotAlternating { pos }),
            None => Ok(AltWord(letters)),
        }
    }

    pub fn parse(s: &str) -> Result<AltWord, FgError> {
        Word::parse(s)?.as_alternating()
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> AltWord {
        debug_assert!(is_alternating(&letters));
        AltWord(letters)
    }

    pub fn empty() -> AltWord {
        AltWord(Vec::new())
    }

    pub fn letter(x: Letter) -> AltWord {
        AltWord(vec![x])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn inverse(&self) -> AltWord {
        AltWord(inverse_letters(&self.0))
    }

    pub fn swap_generators(&self) -> AltWord {
        AltWord(self.0.iter().map(|x| x.swap()).collect())
    }

    pub fn flip_sign_of(&self, gen: Gen) -> AltWord {
        AltWord(self.0.iter().map(|x| x.flip_sign_of(gen)).collect())
    }

    pub fn exp_sum(&self, g: Gen) -> i64 {
        self.0
            .iter()
            .filter(|x| x.gen() == g)
            .map(|x| x.sign() as i64)
            .sum()
    }

    pub fn rotate(&self, k: usize) -> AltWord {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        AltWord(v)
    }

    /// Literal concatenation, rejected unless the result alternates.
    pub fn concat(parts: &[&[Letter]]) -> Result<AltWord, FgError> {
        let v: Vec<Letter> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        AltWord::new(v)
    }

    /// `w^n` for even length `w`, which is alternating as written.
    pub fn pow_even(&self, n: usize) -> AltWord {
        debug_assert!(self.0.len() % 2 == 0);
        AltWord(self.0.repeat(n))
    }
}

impl fmt::Display for AltWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.0, f)
    }
}

/// Conjugacy class of an even length alternating word, stored as its
/// lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EvenAltClass(AltWord);

impl EvenAltClass {
    pub fn trivial() -> EvenAltClass {
        EvenAltClass(AltWord::empty())
    }

    pub fn rep(&self) -> &AltWord {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_commutator_subgroup(&self) -> bool {
        self.0.exp_sum(Gen::A) == 0 && self.0.exp_sum(Gen::B) == 0
    }

    pub fn rotations(&self) -> impl Iterator<Item = AltWord> + '_ {
        (0..self.0.len().max(1)).map(move |k| self.0.rotate(k))
    }
}

impl fmt::Display for EvenAltClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

pub fn least_rotation(w: &[Letter]) -> Vec<Letter> {
    let n = w.len();
    let mut best = 0;
    for k in 1..n {
        let cand = w[k..].iter().chain(&w[..k]);
        let cur = w[best..].iter().chain(&w[..best]);
        if cand.lt(cur) {
            best = k;
        }
    }
    let mut v = w.to_vec();
    v.rotate_left(best);
    v
}

pub fn cyc_class(w: &AltWord) -> Result<EvenAltClass, FgError> {
    if w.len() % 2 == 1 {
        return Err(FgError::OddLength { len: w.len() });
    }
    Ok(EvenAltClass(AltWord(least_rotation(&w.0))))
}

/// `[a,b]^k` as a word; negative `k` gives powers of `[b,a]`.
pub fn commutator_power(k: i64) -> AltWord {
    let base = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];
    let base = if k < 0 { inverse_letters(&base) } else { base.to_vec() };
    AltWord(base.repeat(k.unsigned_abs() as usize))
}

/// Number of reduced words of length exactly `len`.
pub fn reduced_word_count(len: usize) -> u64 {
    if len == 0 {
        1
    } else {
        4 * 3u64.pow(len as u32 - 1)
    }
}

/// The `idx`-th reduced word of length `len` in a fixed enumeration.
pub fn nth_reduced_word(len: usize, mut idx: u64) -> Word {
    if len == 0 {
        return Word::identity();
    }
    let mut digits = vec![0u8; len];
    for d in digits.iter_mut().skip(1).rev() {
        *d = (idx % 3) as u8;
        idx /= 3;
    }
    digits[0] = idx as u8;
    let mut out = Vec::with_capacity(len);
    let mut prev = Letter::ALL[digits[0] as usize];
    out.push(prev);
    for &d in &digits[1..] {
        let forbidden = prev.inverse();
        let next = Letter::ALL
            .iter()
            .copied()
            .filter(|&x| x != forbidden)
            .nth(d as usize)
            .expect("three choices");
        out.push(next);
        prev = next;
    }
    Word(out)
}

/// Number of alternating words of length exactly `len`.
pub fn alt_word_count(len: usize) -> u64 {
    if len == 0 {
        1
    } else {
        4 * 2u64.pow(len as u32 - 1)
    }
}

/// The `idx`-th alternating word of length `len` in a fixed enumeration.
pub fn nth_alt_word(len: usize, idx: u64) -> AltWord {
    if len == 0 {
        return AltWord::empty();
    }
    let first = Letter::ALL[(idx >> (len - 1)) as usize];
    let mut out = Vec::with_capacity(len);
    out.push(first);
    let mut gen = first.gen();
    for i in (0..len - 1).rev() {
        gen = gen.other();
        let sign = if (idx >> i) & 1 == 0 { 1 } else { -1 };
        out.push(Letter::new(gen, sign));
    }
    AltWord(out)
}

pub fn random_letter<R: Rng + ?Sized>(rng: &mut R) -> Letter {
    Letter::ALL[rng.gen_range(0..4)]
}

/// Uniform reduced word of the given length.
pub fn random_reduced<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let x = random_letter(rng);
        if out.last() != Some(&x.inverse()) {
            out.push(x);
        }
    }
    Word(out)
}

/// Random alternating word; `start` fixes the generator of the first letter.
pub fn random_alt<R: Rng + ?Sized>(rng: &mut R, len: usize, start: Option<Gen>) -> AltWord {
    if len == 0 {
        return AltWord::empty();
    }
    let mut gen = start.unwrap_or(if rng.gen() { Gen::A } else { Gen::B });
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(Letter::new(gen, if rng.gen() { 1 } else { -1 }));
        gen = gen.other();
    }
    AltWord(out)
}
