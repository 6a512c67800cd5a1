//! Block decompositions of alternating words and the collapsing maps α, β.
//!
//! A block of the `a`-decomposition is a maximal stretch of the word whose
//! `a`-letters all carry the same sign. α replaces every block by one `a`-letter
//! of that sign, β does the same with the roles of `a` and `b` exchanged.

use thiserror::Error;

use crate::fgword::{cyc_class, inverse_letters, AltWord, EvenAltClass, Gen, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphaBetaError {
    #[error("bad shape for power splitting: {0}")]
    BadShape(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub sign: i32,
    pub letters: Vec<Letter>,
}

/// `w = lead · s₁ y₁ s₂ ⋯ y_{l−1} s_l · trail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub gen: Gen,
    pub lead: Option<Letter>,
    pub blocks: Vec<Block>,
    pub separators: Vec<Letter>,
    pub trail: Option<Letter>,
}

impl Decomposition {
    pub fn concat(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.lead.into_iter().collect();
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.push(self.separators[i - 1]);
            }
            out.extend_from_slice(&b.letters);
        }
        out.extend(self.trail);
        out
    }

    /// Each block collapsed to a single letter.
    pub fn collapse(&self) -> AltWord {
        let mut out: Vec<Letter> = self.lead.into_iter().collect();
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.push(self.separators[i - 1]);
            }
            out.push(Letter::new(self.gen, b.sign));
        }
        out.extend(self.trail);
        AltWord::from_vec_unchecked(out)
    }
}

pub fn decompose(w: &AltWord, gen: Gen) -> Decomposition {
    let v = w.letters();
    let positions: Vec<usize> = (0..v.len()).filter(|&i| v[i].gen() == gen).collect();
    if positions.is_empty() {
        return Decomposition {
            gen,
            lead: v.first().copied(),
            blocks: Vec::new(),
            separators: Vec::new(),
            trail: None,
        };
    }
    let first = positions[0];
    let last = *positions.last().unwrap();
    let mut blocks = Vec::new();
    let mut separators = Vec::new();
    let mut start = first;
    for pair in positions.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        if v[p].sign() != v[q].sign() {
            blocks.push(Block {
                sign: v[p].sign(),
                letters: v[start..=p].to_vec(),
            });
            separators.push(v[p + 1]);
            start = q;
        }
    }
    blocks.push(Block {
        sign: v[last].sign(),
        letters: v[start..=last].to_vec(),
    });
    Decomposition {
        gen,
        lead: (first > 0).then(|| v[0]),
        blocks,
        separators,
        trail: (last + 1 < v.len()).then(|| v[last + 1]),
    }
}

pub fn a_decompose(w: &AltWord) -> Decomposition {
    decompose(w, Gen::A)
}

pub fn b_decompose(w: &AltWord) -> Decomposition {
    decompose(w, Gen::B)
}

/// Single pass collapse: a `gen`-letter repeating the sign of the previous
/// `gen`-letter extends the current block, so it and the letter before it go.
pub fn collapse(w: &AltWord, gen: Gen) -> AltWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    let mut last_sign = 0;
    for &x in w.letters() {
        if x.gen() == gen {
            if x.sign() == last_sign {
                out.pop();
                continue;
            }
            last_sign = x.sign();
        }
        out.push(x);
    }
    AltWord::from_vec_unchecked(out)
}

pub fn alpha(w: &AltWord) -> AltWord {
    collapse(w, Gen::A)
}

pub fn beta(w: &AltWord) -> AltWord {
    collapse(w, Gen::B)
}

/// α for `Gen::A`, β for `Gen::B`.
pub fn map_for(gen: Gen) -> fn(&AltWord) -> AltWord {
    match gen {
        Gen::A => alpha,
        Gen::B => beta,
    }
}

/// Class version of the collapse for `gen`: rotate to start with a
/// `gen`-letter `x`, collapse `x w′ x`, then cancel the trailing `x`.
pub fn collapse_bar(c: &EvenAltClass, gen: Gen) -> EvenAltClass {
    if c.is_trivial() {
        return EvenAltClass::trivial();
    }
    let rep = c.rep().letters();
    let start = (0..rep.len())
        .filter(|&k| rep[k].gen() == gen)
        .min_by(|&i, &j| {
            let ri = rep[i..].iter().chain(&rep[..i]);
            let rj = rep[j..].iter().chain(&rep[..j]);
            ri.cmp(rj)
        })
        .expect("nontrivial even class has letters of both generators");
    let mut v = rep.to_vec();
    v.rotate_left(start);
    let x = v[0];
    v.push(x);
    let mut image = collapse(&AltWord::from_vec_unchecked(v), gen).into_letters();
    debug_assert_eq!(image.last(), Some(&x));
    image.pop();
    cyc_class(&AltWord::from_vec_unchecked(image)).expect("even by construction")
}

pub fn alpha_bar(c: &EvenAltClass) -> EvenAltClass {
    collapse_bar(c, Gen::A)
}

pub fn beta_bar(c: &EvenAltClass) -> EvenAltClass {
    collapse_bar(c, Gen::B)
}

/// Output of [`power_split`]: `collapse(c₁ wⁿ c₂) = d₁ · w′ⁿ⁻¹ · d₂` for every `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSplit {
    pub d1: AltWord,
    pub w: AltWord,
    pub d2: AltWord,
}

impl PowerSplit {
    /// Reduced product `d₁ w′ⁿ⁻¹ d₂`.
    pub fn expand(&self, n: usize) -> Vec<Letter> {
        assert!(n >= 1);
        let mut raw = self.d1.letters().to_vec();
        for _ in 1..n {
            raw.extend_from_slice(self.w.letters());
        }
        raw.extend_from_slice(self.d2.letters());
        crate::fgword::reduce(&raw).letters().to_vec()
    }
}

fn drop_last(w: AltWord) -> AltWord {
    let mut v = w.into_letters();
    v.pop();
    AltWord::from_vec_unchecked(v)
}

/// Splits `collapse(c₁ wⁿ c₂)` into a prefix, a repeating middle and a suffix.
/// The anchor is the first `gen`-letter `x` of `w` and the first later
/// occurrence of `x⁻¹`.
pub fn power_split_for(
    gen: Gen,
    c1: &AltWord,
    w: &AltWord,
    c2: &AltWord,
) -> Result<PowerSplit, AlphaBetaError> {
    if w.is_empty() || w.len() % 2 == 1 {
        return Err(AlphaBetaError::BadShape("w must be nonempty of even length"));
    }
    AltWord::concat(&[c1.letters(), w.letters(), w.letters(), c2.letters()])
        .map_err(|_| AlphaBetaError::BadShape("c1 w c2 is not alternating"))?;
    let f = map_for(gen);
    let v = w.letters();
    let i = v.iter().position(|x| x.gen() == gen).expect("even word has both generators");
    let x = v[i];
    let Some(j) = (i + 1..v.len()).find(|&j| v[j] == x.inverse()) else {
        let whole = AltWord::concat(&[c1.letters(), v, c2.letters()]).expect("checked");
        return Ok(PowerSplit {
            d1: f(&whole),
            w: AltWord::empty(),
            d2: AltWord::empty(),
        });
    };
    let (v1, v2, v3) = (&v[..i], &v[i + 1..j], &v[j + 1..]);
    let xs = [x];
    let xi = [x.inverse()];
    let cat = |parts: &[&[Letter]]| AltWord::concat(parts).expect("alternating by shape");
    let d1 = drop_last(f(&cat(&[c1.letters(), v1, &xs])));
    let wp = drop_last(f(&cat(&[&xs, v2, &xi, v3, v1, &xs])));
    let d2 = f(&cat(&[&xs, v2, &xi, v3, c2.letters()]));
    Ok(PowerSplit { d1, w: wp, d2 })
}

pub fn power_split(c1: &AltWord, w: &AltWord, c2: &AltWord) -> Result<PowerSplit, AlphaBetaError> {
    power_split_for(Gen::A, c1, w, c2)
}

pub fn power_split_beta(
    c1: &AltWord,
    w: &AltWord,
    c2: &AltWord,
) -> Result<PowerSplit, AlphaBetaError> {
    power_split_for(Gen::B, c1, w, c2)
}

/// `γ_n`: `n` maps applied alternately, α first.
pub fn gamma(n: usize, w: &AltWord) -> AltWord {
    let mut cur = w.clone();
    for i in 0..n {
        cur = if i % 2 == 0 { alpha(&cur) } else { beta(&cur) };
    }
    cur
}

pub fn gamma_bar(n: usize, c: &EvenAltClass) -> EvenAltClass {
    let mut cur = c.clone();
    for i in 0..n {
        cur = if i % 2 == 0 { alpha_bar(&cur) } else { beta_bar(&cur) };
    }
    cur
}

/// Inverse of a word viewed as a class representative.
pub fn inverse_class(c: &EvenAltClass) -> EvenAltClass {
    cyc_class(&AltWord::from_vec_unchecked(inverse_letters(c.rep().letters()))).expect("even")
}
