//! Letter-quasimorphisms: maps from a group to alternating words whose
//! additivity failure is at most one letter.

use std::fmt::Debug;

use crate::alphabeta::map_for;
use crate::fgword::{inverse_letters, reduce, AltWord, Gen, Letter, Word};
use crate::thintriple::{classify, ThinType, Triple};

/// Black box access to a group.
pub trait GroupOracle: Sync {
    type Element: Clone + Debug + Send + Sync;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;
    fn invert(&self, g: &Self::Element) -> Self::Element;
    fn equal(&self, g: &Self::Element, h: &Self::Element) -> bool;

    fn power(&self, g: &Self::Element, n: u32) -> Self::Element {
        let mut acc = self.identity();
        for _ in 0..n {
            acc = self.multiply(&acc, g);
        }
        acc
    }
}

/// The free group on `a`, `b` with reduced words as elements.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeGroup2;

impl GroupOracle for FreeGroup2 {
    type Element = Word;

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn multiply(&self, g: &Word, h: &Word) -> Word {
        g.mul(h)
    }

    fn invert(&self, g: &Word) -> Word {
        g.inverse()
    }

    fn equal(&self, g: &Word, h: &Word) -> bool {
        g == h
    }
}

pub trait LetterQm: Sync {
    type Group: GroupOracle;

    fn group(&self) -> &Self::Group;

    fn image(&self, g: &<Self::Group as GroupOracle>::Element) -> AltWord;

    /// True when `image(gⁿ) = image(g)ⁿ` is known for all `n` without checking.
    fn structurally_power_compatible(&self, _g: &<Self::Group as GroupOracle>::Element) -> bool {
        false
    }

    fn describe(&self) -> String;
}

/// Replaces every maximal power `xⁿ` by `x^{sign n}`.
pub fn f2_sign_qm(g: &Word) -> AltWord {
    let mut out: Vec<Letter> = Vec::new();
    for &x in g.letters() {
        if out.last().map(|l| l.gen()) != Some(x.gen()) {
            out.push(x);
        }
    }
    AltWord::new(out).expect("syllables alternate")
}

#[derive(Debug, Clone, Copy, Default)]
pub struct F2SignQm {
    group: FreeGroup2,
}

impl F2SignQm {
    pub fn new() -> F2SignQm {
        F2SignQm { group: FreeGroup2 }
    }
}

impl LetterQm for F2SignQm {
    type Group = FreeGroup2;

    fn group(&self) -> &FreeGroup2 {
        &self.group
    }

    fn image(&self, g: &Word) -> AltWord {
        f2_sign_qm(g)
    }

    fn structurally_power_compatible(&self, g: &Word) -> bool {
        matches!(
            (g.letters().first(), g.letters().last()),
            (Some(x), Some(y)) if x.gen() == Gen::A && y.gen() == Gen::B
        )
    }

    fn describe(&self) -> String {
        "f2 sign map".to_string()
    }
}

/// `w̃ = ζ_s(first) · w · ζ_e(last)`, or `e` for `w ∈ {a, e, a⁻¹}`.
pub fn tilde(w: &AltWord) -> AltWord {
    let (Some(first), Some(last)) = (w.first(), w.last()) else {
        return AltWord::empty();
    };
    if w.len() == 1 && first.gen() == Gen::A {
        return AltWord::empty();
    }
    let zeta_s: &[Letter] = match first {
        Letter::A => &[],
        Letter::B | Letter::BInv => &[Letter::A],
        Letter::AInv => &[Letter::A, Letter::A],
    };
    let zeta_e: &[Letter] = match last {
        Letter::AInv => &[],
        Letter::B | Letter::BInv => &[Letter::AInv],
        Letter::A => &[Letter::AInv, Letter::AInv],
    };
    let mut raw = zeta_s.to_vec();
    raw.extend_from_slice(w.letters());
    raw.extend_from_slice(zeta_e);
    reduce(&raw)
        .as_alternating()
        .expect("boundary corrections keep the word alternating")
}

/// `Φ` followed by an optional tilde and a sequence of α/β maps
/// (`Gen::A` stands for α, `Gen::B` for β), applied left to right.
pub struct Composite<'a, Q: LetterQm> {
    pub inner: &'a Q,
    pub tilde: bool,
    pub maps: Vec<Gen>,
}

impl<'a, Q: LetterQm> Composite<'a, Q> {
    pub fn new(inner: &'a Q, tilde: bool, maps: Vec<Gen>) -> Self {
        Composite { inner, tilde, maps }
    }

    /// `γ_n ∘ Φ̃`.
    pub fn gamma_tilde(inner: &'a Q, n: usize) -> Self {
        let maps = (0..n).map(|i| if i % 2 == 0 { Gen::A } else { Gen::B }).collect();
        Composite::new(inner, true, maps)
    }

    pub fn apply(&self, w: AltWord) -> AltWord {
        let mut cur = if self.tilde { tilde(&w) } else { w };
        for &g in &self.maps {
            cur = map_for(g)(&cur);
        }
        cur
    }
}

impl<Q: LetterQm> LetterQm for Composite<'_, Q> {
    type Group = Q::Group;

    fn group(&self) -> &Q::Group {
        self.inner.group()
    }

    fn image(&self, g: &<Q::Group as GroupOracle>::Element) -> AltWord {
        self.apply(self.inner.image(g))
    }

    fn describe(&self) -> String {
        let maps: String = self
            .maps
            .iter()
            .rev()
            .map(|g| if *g == Gen::A { "alpha . " } else { "beta . " })
            .collect();
        let t = if self.tilde { "tilde . " } else { "" };
        format!("{maps}{t}{}", self.inner.describe())
    }
}

/// Data of case (2): `Φ(g) = c₁⁻¹x₁c₂`, `Φ(h) = c₂⁻¹x₂c₃`, `Φ(gh)⁻¹ = c₃⁻¹x₃c₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case2Witness {
    pub c: [AltWord; 3],
    pub x: [Letter; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LqmCheck {
    Case1,
    Case2(Case2Witness),
    Violation,
}

/// Searches the factorizations of case (2) for the triple `(y₁, y₂, y₃)`.
pub fn case2_witness(y1: &AltWord, y2: &AltWord, y3: &AltWord) -> Option<Case2Witness> {
    let (y1, y2, y3) = (y1.letters(), y2.letters(), y3.letters());
    for i in 0..y1.len() {
        let c1 = inverse_letters(&y1[..i]);
        let x1 = y1[i];
        let c2 = &y1[i + 1..];
        let Some(rest) = y2.strip_prefix(inverse_letters(c2).as_slice()) else {
            continue;
        };
        let Some((&x2, c3)) = rest.split_first() else { continue };
        if y3.len() != c3.len() + 1 + c1.len() {
            continue;
        }
        if y3[..c3.len()] != inverse_letters(c3)[..] || y3[c3.len() + 1..] != c1[..] {
            continue;
        }
        let x3 = y3[c3.len()];
        let gen = x1.gen();
        let same_gen = x2.gen() == gen && x3.gen() == gen;
        let total = x1.sign() + x2.sign() + x3.sign();
        if same_gen && total.abs() == 1 {
            let alt = |v: &[Letter]| AltWord::new(v.to_vec()).expect("subword");
            return Some(Case2Witness {
                c: [alt(&c1), alt(c2), alt(c3)],
                x: [x1, x2, x3],
            });
        }
    }
    None
}

pub fn verify_letter_qm<Q: LetterQm>(
    phi: &Q,
    g: &<Q::Group as GroupOracle>::Element,
    h: &<Q::Group as GroupOracle>::Element,
) -> LqmCheck {
    let group = phi.group();
    let y1 = phi.image(g);
    let y2 = phi.image(h);
    let y3 = phi.image(&group.multiply(g, h)).inverse();
    let mut raw = y1.letters().to_vec();
    raw.extend_from_slice(y2.letters());
    raw.extend_from_slice(y3.letters());
    if reduce(&raw).is_empty() {
        return LqmCheck::Case1;
    }
    match case2_witness(&y1, &y2, &y3) {
        Some(w) => LqmCheck::Case2(w),
        None => LqmCheck::Violation,
    }
}

/// `Φ(g⁻¹) = Φ(g)⁻¹`.
pub fn check_alternating<Q: LetterQm>(phi: &Q, g: &<Q::Group as GroupOracle>::Element) -> bool {
    phi.image(&phi.group().invert(g)) == phi.image(g).inverse()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WellBehavedCheck {
    Thin(ThinType),
    Degenerate,
    Violation,
}

pub fn verify_well_behaved<Q: LetterQm>(
    psi: &Q,
    g: &<Q::Group as GroupOracle>::Element,
    h: &<Q::Group as GroupOracle>::Element,
) -> WellBehavedCheck {
    let group = psi.group();
    let t = Triple::new(
        psi.image(g),
        psi.image(h),
        psi.image(&group.multiply(g, h)).inverse(),
    );
    let c = classify(&t);
    match c.tag {
        tag if tag.is_letter_thin() => WellBehavedCheck::Thin(c),
        crate::thintriple::ThinTag::Degenerate => WellBehavedCheck::Degenerate,
        _ => WellBehavedCheck::Violation,
    }
}

/// Conjugates `g` so that it starts with an `a`-letter and ends with a
/// `b`-letter, which makes the sign map multiplicative on its powers.
/// Returns `(x, g′)` with `g′ = x g x⁻¹`, or `None` when `g` is conjugate into
/// `⟨a⟩` or `⟨b⟩`.
pub fn f2_alternating_conjugate(g: &Word) -> Option<(Word, Word)> {
    let (u, core) = g.cyclic_reduce();
    let v = core.letters();
    let n = v.len();
    let start = (0..n).find(|&i| v[i].gen() == Gen::A && v[(i + n - 1) % n].gen() == Gen::B)?;
    let mut rotated = v.to_vec();
    rotated.rotate_left(start);
    // g = u core u⁻¹ and rotated = p⁻¹ core p with p = core[..start]
    let p = Word::from_letters(&v[..start]);
    let x = p.inverse().mul(&u.inverse());
    Some((x, Word::from_letters(&rotated)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn alt(s: &str) -> AltWord {
        AltWord::parse(s).unwrap()
    }

    #[test]
    fn tilde_examples() {
        assert!(tilde(&alt("a")).is_empty());
        assert!(tilde(&alt("A")).is_empty());
        assert!(tilde(&alt("")).is_empty());
        assert_eq!(tilde(&alt("abA")), alt("abA"));
        assert_eq!(tilde(&alt("Ababa")), alt("ababA"));
        assert_eq!(tilde(&alt("b")), alt("abA"));
    }

    #[test]
    fn sign_map_examples() {
        assert_eq!(f2_sign_qm(&w("aaaBBa")), alt("aBa"));
        assert_eq!(f2_sign_qm(&w("abABabAB")), alt("abABabAB"));
        assert_eq!(f2_sign_qm(&w("abABaBBBAbbb")), alt("abABaBAb"));
    }

    #[test]
    fn inverse_pair_is_case1() {
        let phi = F2SignQm::new();
        let g = w("aabAbb");
        assert_eq!(verify_letter_qm(&phi, &g, &g.inverse()), LqmCheck::Case1);
    }

    #[test]
    fn a_times_a_is_case2() {
        let phi = F2SignQm::new();
        match verify_letter_qm(&phi, &w("a"), &w("a")) {
            LqmCheck::Case2(wit) => assert_eq!(wit.x, [Letter::A, Letter::A, Letter::AInv]),
            other => panic!("{other:?}"),
        }
        let psi = Composite::gamma_tilde(&phi, 0);
        assert_eq!(
            verify_well_behaved(&psi, &Word::identity(), &Word::identity()),
            WellBehavedCheck::Degenerate
        );
    }

    #[test]
    fn raw_sign_map_is_not_well_behaved() {
        let phi = F2SignQm::new();
        assert_eq!(
            verify_well_behaved(&phi, &w("a"), &w("a")),
            WellBehavedCheck::Violation
        );
        let psi = Composite::gamma_tilde(&phi, 0);
        let check = verify_well_behaved(&psi, &w("a"), &w("a"));
        assert!(
            matches!(check, WellBehavedCheck::Degenerate | WellBehavedCheck::Thin(_)),
            "{check:?}"
        );
    }

    #[test]
    fn alternating_conjugate_shapes() {
        for s in ["abAB", "bAba", "BAbaaa", "aabABB", "abaBAbAB"] {
            let g = w(s);
            let (x, gp) = f2_alternating_conjugate(&g).unwrap();
            assert_eq!(x.mul(&g).mul(&x.inverse()), gp, "{s}");
            assert_eq!(gp.letters()[0].gen(), Gen::A);
            assert_eq!(gp.letters().last().unwrap().gen(), Gen::B);
        }
        assert!(f2_alternating_conjugate(&w("aaaaa")).is_none());
        assert!(f2_alternating_conjugate(&w("abbbA")).is_none());
        assert!(f2_alternating_conjugate(&Word::identity()).is_none());
    }
}
