//! Exhaustive and sampled sweeps shared by the CLI and the acceptance suite.

use sclgap_core::fgword::{nth_reduced_word, reduced_word_count, Letter, Word};
use sclgap_core::par::{max_range, Exec};
use sclgap_core::qm::Functional;

/// All reduced words of length at most `max_len`.
pub fn words_up_to(max_len: usize) -> Vec<Word> {
    (0..=max_len)
        .flat_map(|l| (0..reduced_word_count(l)).map(move |i| nth_reduced_word(l, i)))
        .collect()
}

struct Profile {
    letters: Vec<Letter>,
    total: i64,
    /// `prefix[i]` is the value on the first `i` letters.
    prefix: Vec<i64>,
    /// `suffix[i]` is the value on the letters from `i` on.
    suffix: Vec<i64>,
}

fn profile(f: &Functional, w: &Word) -> Profile {
    let l = w.letters();
    Profile {
        letters: l.to_vec(),
        total: f.eval(l),
        prefix: (0..=l.len()).map(|i| f.eval(&l[..i])).collect(),
        suffix: (0..=l.len()).map(|i| f.eval(&l[i..])).collect(),
    }
}

/// Value on the reduced product `gh` for functionals read through windows of
/// width at most two: the product is `g[..m−k] · h[k..]` and only the junction
/// window is new.
fn product_value(f: &Functional, g: &Profile, h: &Profile) -> i64 {
    let (a, b) = (&g.letters, &h.letters);
    let m = a.len();
    let mut k = 0;
    while k < m && k < b.len() && a[m - 1 - k] == b[k].inverse() {
        k += 1;
    }
    let mut v = g.prefix[m - k] + h.suffix[k];
    if k < m && k < b.len() {
        let (z1, z2) = (a[m - 1 - k], b[k]);
        v += f.eval(&[z1, z2]) - f.eval(&[z1]) - f.eval(&[z2]);
    }
    v
}

/// `max |f(g) + f(h) − f(gh)|` over all pairs of reduced words of length at
/// most `max_len`.
pub fn exhaustive_defect(f: &Functional, max_len: usize, exec: Exec) -> i64 {
    let words = words_up_to(max_len);
    let profiles: Vec<Profile> = words.iter().map(|w| profile(f, w)).collect();
    max_range(exec, profiles.len() as u64, |i| {
        let g = &profiles[i as usize];
        profiles
            .iter()
            .map(|h| (g.total + h.total - product_value(f, g, h)).abs())
            .max()
            .unwrap_or(0)
    })
    .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sclgap_core::qm::LetterHom;

    #[test]
    fn junction_formula_matches_direct_products() {
        let words = words_up_to(4);
        for f in [Functional::Eta0, Functional::Hom(LetterHom::CANDIDATES[1])] {
            let profiles: Vec<Profile> = words.iter().map(|w| profile(&f, w)).collect();
            for (g, pg) in words.iter().zip(&profiles) {
                for (h, ph) in words.iter().zip(&profiles) {
                    assert_eq!(product_value(&f, pg, ph), f.eval(g.mul(h).letters()), "{g} {h}");
                }
            }
        }
    }

    #[test]
    fn small_defects() {
        assert_eq!(exhaustive_defect(&Functional::Eta0, 4, Exec::default()), 1);
        let h = Functional::Hom(LetterHom::CANDIDATES[0]);
        assert_eq!(exhaustive_defect(&h, 4, Exec::Sequential), 0);
    }
}
