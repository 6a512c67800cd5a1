//! Coset-sign oracles for full-subgraph subgroups of right-angled Artin
//! groups.
//!
//! The ambient order is a bi-invariant positivity read off the lowest
//! nonvanishing term of a truncated Magnus expansion in the trace algebra
//! (variables commute exactly when their vertices are adjacent). Cosets of
//! `A(Λ)` are compared through the retraction kernel: `k(g) = g·ρ(g)⁻¹`.

use std::cmp::Ordering;
use std::collections::HashMap;

use thiserror::Error;

use crate::raag::{members, Graph, Raag, RaagElement, RLetter, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("no nonzero term up to degree {cap}")]
    DegreeOverflow { cap: usize },
    #[error("subgraph is not full: {0}")]
    NotFullSubgraph(String),
}

/// Monomial in lexicographically least form among its commutation class.
pub type TraceMonomial = Vec<u8>;

/// Appends `v` to a canonical monomial and returns the canonical result.
///
/// `v` may land anywhere after the last letter it fails to commute with; the
/// least word puts it before the first larger letter in that range.
pub fn canonical_append(graph: &Graph, m: &[u8], v: u8) -> TraceMonomial {
    let mut lo = m.len();
    while lo > 0 && graph.adjacent(m[lo - 1] as usize, v as usize) {
        lo -= 1;
    }
    let pos = (lo..m.len()).find(|&q| m[q] > v).unwrap_or(m.len());
    let mut out = Vec::with_capacity(m.len() + 1);
    out.extend_from_slice(&m[..pos]);
    out.push(v);
    out.extend_from_slice(&m[pos..]);
    out
}

pub fn canonical_monomial(graph: &Graph, word: &[u8]) -> TraceMonomial {
    word.iter().fold(Vec::new(), |m, &v| canonical_append(graph, &m, v))
}

/// Integer combination of trace monomials of degree at most `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    cap: usize,
    terms: HashMap<TraceMonomial, i128>,
}

impl TruncatedSeries {
    pub fn one(cap: usize) -> TruncatedSeries {
        let mut terms = HashMap::new();
        terms.insert(Vec::new(), 1);
        TruncatedSeries { cap, terms }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coefficient(&self, m: &[u8]) -> i128 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Nonzero terms, graded then lexicographic.
    pub fn terms(&self) -> Vec<(TraceMonomial, i128)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        v.sort_by(|(x, _), (y, _)| graded_lex(x, y));
        v
    }

    pub fn is_one(&self) -> bool {
        self.terms().iter().all(|(m, c)| m.is_empty() && *c == 1)
            && self.coefficient(&[]) == 1
    }

    /// Least nonconstant monomial with nonzero coefficient.
    pub fn lowest_term(&self) -> Option<(TraceMonomial, i128)> {
        self.terms
            .iter()
            .filter(|(m, &c)| !m.is_empty() && c != 0)
            .min_by(|(x, _), (y, _)| graded_lex(x, y))
            .map(|(m, &c)| (m.clone(), c))
    }

    fn add(terms: &mut HashMap<TraceMonomial, i128>, m: TraceMonomial, c: i128) {
        if c == 0 {
            return;
        }
        let e = terms.entry(m).or_insert(0);
        *e += c;
    }

    /// Right multiplication by the image of a generator or its inverse.
    pub fn mul_letter(&self, graph: &Graph, l: RLetter) -> TruncatedSeries {
        let mut terms = HashMap::with_capacity(self.terms.len() * 2);
        for (m, &c) in &self.terms {
            if c == 0 {
                continue;
            }
            Self::add(&mut terms, m.clone(), c);
            let mut cur = m.clone();
            let mut sign = 1i128;
            while cur.len() < self.cap {
                cur = canonical_append(graph, &cur, l.v);
                sign = if l.inv { -sign } else { sign };
                Self::add(&mut terms, cur.clone(), sign * c);
                if !l.inv {
                    break;
                }
            }
        }
        terms.retain(|_, c| *c != 0);
        TruncatedSeries { cap: self.cap, terms }
    }

    pub fn mul(&self, graph: &Graph, other: &TruncatedSeries) -> TruncatedSeries {
        let cap = self.cap.min(other.cap);
        let mut terms = HashMap::new();
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                if m1.len() + m2.len() > cap {
                    continue;
                }
                let m = m2.iter().fold(m1.clone(), |m, &v| canonical_append(graph, &m, v));
                Self::add(&mut terms, m, c1 * c2);
            }
        }
        terms.retain(|_, c| *c != 0);
        TruncatedSeries { cap, terms }
    }
}

fn graded_lex(x: &[u8], y: &[u8]) -> Ordering {
    x.len().cmp(&y.len()).then_with(|| x.cmp(y))
}

/// Image of `g` under `v ↦ 1 + X_v`, truncated above degree `cap`.
pub fn magnus(raag: &Raag, g: &RaagElement, cap: usize) -> TruncatedSeries {
    assert!(cap >= 1, "degree cap must be positive");
    g.letters()
        .iter()
        .fold(TruncatedSeries::one(cap), |s, &l| s.mul_letter(&raag.graph, l))
}

/// Hard cap on the truncation degree for an element of length `len`.
pub fn degree_cap(len: usize) -> usize {
    4 * len + 16
}

/// Sign of the lowest nonvanishing coefficient of `magnus(g) − 1`.
///
/// The cap doubles from 1 until a term appears. Terms below the cap are
/// exact at any truncation, so the answer does not depend on the schedule.
pub fn positivity_sign(raag: &Raag, g: &RaagElement) -> Result<i8, OrderError> {
    if g.is_empty() {
        return Ok(0);
    }
    let hard = degree_cap(g.len());
    let mut d = 1;
    loop {
        if let Some((_, c)) = magnus(raag, g, d).lowest_term() {
            return Ok(c.signum() as i8);
        }
        if d >= hard {
            return Err(OrderError::DegreeOverflow { cap: hard });
        }
        d = (d * 2).min(hard);
    }
}

/// Vertex set of `sub` inside `ambient`, checking that `sub` is an induced
/// subgraph.
pub fn full_subgraph_set(ambient: &Graph, sub: &Graph) -> Result<VertexSet, OrderError> {
    let mut set = 0u64;
    let mut idx = Vec::with_capacity(sub.len());
    for name in sub.names() {
        let i = ambient
            .index_of(name)
            .ok_or_else(|| OrderError::NotFullSubgraph(format!("unknown vertex `{name}`")))?;
        set |= 1 << i;
        idx.push(i);
    }
    for p in 0..sub.len() {
        for q in p + 1..sub.len() {
            if sub.adjacent(p, q) != ambient.adjacent(idx[p], idx[q]) {
                return Err(OrderError::NotFullSubgraph(format!(
                    "edge `{}`-`{}` differs from the ambient graph",
                    sub.name(p),
                    sub.name(q)
                )));
            }
        }
    }
    Ok(set)
}

/// `k(g) = g·ρ_Λ(g)⁻¹`, the retraction-kernel part of `g`.
pub fn kernel_part(raag: &Raag, lambda: VertexSet, g: &RaagElement) -> RaagElement {
    raag.mul(g, &raag.inv(&raag.retract(lambda, g)))
}

pub fn coset_sign(raag: &Raag, lambda: VertexSet, g: &RaagElement) -> Result<i8, OrderError> {
    if g.support() & !lambda == 0 {
        return Ok(0);
    }
    positivity_sign(raag, &kernel_part(raag, lambda, g))
}

/// Coset sign for a fixed pair `(Γ, Λ)`.
#[derive(Debug, Clone, Copy)]
pub struct CosetSignOracle<'a> {
    pub raag: &'a Raag,
    pub lambda: VertexSet,
}

impl<'a> CosetSignOracle<'a> {
    /// Any vertex set spans a full subgraph.
    pub fn from_set(raag: &'a Raag, lambda: VertexSet) -> Self {
        CosetSignOracle { raag, lambda }
    }

    pub fn from_subgraph(raag: &'a Raag, sub: &Graph) -> Result<Self, OrderError> {
        Ok(CosetSignOracle {
            raag,
            lambda: full_subgraph_set(&raag.graph, sub)?,
        })
    }

    pub fn sign(&self, g: &RaagElement) -> Result<i8, OrderError> {
        coset_sign(self.raag, self.lambda, g)
    }

    /// Compares `x₁A(Λ)` with `x₂A(Λ)`: `Less` when `x₁⁻¹x₂` is positive.
    pub fn compare(&self, x1: &RaagElement, x2: &RaagElement) -> Result<Ordering, OrderError> {
        let d = self.raag.mul(&self.raag.inv(x1), x2);
        Ok(match self.sign(&d)? {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        })
    }

    /// Same comparison computed from the kernel parts alone.
    pub fn compare_via_kernel(
        &self,
        x1: &RaagElement,
        x2: &RaagElement,
    ) -> Result<Ordering, OrderError> {
        let k1 = kernel_part(self.raag, self.lambda, x1);
        let k2 = kernel_part(self.raag, self.lambda, x2);
        let d = self.raag.mul(&self.raag.inv(&k1), &k2);
        Ok(match positivity_sign(self.raag, &d)? {
            1 => Ordering::Less,
            -1 => Ordering::Greater,
            _ => Ordering::Equal,
        })
    }

    pub fn lambda_members(&self) -> Vec<usize> {
        members(self.lambda).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raag::lex_normal;

    fn free2() -> Raag {
        Raag::new(Graph::new(&["a", "b"], &[]).unwrap())
    }

    #[test]
    fn magnus_of_identity() {
        let r = free2();
        assert!(magnus(&r, &RaagElement::default(), 5).is_one());
    }

    #[test]
    fn magnus_commutator_degree_two() {
        let r = free2();
        let s = magnus(&r, &r.parse("abAB").unwrap(), 2);
        let terms = s.terms();
        assert_eq!(terms, vec![(vec![], 1), (vec![0, 1], 1), (vec![1, 0], -1)]);
    }

    #[test]
    fn magnus_commuting_pair() {
        let r = Raag::new(Graph::new(&["a", "b"], &[("a", "b")]).unwrap());
        let raw = r.parse_letters("abAB").unwrap();
        let mut s = TruncatedSeries::one(6);
        for l in raw {
            s = s.mul_letter(&r.graph, l);
        }
        assert!(s.is_one());
    }

    #[test]
    fn signs() {
        let r = free2();
        assert_eq!(positivity_sign(&r, &r.parse("a").unwrap()), Ok(1));
        assert_eq!(positivity_sign(&r, &r.parse("A").unwrap()), Ok(-1));
        assert_eq!(positivity_sign(&r, &r.parse("abAB").unwrap()), Ok(1));
        assert_eq!(positivity_sign(&r, &r.parse("baBA").unwrap()), Ok(-1));
        assert_eq!(positivity_sign(&r, &RaagElement::default()), Ok(0));
    }

    #[test]
    fn path_coset_example() {
        let r = Raag::new(Graph::path(&["a", "b", "c"]));
        let lambda = r.graph.set_of(&["b"]).unwrap();
        assert_eq!(coset_sign(&r, lambda, &r.parse("cbb").unwrap()), Ok(1));
        assert_eq!(coset_sign(&r, lambda, &r.parse("bB").unwrap()), Ok(0));
        assert_eq!(coset_sign(&r, lambda, &r.parse("bbb").unwrap()), Ok(0));
    }

    #[test]
    fn insertion_matches_greedy() {
        let g = Graph::path(&["a", "b", "c", "d"]);
        let words: [&[u8]; 4] = [&[2, 0, 1, 3, 0], &[3, 1, 0, 2], &[0, 2, 0, 2, 3, 1], &[3, 3, 0, 1, 2, 0]];
        for w in words {
            let greedy = lex_normal(w, |x, y| g.adjacent(x as usize, y as usize));
            assert_eq!(canonical_monomial(&g, w), greedy, "{w:?}");
        }
    }

    #[test]
    fn non_full_subgraph_rejected() {
        let r = Raag::new(Graph::path(&["a", "b", "c"]));
        let sub = Graph::new(&["a", "b"], &[]).unwrap();
        assert!(matches!(
            CosetSignOracle::from_subgraph(&r, &sub),
            Err(OrderError::NotFullSubgraph(_))
        ));
        let ok = Graph::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(CosetSignOracle::from_subgraph(&r, &ok).is_ok());
    }
}
