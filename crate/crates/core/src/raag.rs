//! Right-angled Artin groups: graphs, reduced normal forms over the trace
//! structure, cyclic reduction, and the star/link splitting used for
//! certificates.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::amalgam::{Amalgam, AmalgamElement, FactorOracle, Side};
use crate::gapengine::{GapCertificate, GapError};
use crate::letterqm::GroupOracle;
use crate::traceorder::CosetSignOracle;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooLarge(usize),
    #[error("vertex names must be nonempty")]
    EmptyName,
}

/// Vertex set as a bitmask over declaration order.
pub type VertexSet = u64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

/// Finite simplicial graph. Vertex `i` is the `i`-th declared vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Graph, GraphError> {
        Graph::from_spec(&GraphSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges.iter().map(|(u, v)| (u.to_string(), v.to_string())).collect(),
        })
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Graph, GraphError> {
        if spec.vertices.len() > MAX_VERTICES {
            return Err(GraphError::TooLarge(spec.vertices.len()));
        }
        let mut index = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if v.is_empty() {
                return Err(GraphError::EmptyName);
            }
            if index.insert(v.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut adj = vec![0u64; spec.vertices.len()];
        for (u, v) in &spec.edges {
            let iu = *index.get(u.as_str()).ok_or_else(|| GraphError::UnknownVertex(u.clone()))?;
            let iv = *index.get(v.as_str()).ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
            if iu == iv {
                return Err(GraphError::Loop(u.clone()));
            }
            if adj[iu] >> iv & 1 == 1 {
                return Err(GraphError::DuplicateEdge(u.clone(), v.clone()));
            }
            adj[iu] |= 1 << iv;
            adj[iv] |= 1 << iu;
        }
        Ok(Graph {
            names: spec.vertices.clone(),
            adj,
        })
    }

    pub fn to_spec(&self) -> GraphSpec {
        let mut edges = Vec::new();
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                if self.adjacent(u, v) {
                    edges.push((self.names[u].clone(), self.names[v].clone()));
                }
            }
        }
        GraphSpec {
            vertices: self.names.clone(),
            edges,
        }
    }

    /// Path `v0 − v1 − ⋯` on the given names.
    pub fn path(names: &[&str]) -> Graph {
        let edges: Vec<(&str, &str)> = names.windows(2).map(|p| (p[0], p[1])).collect();
        Graph::new(names, &edges).expect("valid path")
    }

    /// Cycle on the given names.
    pub fn cycle(names: &[&str]) -> Graph {
        let n = names.len();
        let edges: Vec<(&str, &str)> = (0..n).map(|i| (names[i], names[(i + 1) % n])).collect();
        Graph::new(names, &edges).expect("valid cycle")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn link(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn star(&self, v: usize) -> VertexSet {
        self.adj[v] | 1 << v
    }

    pub fn all(&self) -> VertexSet {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        members(s).all(|v| (s & !(1 << v)) & !self.adj[v] == 0)
    }

    pub fn set_of(&self, names: &[&str]) -> Result<VertexSet, GraphError> {
        names.iter().try_fold(0u64, |acc, n| {
            let i = self.index_of(n).ok_or_else(|| GraphError::UnknownVertex(n.to_string()))?;
            Ok(acc | 1 << i)
        })
    }
}

pub fn members(s: VertexSet) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| s >> i & 1 == 1)
}

/// `v` or `v⁻¹`; ordered by vertex, generator before inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RLetter {
    pub v: u8,
    pub inv: bool,
}

impl RLetter {
    pub fn new(v: usize, inv: bool) -> RLetter {
        RLetter { v: v as u8, inv }
    }

    pub fn inverse(self) -> RLetter {
        RLetter { v: self.v, inv: !self.inv }
    }

    pub fn sign(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// Element in normal form: reduced, and lexicographically least among the
/// words obtained by swapping adjacent commuting letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RaagElement(Vec<RLetter>);

impl RaagElement {
    pub fn letters(&self) -> &[RLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.0.iter().fold(0, |acc, l| acc | 1 << l.v)
    }

    pub fn exp_sum(&self, v: usize) -> i64 {
        self.0.iter().filter(|l| l.v as usize == v).map(|l| l.sign()).sum()
    }
}

/// Lexicographically least rearrangement under the commutation rule
/// `commute(x, y)`: repeatedly emit the least letter that can be moved to
/// the front.
pub fn lex_normal<T: Copy + Ord>(word: &[T], commute: impl Fn(T, T) -> bool) -> Vec<T> {
    let mut rest: Vec<T> = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            if rest[..i].iter().all(|&y| commute(y, rest[i]))
                && best.map_or(true, |b| rest[i] < rest[b])
            {
                best = Some(i);
            }
        }
        let i = best.expect("the first letter is always movable");
        out.push(rest.remove(i));
    }
    out
}

#[derive(Debug, Clone)]
pub struct Raag {
    pub graph: Graph,
}

impl Raag {
    pub fn new(graph: Graph) -> Raag {
        Raag { graph }
    }

    fn commute(&self, x: RLetter, y: RLetter) -> bool {
        self.graph.adjacent(x.v as usize, y.v as usize)
    }

    /// Free-partially-commutative reduction: a new letter cancels against
    /// the last earlier inverse it can be shuffled next to.
    pub fn reduce(&self, raw: &[RLetter]) -> Vec<RLetter> {
        let mut out: Vec<RLetter> = Vec::with_capacity(raw.len());
        for &x in raw {
            let mut cancel = None;
            for j in (0..out.len()).rev() {
                if out[j] == x.inverse() {
                    cancel = Some(j);
                    break;
                }
                if !self.commute(out[j], x) {
                    break;
                }
            }
            match cancel {
                Some(j) => {
                    out.remove(j);
                }
                None => out.push(x),
            }
        }
        out
    }

    pub fn normal_form(&self, raw: &[RLetter]) -> RaagElement {
        let reduced = self.reduce(raw);
        RaagElement(lex_normal(&reduced, |x, y| self.commute(x, y)))
    }

    /// Lowercase vertex name is the generator, uppercase its inverse. Names
    /// longer than one character need whitespace separated tokens such as
    /// `v1 v2^-1`.
    pub fn parse_letters(&self, s: &str) -> Result<Vec<RLetter>, GraphError> {
        let s = s.trim();
        if s.is_empty() || s == "e" && self.graph.index_of("e").is_none() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let tokenized = s.contains(char::is_whitespace) || s.contains('^');
        let tokens: Vec<String> = if tokenized {
            s.split_whitespace().map(str::to_string).collect()
        } else {
            s.chars().map(|c| c.to_string()).collect()
        };
        for tok in tokens {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (
                    b.to_string(),
                    e.parse::<i64>().map_err(|_| GraphError::UnknownVertex(tok.clone()))?,
                ),
                None => (tok.clone(), 1),
            };
            let (v, inv) = if let Some(v) = self.graph.index_of(&base) {
                (v, false)
            } else if let Some(v) = self.graph.index_of(&base.to_lowercase()) {
                if base.to_lowercase() == base {
                    return Err(GraphError::UnknownVertex(tok));
                }
                (v, true)
            } else {
                return Err(GraphError::UnknownVertex(tok));
            };
            let inv = inv ^ (exp < 0);
            for _ in 0..exp.unsigned_abs() {
                out.push(RLetter::new(v, inv));
            }
        }
        Ok(out)
    }

    pub fn parse(&self, s: &str) -> Result<RaagElement, GraphError> {
        Ok(self.normal_form(&self.parse_letters(s)?))
    }

    pub fn format(&self, g: &RaagElement) -> String {
        let single = self.graph.names().iter().all(|n| n.chars().count() == 1);
        let parts: Vec<String> = g
            .letters()
            .iter()
            .map(|l| {
                let name = self.graph.name(l.v as usize);
                match (single, l.inv) {
                    (true, false) => name.to_string(),
                    (true, true) => name.to_uppercase(),
                    (false, false) => name.to_string(),
                    (false, true) => format!("{name}^-1"),
                }
            })
            .collect();
        parts.join(if single { "" } else { " " })
    }

    pub fn mul(&self, g: &RaagElement, h: &RaagElement) -> RaagElement {
        let mut raw = g.0.clone();
        raw.extend_from_slice(&h.0);
        self.normal_form(&raw)
    }

    pub fn inv(&self, g: &RaagElement) -> RaagElement {
        let raw: Vec<RLetter> = g.0.iter().rev().map(|l| l.inverse()).collect();
        self.normal_form(&raw)
    }

    pub fn generator(&self, v: usize) -> RaagElement {
        RaagElement(vec![RLetter::new(v, false)])
    }

    pub fn commutator(&self, g: &RaagElement, h: &RaagElement) -> RaagElement {
        let gh = self.mul(g, h);
        self.mul(&gh, &self.mul(&self.inv(g), &self.inv(h)))
    }

    /// Deletes every letter outside `lambda`; a homomorphism onto `A(Λ)`.
    pub fn retract(&self, lambda: VertexSet, g: &RaagElement) -> RaagElement {
        let kept: Vec<RLetter> = g.0.iter().copied().filter(|l| lambda >> l.v & 1 == 1).collect();
        self.normal_form(&kept)
    }

    fn front_movable(&self, w: &[RLetter]) -> Vec<usize> {
        (0..w.len())
            .filter(|&i| w[..i].iter().all(|&y| self.commute(y, w[i])))
            .collect()
    }

    fn back_movable(&self, w: &[RLetter]) -> Vec<usize> {
        (0..w.len())
            .filter(|&i| w[i + 1..].iter().all(|&y| self.commute(y, w[i])))
            .collect()
    }

    /// `g = x g′ x⁻¹` with `g′` cyclically reduced.
    pub fn cyclic_reduce(&self, g: &RaagElement) -> (RaagElement, RaagElement) {
        let mut x: Vec<RLetter> = Vec::new();
        let mut cur = g.0.clone();
        'outer: loop {
            let back = self.back_movable(&cur);
            for i in self.front_movable(&cur) {
                if let Some(&j) = back.iter().find(|&&j| cur[j] == cur[i].inverse()) {
                    x.push(cur[i]);
                    let (lo, hi) = (i.min(j), i.max(j));
                    cur.remove(hi);
                    cur.remove(lo);
                    continue 'outer;
                }
            }
            break;
        }
        (self.normal_form(&x), self.normal_form(&cur))
    }

    pub fn conjugates_into_clique(&self, g: &RaagElement) -> bool {
        let (_, core) = self.cyclic_reduce(g);
        self.graph.is_clique(core.support())
    }

    pub fn in_commutator_subgroup(&self, g: &RaagElement) -> bool {
        (0..self.graph.len()).all(|v| g.exp_sum(v) == 0)
    }

    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> RaagElement {
        self.random_word_in(rng, len, self.graph.all())
    }

    /// Random element whose letters are drawn from `allowed`, normalized.
    pub fn random_word_in<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        len: usize,
        allowed: VertexSet,
    ) -> RaagElement {
        let verts: Vec<usize> = members(allowed & self.graph.all()).collect();
        if verts.is_empty() {
            return RaagElement::default();
        }
        let raw: Vec<RLetter> = (0..len)
            .map(|_| RLetter::new(verts[rng.gen_range(0..verts.len())], rng.gen()))
            .collect();
        self.normal_form(&raw)
    }

    /// First support vertex, in declaration order, with a non-adjacent partner
    /// in the support.
    pub fn split_vertex(&self, support: VertexSet) -> Option<usize> {
        members(support).find(|&v| support & !self.graph.star(v) != 0)
    }

    /// `A(Γ) = A(St v) ⋆_{A(Lk v)} A(Γ∖v)`.
    pub fn star_link_split(&self, v: usize) -> StarLinkAmalgam<'_> {
        let lk = self.graph.link(v);
        let star = StarFactor { v, star: self.graph.star(v), link: lk };
        let rest = RestFactor {
            v,
            link: lk,
            order: CosetSignOracle::from_set(self, lk),
        };
        Amalgam::new(self, star, rest)
    }

    /// Splits a normal form into syllables for the star/link amalgam at `v`.
    pub fn to_amalgam(&self, split: &StarLinkAmalgam<'_>, v: usize, g: &RaagElement) -> AmalgamElement<RaagElement> {
        let lk = self.graph.link(v);
        let raw = g
            .letters()
            .iter()
            .map(|l| {
                let side = if l.v as usize == v {
                    Side::A
                } else if lk >> l.v & 1 == 1 {
                    Side::C
                } else {
                    Side::B
                };
                (side, RaagElement(vec![*l]))
            })
            .collect();
        split.element(raw).expect("exact membership oracles")
    }

    /// Certificate through the star/link splitting at [`Raag::split_vertex`].
    pub fn raag_certificate(&self, g: &RaagElement) -> Result<RaagCertificate, GapError> {
        let (_, core) = self.cyclic_reduce(g);
        if self.graph.is_clique(core.support()) {
            return Err(GapError::NoCertificate(
                "the element conjugates into a clique subgroup".into(),
            ));
        }
        let v = self
            .split_vertex(core.support())
            .expect("non-clique support has a non-adjacent pair");
        let split = self.star_link_split(v);
        let elem = self.to_amalgam(&split, v, g);
        let (x, mut cert) = split.amalgam_scl_bound(&elem)?;
        cert.source = format!(
            "raag star/link split at {} for {}",
            self.graph.name(v),
            self.format(g)
        );
        let conjugator = x
            .syllables()
            .iter()
            .fold(RaagElement::default(), |acc, s| self.mul(&acc, &s.elem));
        Ok(RaagCertificate {
            vertex: v,
            conjugator,
            cert,
        })
    }
}

#[derive(Debug, Clone)]
pub struct RaagCertificate {
    pub vertex: usize,
    pub conjugator: RaagElement,
    pub cert: GapCertificate,
}

impl GroupOracle for Raag {
    type Element = RaagElement;

    fn identity(&self) -> RaagElement {
        RaagElement::default()
    }

    fn multiply(&self, g: &RaagElement, h: &RaagElement) -> RaagElement {
        self.mul(g, h)
    }

    fn invert(&self, g: &RaagElement) -> RaagElement {
        self.inv(g)
    }

    fn equal(&self, g: &RaagElement, h: &RaagElement) -> bool {
        g == h
    }
}

impl GroupOracle for &Raag {
    type Element = RaagElement;

    fn identity(&self) -> RaagElement {
        RaagElement::default()
    }

    fn multiply(&self, g: &RaagElement, h: &RaagElement) -> RaagElement {
        self.mul(g, h)
    }

    fn invert(&self, g: &RaagElement) -> RaagElement {
        self.inv(g)
    }

    fn equal(&self, g: &RaagElement, h: &RaagElement) -> bool {
        g == h
    }
}

/// `A(St v) = ⟨v⟩ × A(Lk v)` with the sign of the `v`-exponent.
pub struct StarFactor {
    v: usize,
    star: VertexSet,
    link: VertexSet,
}

impl FactorOracle<RaagElement> for StarFactor {
    fn contains(&self, g: &RaagElement) -> bool {
        g.support() & !self.star == 0
    }

    fn in_edge_group(&self, g: &RaagElement) -> bool {
        g.support() & !self.link == 0
    }

    fn sign(&self, g: &RaagElement) -> i8 {
        g.exp_sum(self.v).signum() as i8
    }
}

/// `A(Γ∖v)` relative to `A(Lk v)`, ordered by the retraction/Magnus oracle.
pub struct RestFactor<'a> {
    v: usize,
    link: VertexSet,
    order: CosetSignOracle<'a>,
}

impl FactorOracle<RaagElement> for RestFactor<'_> {
    fn contains(&self, g: &RaagElement) -> bool {
        g.support() >> self.v & 1 == 0
    }

    fn in_edge_group(&self, g: &RaagElement) -> bool {
        g.support() & !self.link == 0
    }

    fn sign(&self, g: &RaagElement) -> i8 {
        self.order
            .sign(g)
            .unwrap_or_else(|e| panic!("coset order failed: {e}"))
    }
}

pub type StarLinkAmalgam<'a> = Amalgam<&'a Raag, StarFactor, RestFactor<'a>>;

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spec = self.to_spec();
        let edges: BTreeSet<String> = spec.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        write!(
            f,
            "vertices {{{}}} edges {{{}}}",
            spec.vertices.join(","),
            edges.into_iter().collect::<Vec<_>>().join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Raag {
        Raag::new(Graph::path(&["a", "b", "c"]))
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(Graph::new(&["a", "a"], &[]), Err(GraphError::DuplicateVertex(_))));
        assert!(matches!(Graph::new(&["a"], &[("a", "a")]), Err(GraphError::Loop(_))));
        assert!(matches!(
            Graph::new(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(GraphError::DuplicateEdge(..))
        ));
        assert!(matches!(Graph::new(&["a"], &[("a", "z")]), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn normal_form_examples() {
        let r = Raag::new(Graph::new(&["a", "b"], &[("a", "b")]).unwrap());
        assert_eq!(r.parse("abA").unwrap(), r.parse("b").unwrap());
        let free = Raag::new(Graph::new(&["a", "b"], &[]).unwrap());
        assert_eq!(free.format(&free.parse("abBaAA").unwrap()), "");
        assert_eq!(free.format(&free.parse("abA").unwrap()), "abA");
        assert!(matches!(free.parse("abz"), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn commutation_canonical() {
        let r = path3();
        assert_eq!(r.parse("ba").unwrap(), r.parse("ab").unwrap());
        assert_ne!(r.parse("ca").unwrap(), r.parse("ac").unwrap());
        assert_eq!(r.format(&r.parse("ba").unwrap()), "ab");
    }

    #[test]
    fn cyclic_reduce_examples() {
        let free = Raag::new(Graph::new(&["a", "b"], &[]).unwrap());
        let (x, core) = free.cyclic_reduce(&free.parse("abA").unwrap());
        assert_eq!(free.format(&x), "a");
        assert_eq!(free.format(&core), "b");
        let g = free.parse("abAB").unwrap();
        let (x, core) = free.cyclic_reduce(&g);
        assert!(x.is_empty());
        assert_eq!(core, g);
    }

    #[test]
    fn clique_examples() {
        let r = path3();
        assert!(!r.conjugates_into_clique(&r.parse("acAC").unwrap()));
        assert!(r.conjugates_into_clique(&r.parse("abb").unwrap()));
        assert!(r.conjugates_into_clique(&r.parse("cccc").unwrap()));
    }

    #[test]
    fn tokens_for_long_names() {
        let r = Raag::new(Graph::new(&["v1", "v2"], &[]).unwrap());
        let g = r.parse("v1 v2^-1 v1^2").unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(r.format(&g), "v1 v2^-1 v1 v1");
    }

    #[test]
    fn certificate_on_path() {
        let r = path3();
        let c = r.raag_certificate(&r.parse("acAC").unwrap()).unwrap();
        assert_eq!(c.cert.scl_lower_bound, crate::qm::Rational::new(1, 2));
        assert_eq!(r.graph.name(c.vertex), "a");
        assert!(matches!(
            r.raag_certificate(&r.parse("abAB").unwrap()),
            Err(GapError::NoCertificate(_))
        ));
    }

    #[test]
    fn certificate_on_five_cycle() {
        let r = Raag::new(Graph::cycle(&["a", "b", "c", "d", "e"]));
        let c = r.raag_certificate(&r.parse("acAC").unwrap()).unwrap();
        assert_eq!(c.cert.scl_lower_bound, crate::qm::Rational::new(1, 2));
    }
}
