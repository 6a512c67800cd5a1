//! The certificate engine: iterate ᾱ/β̄ on the class of `Φ(g₀)`, pick the
//! functional of the terminal branch, and evaluate everything exactly.
//!
//! `ψ(g)` is the branch functional applied to `γ_N(Φ̃(g))`, or `1` when that
//! word is empty, times the sign flip. `φ = (ψ + 1)/2` then has coboundary in
//! `{0, 1}` and `φ̄(g₀) = ψ̄(g₀)/2 ≥ 1`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabeta::{alpha_bar, beta_bar, gamma};
use crate::fgword::{commutator_power, cyc_class, AltWord, EvenAltClass, Word};
use crate::letterqm::{f2_alternating_conjugate, tilde, F2SignQm, GroupOracle, LetterQm};
use crate::qm::{cyclic_eval, homogenize, Functional, LetterHom, QmError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("stabilization needs a nontrivial class")]
    TrivialInput,
    #[error("no certificate: {0}")]
    NoCertificate(String),
    #[error("image of g0^{n} differs from the n-th power of the image of g0")]
    PowerIncompatible { n: u32 },
    #[error(transparent)]
    Homogenize(#[from] QmError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// Terminal class `[[a,b]^k]`, fixed by both maps.
    CommutatorFixed { k: i64 },
    /// Terminal class outside the commutator subgroup.
    ExitsCommutator { hom: LetterHom },
}

impl Branch {
    pub fn functional(&self) -> Functional {
        match self {
            Branch::CommutatorFixed { .. } => Functional::Eta0,
            Branch::ExitsCommutator { hom } => Functional::Hom(*hom),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Branch::CommutatorFixed { .. } => "commutator-fixed",
            Branch::ExitsCommutator { .. } => "exits-commutator",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilization {
    pub depth: usize,
    pub terminal: EvenAltClass,
    pub branch: Branch,
}

/// Applies ᾱ, β̄, ᾱ, … until the class leaves the commutator subgroup or is
/// fixed by both maps.
pub fn stabilize(c: &EvenAltClass) -> Result<Stabilization, GapError> {
    if c.is_trivial() {
        return Err(GapError::TrivialInput);
    }
    let mut cur = c.clone();
    let mut depth = 0;
    loop {
        if cur.is_trivial() {
            return Err(GapError::Invariant(format!(
                "class {c} collapsed to the identity at depth {depth}"
            )));
        }
        if !cur.in_commutator_subgroup() {
            let hom = LetterHom::CANDIDATES
                .into_iter()
                .find(|h| cyclic_eval(&Functional::Hom(*h), &cur) >= 2)
                .ok_or_else(|| {
                    GapError::Invariant(format!("no letter hom reaches 2 on {cur}"))
                })?;
            return Ok(Stabilization {
                depth,
                terminal: cur,
                branch: Branch::ExitsCommutator { hom },
            });
        }
        let a = alpha_bar(&cur);
        let b = beta_bar(&cur);
        if a == cur && b == cur {
            let k = cyclic_eval(&Functional::Eta0, &cur) / 2;
            let expected = cyc_class(&commutator_power(k)).expect("even");
            if k == 0 || expected != cur {
                return Err(GapError::Invariant(format!(
                    "joint fixed point {cur} is not a commutator power"
                )));
            }
            return Ok(Stabilization {
                depth,
                terminal: cur,
                branch: Branch::CommutatorFixed { k },
            });
        }
        cur = if depth % 2 == 0 { a } else { b };
        depth += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PowerEvidence {
    Structural,
    /// `Φ(g₀ⁿ) = Φ(g₀)ⁿ` was checked for `n ≤ up_to` only.
    Checked { up_to: u32 },
}

impl fmt::Display for PowerEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerEvidence::Structural => f.write_str("structural"),
            PowerEvidence::Checked { up_to } => write!(f, "checked-up-to-{up_to}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapCertificate {
    pub source: String,
    pub image: AltWord,
    pub power: PowerEvidence,
    pub stabilization: Stabilization,
    /// `-1` when ψ is negated so that `ψ̄(g₀) ≥ 2`.
    pub sign: i64,
    pub psi_bar: Rational,
    pub phi_bar: Rational,
    pub scl_lower_bound: Rational,
}

impl GapCertificate {
    pub fn depth(&self) -> usize {
        self.stabilization.depth
    }

    pub fn functional(&self) -> Functional {
        self.stabilization.branch.functional()
    }

    /// The bound exceeds 1/2 only through ψ̄ > 2, which goes beyond the
    /// guaranteed value.
    pub fn is_extended_bound(&self) -> bool {
        self.psi_bar > Rational::from_integer(2)
    }

    pub fn horizon(&self) -> usize {
        self.depth() + 8
    }
}

pub fn certificate_for<Q: LetterQm>(
    phi: &Q,
    g0: &<Q::Group as GroupOracle>::Element,
) -> Result<GapCertificate, GapError> {
    let image = phi.image(g0);
    if image.is_empty() {
        return Err(GapError::NoCertificate("the image of g0 is trivial".into()));
    }
    if image.len() % 2 == 1 {
        return Err(GapError::NoCertificate(format!(
            "the image {image} of g0 has odd length"
        )));
    }
    let class = cyc_class(&image).expect("even");
    let stabilization = stabilize(&class)?;
    let power = if phi.structurally_power_compatible(g0) {
        PowerEvidence::Structural
    } else {
        let up_to = (stabilization.depth + 8) as u32;
        let group = phi.group();
        let mut p = g0.clone();
        for n in 2..=up_to {
            p = group.multiply(&p, g0);
            if phi.image(&p) != image.pow_even(n as usize) {
                return Err(GapError::PowerIncompatible { n });
            }
        }
        PowerEvidence::Checked { up_to }
    };
    let value = cyclic_eval(&stabilization.branch.functional(), &stabilization.terminal);
    let sign = if value < 0 { -1 } else { 1 };
    let psi_bar = Rational::from_integer(value * sign);
    if psi_bar < Rational::from_integer(2) {
        return Err(GapError::Invariant(format!(
            "terminal value {value} on {} is below 2",
            stabilization.terminal
        )));
    }
    let phi_bar = psi_bar / 2;
    let scl_lower_bound = (psi_bar / 4).max(Rational::new(1, 2));
    Ok(GapCertificate {
        source: format!("{} at {:?}", phi.describe(), g0),
        image,
        power,
        stabilization,
        sign,
        psi_bar,
        phi_bar,
        scl_lower_bound,
    })
}

/// `γ_N(Φ̃(g))`.
pub fn terminal_word<Q: LetterQm>(
    cert: &GapCertificate,
    phi: &Q,
    g: &<Q::Group as GroupOracle>::Element,
) -> AltWord {
    gamma(cert.depth(), &tilde(&phi.image(g)))
}

pub fn psi_eval<Q: LetterQm>(
    cert: &GapCertificate,
    phi: &Q,
    g: &<Q::Group as GroupOracle>::Element,
) -> i64 {
    let w = terminal_word(cert, phi, g);
    let raw = if w.is_empty() {
        1
    } else {
        cert.functional().eval(w.letters())
    };
    cert.sign * raw
}

/// `ψ̄(g)/2` with the horizon doubled a few times if needed.
pub fn phi_bar_eval<Q: LetterQm>(
    cert: &GapCertificate,
    phi: &Q,
    g: &<Q::Group as GroupOracle>::Element,
) -> Result<Rational, GapError> {
    let mut horizon = cert.horizon();
    let mut last_err = None;
    for _ in 0..4 {
        match homogenize(phi.group(), |x| psi_eval(cert, phi, x), g, horizon) {
            Ok(slope) => return Ok(slope / 2),
            Err(e) => last_err = Some(e),
        }
        horizon *= 2;
    }
    Err(last_err.expect("at least one attempt").into())
}

/// `δφ(g,h) = (ψ(g) + ψ(h) − ψ(gh) + 1)/2`.
pub fn coboundary_value<Q: LetterQm>(
    cert: &GapCertificate,
    phi: &Q,
    g: &<Q::Group as GroupOracle>::Element,
    h: &<Q::Group as GroupOracle>::Element,
) -> Result<u8, GapError> {
    let gh = phi.group().multiply(g, h);
    let d = psi_eval(cert, phi, g) + psi_eval(cert, phi, h) - psi_eval(cert, phi, &gh);
    match d {
        -1 => Ok(0),
        1 => Ok(1),
        other => Err(GapError::Invariant(format!("psi defect {other} on {g:?}, {h:?}"))),
    }
}

/// Certificate for a free group element through the sign map, after
/// conjugating it into a shape on which the sign map respects powers.
/// Returns the conjugator `x` and the certificate for `x g x⁻¹`.
pub fn free_certificate(g: &Word) -> Result<(Word, Word, GapCertificate), GapError> {
    let Some((x, gp)) = f2_alternating_conjugate(g) else {
        return Err(GapError::NoCertificate(format!(
            "{g} is conjugate into a cyclic free factor"
        )));
    };
    let mut cert = certificate_for(&F2SignQm::new(), &gp)?;
    cert.source = format!("f2 sign map at {gp}");
    Ok((x, gp, cert))
}
