//! Certified lower bounds for stable commutator length.
//!
//! Elements are pushed through a letter-quasimorphism into alternating words
//! over `a`, `b`; the collapsing maps α and β are iterated on the resulting
//! conjugacy class until it stabilizes, and the terminal class determines an
//! explicit quasimorphism whose homogenization certifies `scl ≥ 1/2`.
//!
//! Providers: the free group on two generators ([`letterqm::F2SignQm`]),
//! amalgamated free products with user supplied factor oracles
//! ([`amalgam`]), and right-angled Artin groups ([`raag`]).

pub mod alphabeta;
pub mod amalgam;
pub mod fgword;
pub mod gapengine;
pub mod letterqm;
pub mod par;
pub mod qm;
pub mod raag;
pub mod thintriple;
pub mod traceorder;
