//! Serialized certificates and their re-derivation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sclgap_core::fgword::Word;
use sclgap_core::gapengine::{free_certificate, Branch, GapCertificate, GapError, PowerEvidence};
use sclgap_core::qm::Rational;
use sclgap_core::raag::{Graph, GraphSpec, Raag};

use crate::CliError;

/// Exact rational as a numerator/denominator pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for RationalRecord {
    fn from(r: Rational) -> Self {
        RationalRecord {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl RationalRecord {
    pub fn value(&self) -> Rational {
        Rational::new(self.num, self.den)
    }
}

impl std::fmt::Display for RationalRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupRecord {
    F2,
    Raag { graph: GraphSpec },
}

/// Where the certificate comes from: the input and the conjugate it was run on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceRecord {
    pub group: GroupRecord,
    pub word: String,
    pub conjugator: String,
    pub conjugate: String,
    pub letter_qm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_vertex: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub source: SourceRecord,
    pub image: String,
    pub branch: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub depth: usize,
    pub terminal_class: String,
    pub functional: String,
    pub sign: i64,
    pub psi_bar: RationalRecord,
    pub phi_bar: RationalRecord,
    pub defect_bound: RationalRecord,
    pub scl_lower_bound: RationalRecord,
    pub power_evidence: String,
    /// Power compatibility was only checked up to a horizon.
    pub conditional: bool,
    /// The bound exceeds 1/2 through ψ̄ > 2.
    pub extended_bound: bool,
    pub in_commutator_subgroup: bool,
}

fn show(s: String) -> String {
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

fn from_cert(source: SourceRecord, cert: &GapCertificate, in_commutator: bool) -> CertificateRecord {
    let k = match cert.stabilization.branch {
        Branch::CommutatorFixed { k } => Some(k),
        Branch::ExitsCommutator { .. } => None,
    };
    CertificateRecord {
        source,
        image: show(cert.image.to_string()),
        branch: cert.stabilization.branch.name().to_string(),
        k,
        depth: cert.depth(),
        terminal_class: cert.stabilization.terminal.to_string(),
        functional: cert.functional().to_string(),
        sign: cert.sign,
        psi_bar: cert.psi_bar.into(),
        phi_bar: cert.phi_bar.into(),
        defect_bound: Rational::from_integer(1).into(),
        scl_lower_bound: cert.scl_lower_bound.into(),
        power_evidence: cert.power.to_string(),
        conditional: cert.power != PowerEvidence::Structural,
        extended_bound: cert.is_extended_bound(),
        in_commutator_subgroup: in_commutator,
    }
}

pub fn gap_error(e: GapError) -> CliError {
    match e {
        GapError::NoCertificate(m) => CliError::NoCertificate(m),
        GapError::TrivialInput => CliError::NoCertificate("the input is trivial".into()),
        GapError::PowerIncompatible { n } => CliError::NoCertificate(format!(
            "the letter-quasimorphism is not compatible with powers at n = {n}"
        )),
        e @ (GapError::Homogenize(_) | GapError::Invariant(_)) => CliError::Internal(e.to_string()),
    }
}

pub fn parse_f2(word: &str) -> Result<Word, CliError> {
    Word::parse(word).map_err(|e| CliError::Usage(format!("bad word `{word}`: {e}")))
}

pub fn certify_f2(word: &str) -> Result<CertificateRecord, CliError> {
    let g = parse_f2(word)?;
    let (x, gp, cert) = free_certificate(&g).map_err(gap_error)?;
    let source = SourceRecord {
        group: GroupRecord::F2,
        word: word.to_string(),
        conjugator: show(x.to_string()),
        conjugate: show(gp.to_string()),
        letter_qm: "f2 sign map".to_string(),
        split_vertex: None,
    };
    Ok(from_cert(source, &cert, g.in_commutator_subgroup()))
}

pub fn graph_from_spec(spec: &GraphSpec) -> Result<Graph, CliError> {
    Graph::from_spec(spec).map_err(|e| CliError::Usage(format!("bad graph: {e}")))
}

pub fn certify_raag(spec: &GraphSpec, word: &str) -> Result<CertificateRecord, CliError> {
    let raag = Raag::new(graph_from_spec(spec)?);
    let g = raag
        .parse(word)
        .map_err(|e| CliError::Usage(format!("bad word `{word}`: {e}")))?;
    let rc = raag.raag_certificate(&g).map_err(gap_error)?;
    let v = raag.graph.name(rc.vertex).to_string();
    let conjugate = raag.mul(&raag.mul(&rc.conjugator, &g), &raag.inv(&rc.conjugator));
    let source = SourceRecord {
        group: GroupRecord::Raag {
            graph: raag.graph.to_spec(),
        },
        word: word.to_string(),
        conjugator: show(raag.format(&rc.conjugator)),
        conjugate: show(raag.format(&conjugate)),
        letter_qm: format!("star/link amalgam sign map at {v}"),
        split_vertex: Some(v),
    };
    Ok(from_cert(source, &rc.cert, raag.in_commutator_subgroup(&g)))
}

pub fn certify(group: &GroupRecord, word: &str) -> Result<CertificateRecord, CliError> {
    match group {
        GroupRecord::F2 => certify_f2(word),
        GroupRecord::Raag { graph } => certify_raag(graph, word),
    }
}

/// Field-by-field differences, `stored` against `derived`.
pub fn diff(stored: &CertificateRecord, derived: &CertificateRecord) -> Vec<String> {
    let a = serde_json::to_value(stored).expect("serializable");
    let b = serde_json::to_value(derived).expect("serializable");
    let mut out = Vec::new();
    diff_values("", &a, &b, &mut out);
    out
}

fn diff_values(path: &str, a: &serde_json::Value, b: &serde_json::Value, out: &mut Vec<String>) {
    use serde_json::Value;
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                diff_values(&p, x.get(k).unwrap_or(&Value::Null), y.get(k).unwrap_or(&Value::Null), out);
            }
        }
        _ if a == b => {}
        _ => out.push(format!("{path}: stored {a}, derived {b}")),
    }
}

pub fn field_count(r: &CertificateRecord) -> usize {
    fn count(v: &serde_json::Value) -> usize {
        match v {
            serde_json::Value::Object(m) => m.values().map(count).sum(),
            _ => 1,
        }
    }
    count(&serde_json::to_value(r).expect("serializable"))
}

pub fn human(r: &CertificateRecord) -> String {
    let mut s = String::new();
    let group = match &r.source.group {
        GroupRecord::F2 => "f2".to_string(),
        GroupRecord::Raag { graph } => format!(
            "raag on {}",
            Graph::from_spec(graph).map(|g| g.to_string()).unwrap_or_default()
        ),
    };
    let branch = match r.k {
        Some(k) => format!("{} (k = {k})", r.branch),
        None => r.branch.clone(),
    };
    let mut rows = vec![
        ("group", group),
        ("word", show(r.source.word.clone())),
        ("conjugator", r.source.conjugator.clone()),
        ("conjugate", r.source.conjugate.clone()),
    ];
    if let Some(v) = &r.source.split_vertex {
        rows.push(("split vertex", v.clone()));
    }
    rows.extend([
        ("letter-qm", r.source.letter_qm.clone()),
        ("image", r.image.clone()),
        ("power evidence", r.power_evidence.clone()),
        ("depth", r.depth.to_string()),
        ("terminal class", r.terminal_class.clone()),
        ("branch", branch),
        ("functional", r.functional.clone()),
        ("sign", format!("{:+}", r.sign)),
        ("psi_bar", r.psi_bar.to_string()),
        ("phi_bar", r.phi_bar.to_string()),
        ("D-bound", r.defect_bound.to_string()),
        ("scl lower bound", r.scl_lower_bound.to_string()),
    ]);
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<16} {v}");
    }
    if r.extended_bound {
        let _ = writeln!(s, "note: psi_bar exceeds 2, the bound above 1/2 is an engine extension");
    }
    if r.conditional {
        let _ = writeln!(s, "note: power compatibility was checked only up to a horizon");
    }
    if !r.in_commutator_subgroup {
        let _ = writeln!(
            s,
            "warning: the word is not in the commutator subgroup; the bound is on the homogeneous quasimorphism ratio only"
        );
    }
    s
}
