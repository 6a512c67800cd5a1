//! Command-line front end: certificates, map images, triple classification,
//! verification sweeps, defects, certificate re-derivation and the self-test.

pub mod acceptance;
pub mod record;
pub mod sweeps;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sclgap_core::alphabeta::{alpha, alpha_bar, beta, beta_bar};
use sclgap_core::fgword::{cyc_class, random_reduced, AltWord, Gen, Word};
use sclgap_core::gapengine::{coboundary_value, free_certificate, psi_eval};
use sclgap_core::letterqm::{
    verify_letter_qm, verify_well_behaved, Composite, F2SignQm, LetterQm, LqmCheck,
    WellBehavedCheck,
};
use sclgap_core::par::Exec;
use sclgap_core::qm::Functional;
use sclgap_core::raag::{GraphSpec, Raag};
use sclgap_core::thintriple::{classify, ThinTag, Triple};
use thiserror::Error;

use record::CertificateRecord;

pub const DEFAULT_SEED: u64 = 20_240_501;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("no certificate: {0}")]
    NoCertificate(String),
    #[error("certificate not reproduced")]
    Mismatch,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::NoCertificate(_) | CliError::Mismatch => 1,
            CliError::Internal(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sclgap", version, about = "Certified lower bounds for stable commutator length")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify `scl ≥ bound` for a word.
    Bound(BoundArgs),
    /// Image of an alternating word under α.
    Alpha(MapArgs),
    /// Image of an alternating word under β.
    Beta(MapArgs),
    /// Classify a triple of alternating words.
    ClassifyTriple {
        x1: String,
        x2: String,
        x3: String,
    },
    /// Check the letter-quasimorphism and well-behavedness conditions on pairs.
    Verify(VerifyArgs),
    /// Defect of a quasimorphism, exhaustive or sampled.
    Defect(DefectArgs),
    /// Certificate file operations.
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
    /// Run the acceptance suite in process.
    Selftest,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Group: only `f2` is built in; use `--graph` for a right-angled Artin group.
    #[arg(long, default_value = "f2", conflicts_with = "graph")]
    pub group: String,
    /// Graph file with `vertices` and `edges`.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// Print the serialized certificate record.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// Apply the conjugacy class version to the cyclic word.
    #[arg(long)]
    pub class: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `f2sign`, `tilde`, or `gamma-N` for γ_N after the tilde construction.
    #[arg(long, default_value = "f2sign")]
    pub map: String,
    /// Exhaustive over pairs of free group words up to this length.
    #[arg(long, default_value_t = 5)]
    pub pairs_maxlen: usize,
    /// Check the star/link amalgam map of this graph on random pairs instead.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Split vertex for `--graph`; defaults to every vertex in turn.
    #[arg(long)]
    pub vertex: Option<String>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct DefectArgs {
    /// `eta0`, `hom(x,y)`, or `psi` (needs `--word`).
    #[arg(long, default_value = "eta0")]
    pub functional: String,
    #[arg(long, default_value_t = 8)]
    pub maxlen: usize,
    /// Word whose certificate defines ψ.
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum CertAction {
    /// Re-derive a stored certificate and compare every field.
    Verify { file: PathBuf },
}

/// Parses `args` (without the program name) and runs the command. Results go
/// to `out`, diagnostics to `err`; the return value is the exit status.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("sclgap").chain(args.iter().map(|s| s.as_ref()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return 2;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status()
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Internal(format!("write failed: {e}"))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Bound(a) => bound(a, out),
        Command::Alpha(a) => map_cmd(a, Gen::A, out),
        Command::Beta(a) => map_cmd(a, Gen::B, out),
        Command::ClassifyTriple { x1, x2, x3 } => {
            let p = |s: &str| parse_alt(s);
            let t = Triple::new(p(x1)?, p(x2)?, p(x3)?);
            writeln!(out, "{}", classify(&t)).map_err(io)
        }
        Command::Verify(a) => verify(a, cli.seed, out),
        Command::Defect(a) => defect(a, cli.seed, out),
        Command::Cert {
            action: CertAction::Verify { file },
        } => cert_verify(file, out),
        Command::Selftest => selftest(cli.seed, out),
    }
}

pub fn load_graph_spec(path: &Path) -> Result<GraphSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read `{}`: {e}", path.display())))?;
    let spec: GraphSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad graph file `{}`: {e}", path.display())))?;
    record::graph_from_spec(&spec)?;
    Ok(spec)
}

fn parse_alt(s: &str) -> Result<AltWord, CliError> {
    AltWord::parse(s).map_err(|e| CliError::Usage(format!("bad alternating word `{s}`: {e}")))
}

fn bound(a: &BoundArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let rec = match &a.graph {
        Some(path) => record::certify_raag(&load_graph_spec(path)?, &a.word)?,
        None if a.group == "f2" => record::certify_f2(&a.word)?,
        None => return Err(CliError::Usage(format!("unknown group `{}`", a.group))),
    };
    if a.json {
        let s = serde_json::to_string_pretty(&rec).expect("serializable");
        writeln!(out, "{s}").map_err(io)
    } else {
        write!(out, "{}", record::human(&rec)).map_err(io)
    }
}

fn map_cmd(a: &MapArgs, gen: Gen, out: &mut dyn Write) -> Result<(), CliError> {
    let w = parse_alt(&a.word)?;
    if a.class {
        let c = cyc_class(&w).map_err(|e| CliError::Usage(format!("bad class `{}`: {e}", a.word)))?;
        let img = if gen == Gen::A { alpha_bar(&c) } else { beta_bar(&c) };
        writeln!(out, "{img}").map_err(io)
    } else {
        let img = if gen == Gen::A { alpha(&w) } else { beta(&w) };
        writeln!(out, "{img}").map_err(io)
    }
}

fn composite_maps(map: &str) -> Result<(bool, Vec<Gen>), CliError> {
    match map {
        "f2sign" => Ok((false, vec![])),
        "tilde" => Ok((true, vec![])),
        _ => {
            let n: usize = map
                .strip_prefix("gamma-")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| CliError::Usage(format!("unknown map `{map}`")))?;
            Ok((true, (0..n).map(|i| if i % 2 == 0 { Gen::A } else { Gen::B }).collect()))
        }
    }
}

#[derive(Default)]
struct Tally {
    case1: usize,
    case2: usize,
    thin: usize,
    degenerate: usize,
    /// Letter-thin of type T2, which has a three-letter middle and so never
    /// factors as case (2) of the letter-qm condition.
    t2_outside_case2: usize,
    lqm_violations: Vec<String>,
    wb_violations: Vec<String>,
}

impl Tally {
    fn letter_qm(&mut self, c: LqmCheck, what: impl FnOnce() -> String) {
        match c {
            LqmCheck::Case1 => self.case1 += 1,
            LqmCheck::Case2(_) => self.case2 += 1,
            LqmCheck::Violation => self.lqm_violations.push(what()),
        }
    }

    fn well_behaved(&mut self, c: WellBehavedCheck, what: impl FnOnce() -> String) {
        match c {
            WellBehavedCheck::Thin(_) => self.thin += 1,
            WellBehavedCheck::Degenerate => self.degenerate += 1,
            WellBehavedCheck::Violation => self.wb_violations.push(what()),
        }
    }

    fn report(&self, out: &mut dyn Write, well_behaved: bool) -> Result<(), CliError> {
        writeln!(
            out,
            "letter-qm: case1 {} case2 {} violations {}",
            self.case1,
            self.case2,
            self.lqm_violations.len()
        )
        .map_err(io)?;
        if well_behaved {
            writeln!(
                out,
                "well-behaved: thin {} degenerate {} violations {}",
                self.thin,
                self.degenerate,
                self.wb_violations.len()
            )
            .map_err(io)?;
            writeln!(
                out,
                "letter-thin T2 triples outside letter-qm case 2: {}",
                self.t2_outside_case2
            )
            .map_err(io)?;
        }
        for v in self.lqm_violations.iter().chain(&self.wb_violations).take(5) {
            writeln!(out, "  violation at {v}").map_err(io)?;
        }
        if self.lqm_violations.is_empty() && self.wb_violations.is_empty() {
            Ok(())
        } else {
            Err(CliError::Internal("verification found violations".into()))
        }
    }
}

fn verify(a: &VerifyArgs, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let mut tally = Tally::default();
    if let Some(path) = &a.graph {
        let raag = Raag::new(record::graph_from_spec(&load_graph_spec(path)?)?);
        let vertices: Vec<usize> = match &a.vertex {
            Some(v) => vec![raag
                .graph
                .index_of(v)
                .ok_or_else(|| CliError::Usage(format!("unknown vertex `{v}`")))?],
            None => (0..raag.graph.len()).collect(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for &v in &vertices {
            let split = raag.star_link_split(v);
            for _ in 0..a.samples {
                let (l1, l2) = (rng.gen_range(0..=12), rng.gen_range(0..=12));
                let g = raag.random_word(&mut rng, l1);
                let h = raag.random_word(&mut rng, l2);
                let (ag, ah) = (raag.to_amalgam(&split, v, &g), raag.to_amalgam(&split, v, &h));
                tally.letter_qm(verify_letter_qm(&split, &ag, &ah), || {
                    format!("{}, {}", raag.format(&g), raag.format(&h))
                });
            }
        }
        return tally.report(out, false);
    }
    let (with_tilde, maps) = composite_maps(&a.map)?;
    let sign = F2SignQm::new();
    let psi = Composite::new(&sign, with_tilde, maps);
    let words = sweeps::words_up_to(a.pairs_maxlen);
    for g in &words {
        for h in &words {
            let what = || format!("{g}, {h}");
            let lqm = verify_letter_qm(&psi, g, h);
            if !with_tilde {
                tally.letter_qm(lqm, what);
                continue;
            }
            let wb = verify_well_behaved(&psi, g, h);
            match (&lqm, &wb) {
                (LqmCheck::Violation, WellBehavedCheck::Thin(t))
                    if matches!(t.tag, ThinTag::T2a | ThinTag::T2b) =>
                {
                    tally.t2_outside_case2 += 1
                }
                _ => tally.letter_qm(lqm, what),
            }
            tally.well_behaved(wb, what);
        }
    }
    writeln!(out, "map: {}", psi.describe()).map_err(io)?;
    tally.report(out, with_tilde)
}

fn defect(a: &DefectArgs, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    if a.functional == "psi" {
        let word = a
            .word
            .as_deref()
            .ok_or_else(|| CliError::Usage("`--functional psi` needs `--word`".into()))?;
        let g0 = record::parse_f2(word)?;
        let (_, _, cert) = free_certificate(&g0).map_err(record::gap_error)?;
        let phi = F2SignQm::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = [0usize; 2];
        let mut max_defect = 0;
        for _ in 0..a.samples {
            let (l1, l2) = (rng.gen_range(0..=a.maxlen), rng.gen_range(0..=a.maxlen));
            let g: Word = random_reduced(&mut rng, l1);
            let h: Word = random_reduced(&mut rng, l2);
            let d = psi_eval(&cert, &phi, &g) + psi_eval(&cert, &phi, &h)
                - psi_eval(&cert, &phi, &g.mul(&h));
            max_defect = max_defect.max(d.abs());
            let c = coboundary_value(&cert, &phi, &g, &h).map_err(record::gap_error)?;
            counts[c as usize] += 1;
        }
        writeln!(out, "psi sampled defect: {max_defect} over {} pairs", a.samples).map_err(io)?;
        writeln!(out, "coboundary values: 0 x{}, 1 x{}", counts[0], counts[1]).map_err(io)?;
        return Ok(());
    }
    let f = Functional::parse(&a.functional)
        .ok_or_else(|| CliError::Usage(format!("unknown functional `{}`", a.functional)))?;
    let d = sweeps::exhaustive_defect(&f, a.maxlen, Exec::default());
    writeln!(out, "{f} exhaustive defect over pairs of length <= {}: {d}", a.maxlen).map_err(io)
}

fn cert_verify(file: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Usage(format!("cannot read `{}`: {e}", file.display())))?;
    let stored: CertificateRecord = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad certificate `{}`: {e}", file.display())))?;
    let derived = record::certify(&stored.source.group, &stored.source.word)?;
    let diffs = record::diff(&stored, &derived);
    if diffs.is_empty() {
        writeln!(out, "ok: all {} fields reproduced", record::field_count(&derived)).map_err(io)
    } else {
        for d in &diffs {
            writeln!(out, "{d}").map_err(io)?;
        }
        Err(CliError::Mismatch)
    }
}

fn selftest(seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let runner = |args: &[String]| {
        let (mut buf, mut errbuf) = (Vec::new(), Vec::new());
        let status = run(args, &mut buf, &mut errbuf);
        acceptance::RunOutput {
            status,
            stdout: String::from_utf8_lossy(&buf).into_owned(),
            stderr: String::from_utf8_lossy(&errbuf).into_owned(),
        }
    };
    let config = acceptance::Config::new(seed);
    let results = acceptance::run_all(&config, &runner);
    for r in &results {
        writeln!(out, "{r}").map_err(io)?;
    }
    if results.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(CliError::Internal("acceptance criteria failed".into()))
    }
}
