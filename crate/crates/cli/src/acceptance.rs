//! The acceptance criteria as executable checks.
//!
//! Command-line criteria go through a caller supplied runner so the same
//! checks drive the in-process `selftest` and the built binary.

use std::collections::HashSet;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sclgap_core::alphabeta::{alpha, alpha_bar, beta, beta_bar, map_for, power_split_for};
use sclgap_core::amalgam::{free_product_zz, zz_element};
use sclgap_core::fgword::{
    alt_word_count, commutator_power, cyc_class, nth_alt_word, nth_reduced_word, random_alt,
    random_reduced, reduced_word_count, AltWord, EvenAltClass, Gen, Word,
};
use sclgap_core::gapengine::{coboundary_value, free_certificate, phi_bar_eval, psi_eval};
use sclgap_core::letterqm::{f2_sign_qm, verify_letter_qm, F2SignQm, LetterQm, LqmCheck};
use sclgap_core::par::{filter_map_range, sum_range, Exec};
use sclgap_core::qm::{Functional, Rational};
use sclgap_core::raag::{Graph, Raag, RaagElement};
use sclgap_core::thintriple::{classify, gen_letter_thin};
use sclgap_core::traceorder::{coset_sign, positivity_sign, CosetSignOracle};

use crate::record::CertificateRecord;
use crate::sweeps::exhaustive_defect;

pub struct RunOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub type Runner<'a> = dyn Fn(&[String]) -> RunOutput + 'a;

pub struct Config {
    pub seed: u64,
    pub exec: Exec,
    pub scratch: PathBuf,
}

impl Config {
    pub fn new(seed: u64) -> Config {
        Config {
            seed,
            exec: Exec::default(),
            scratch: std::env::temp_dir().join(format!("sclgap-acceptance-{}-{seed}", std::process::id())),
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {:<28} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

type Check = fn(&Config, &Runner) -> Result<String, String>;

pub const CRITERIA: [(u8, &str, Check); 11] = [
    (1, "headline bound", headline_bound),
    (2, "exhaustive commutators", exhaustive_commutators),
    (3, "thin triple preservation", thin_preservation),
    (4, "defect laws", defect_laws),
    (5, "dynamics", dynamics),
    (6, "power structure", power_structure),
    (7, "amalgam consistency", amalgam_consistency),
    (8, "order oracle soundness", order_soundness),
    (9, "raag theorem", raag_theorem),
    (10, "known non-reproduction", known_non_reproduction),
    (11, "homogenization cross-check", homogenization_cross_check),
];

pub fn run_one(id: u8, config: &Config, runner: &Runner) -> Outcome {
    let (id, name, check) = CRITERIA
        .into_iter()
        .find(|c| c.0 == id)
        .unwrap_or_else(|| panic!("no criterion {id}"));
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| check(config, runner)))
        .unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(config: &Config, runner: &Runner) -> Vec<Outcome> {
    let out = CRITERIA.iter().map(|c| run_one(c.0, config, runner)).collect();
    let _ = std::fs::remove_dir_all(&config.scratch);
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn args(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn bound_record(runner: &Runner, list: &[&str]) -> Result<(CertificateRecord, Duration), String> {
    let start = Instant::now();
    let out = runner(&args(list));
    let elapsed = start.elapsed();
    ensure(out.status == 0, || format!("exit status {}: {}", out.status, out.stderr.trim()))?;
    let rec = serde_json::from_str(&out.stdout).map_err(|e| format!("unparsable output: {e}"))?;
    Ok((rec, elapsed))
}

fn commutator_word<R: Rng>(r: &mut R, max: usize) -> Word {
    loop {
        let len = 2 * r.gen_range(1..=max / 2);
        let w = random_reduced(r, len);
        if !w.is_empty() && w.in_commutator_subgroup() {
            return w;
        }
    }
}

fn headline_bound(_: &Config, runner: &Runner) -> Result<String, String> {
    let (rec, elapsed) =
        bound_record(runner, &["bound", "--group", "f2", "--word", "abAB", "--json"])?;
    let one = Rational::from_integer(1);
    ensure(rec.phi_bar.value() == one, || format!("phi_bar {}", rec.phi_bar))?;
    ensure(rec.defect_bound.value() == one, || format!("D-bound {}", rec.defect_bound))?;
    ensure(rec.scl_lower_bound.value() == Rational::new(1, 2), || {
        format!("bound {}", rec.scl_lower_bound)
    })?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "phi_bar = {}, D = {}, scl >= {} in {:.0} ms",
        rec.phi_bar,
        rec.defect_bound,
        rec.scl_lower_bound,
        elapsed.as_secs_f64() * 1e3
    ))
}

fn exhaustive_commutators(config: &Config, _: &Runner) -> Result<String, String> {
    let start = Instant::now();
    let one = Rational::from_integer(1);
    let mut total = 0u64;
    for len in (2..=12).step_by(2) {
        total += sum_range(config.exec, reduced_word_count(len), |i| {
            nth_reduced_word(len, i).in_commutator_subgroup() as u64
        });
        let failures = filter_map_range(config.exec, reduced_word_count(len), |i| {
            let g = nth_reduced_word(len, i);
            if !g.in_commutator_subgroup() {
                return None;
            }
            match free_certificate(&g) {
                Ok((_, _, c)) if c.phi_bar >= one && c.scl_lower_bound >= Rational::new(1, 2) => {
                    None
                }
                Ok((_, _, c)) => Some(format!("{g}: phi_bar {}", c.phi_bar)),
                Err(e) => Some(format!("{g}: {e}")),
            }
        });
        ensure(failures.is_empty(), || {
            format!("{} failures, first {}", failures.len(), failures[0])
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{total} words certified with phi_bar >= 1"))
}

fn thin_preservation(config: &Config, _: &Runner) -> Result<String, String> {
    let n = 100_000;
    let failures = filter_map_range(config.exec, n, |i| {
        let mut r = config.rng(3 << 32 | i);
        let t = gen_letter_thin(&mut r, 8);
        let ok = classify(&t).tag.is_letter_thin()
            && classify(&t.alpha()).tag.is_letter_thin()
            && classify(&t.beta()).tag.is_letter_thin();
        (!ok).then(|| t.to_string())
    });
    ensure(failures.is_empty(), || {
        format!("{} failures, first {}", failures.len(), failures[0])
    })?;
    Ok(format!("{n} triples, 0 failures"))
}

fn defect_laws(config: &Config, _: &Runner) -> Result<String, String> {
    let phi = F2SignQm::new();
    let mut r = config.rng(4);
    let certs: Vec<_> = (0..20)
        .map(|_| {
            let g0 = commutator_word(&mut r, 20);
            free_certificate(&g0).map(|c| c.2).map_err(|e| format!("{g0}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    let pairs = 10_000u64;
    let failures = filter_map_range(config.exec, certs.len() as u64 * pairs, |i| {
        let cert = &certs[(i / pairs) as usize];
        let mut r = config.rng(4 << 32 | i);
        let (l1, l2) = (r.gen_range(0..=40), r.gen_range(0..=40));
        let g = random_reduced(&mut r, l1);
        let h = random_reduced(&mut r, l2);
        let d = psi_eval(cert, &phi, &g) + psi_eval(cert, &phi, &h) - psi_eval(cert, &phi, &g.mul(&h));
        let c = coboundary_value(cert, &phi, &g, &h);
        (!(d.abs() == 1 && matches!(c, Ok(0 | 1)))).then(|| format!("{g}, {h}: defect {d}"))
    });
    ensure(failures.is_empty(), || {
        format!("{} failures, first {}", failures.len(), failures[0])
    })?;
    let d = exhaustive_defect(&Functional::Eta0, 8, config.exec);
    ensure(d == 1, || format!("eta0 exhaustive defect {d}"))?;
    Ok(format!(
        "{} psi pairs with defect +-1, eta0 defect over length <= 8 is {d}",
        certs.len() as u64 * pairs
    ))
}

fn dynamics(config: &Config, _: &Runner) -> Result<String, String> {
    let mut words = 0u64;
    for len in 0..=12 {
        words += alt_word_count(len);
        let failures = filter_map_range(config.exec, alt_word_count(len), |i| {
            let w = nth_alt_word(len, i);
            [alpha, beta].into_iter().find_map(|f| {
                let img = f(&w);
                let ok = f(&img) == img
                    && img.len() <= w.len()
                    && (img.len() == w.len()) == (img == w);
                (!ok).then(|| w.to_string())
            })
        });
        ensure(failures.is_empty(), || format!("idempotence fails on {}", failures[0]))?;
    }
    let mut classes: HashSet<EvenAltClass> = HashSet::new();
    for len in (2..=16).step_by(2) {
        let found = filter_map_range(config.exec, alt_word_count(len), |i| {
            let w = nth_alt_word(len, i);
            (w.exp_sum(Gen::A) == 0 && w.exp_sum(Gen::B) == 0).then(|| cyc_class(&w).expect("even"))
        });
        classes.extend(found);
    }
    let list: Vec<&EvenAltClass> = classes.iter().collect();
    let fixed: HashSet<EvenAltClass> = sclgap_core::par::map_slice(config.exec, &list, |c| {
        (alpha_bar(c) == **c && beta_bar(c) == **c).then(|| (*c).clone())
    })
    .into_iter()
    .flatten()
    .collect();
    let expected: HashSet<EvenAltClass> = (1..=4)
        .flat_map(|k| [k, -k])
        .map(|k| cyc_class(&commutator_power(k)).expect("even"))
        .collect();
    ensure(fixed == expected, || {
        let extra: Vec<String> = fixed.difference(&expected).map(|c| c.to_string()).collect();
        let missing: Vec<String> = expected.difference(&fixed).map(|c| c.to_string()).collect();
        format!("unexpected fixed {extra:?}, missing {missing:?}")
    })?;
    Ok(format!(
        "{words} words idempotent and monotone; {} commutator classes, fixed points are [a,b]^k",
        classes.len()
    ))
}

fn admissible<R: Rng>(r: &mut R) -> (AltWord, AltWord, AltWord) {
    let len = 2 * r.gen_range(1..=6);
    let w = random_alt(r, len, None);
    let g = w.first().expect("nonempty").gen();
    let l1 = r.gen_range(0..=8);
    let c1 = random_alt(r, l1, Some(if l1 % 2 == 1 { g.other() } else { g }));
    let l2 = r.gen_range(0..=8);
    let c2 = random_alt(r, l2, Some(g));
    (c1, w, c2)
}

fn power_structure(config: &Config, _: &Runner) -> Result<String, String> {
    let mut r = config.rng(6);
    for _ in 0..1000 {
        let (c1, w, c2) = admissible(&mut r);
        for gen in [Gen::A, Gen::B] {
            let split = power_split_for(gen, &c1, &w, &c2).map_err(|e| format!("{e:?}"))?;
            for n in 1..=6 {
                let full = AltWord::concat(&[c1.letters(), w.pow_even(n).letters(), c2.letters()])
                    .map_err(|e| e.to_string())?;
                ensure(map_for(gen)(&full).letters() == &split.expand(n)[..], || {
                    format!("c1={c1} w={w} c2={c2} n={n}")
                })?;
            }
        }
    }
    Ok("1000 triples x n = 1..6 for alpha and beta, 0 failures".into())
}

fn amalgam_consistency(config: &Config, _: &Runner) -> Result<String, String> {
    let z = free_product_zz();
    for len in 0..=6 {
        for i in 0..reduced_word_count(len) {
            let w = nth_reduced_word(len, i);
            ensure(z.phi_amalgam(&zz_element(&z, &w)) == f2_sign_qm(&w), || {
                format!("sign maps differ on {w}")
            })?;
        }
    }
    let n = 10_000u64;
    let free_fail = filter_map_range(config.exec, n, |i| {
        let mut r = config.rng(7 << 32 | i);
        let (l1, l2) = (r.gen_range(0..=20), r.gen_range(0..=20));
        let g = zz_element(&z, &random_reduced(&mut r, l1));
        let h = zz_element(&z, &random_reduced(&mut r, l2));
        (verify_letter_qm(&z, &g, &h) == LqmCheck::Violation).then(|| format!("{g:?}"))
    });
    ensure(free_fail.is_empty(), || format!("free violation at {}", free_fail[0]))?;
    let raags = [
        Raag::new(Graph::path(&["a", "b", "c"])),
        Raag::new(Graph::cycle(&["a", "b", "c", "d", "e"])),
    ];
    for raag in &raags {
        let splits: Vec<_> = (0..raag.graph.len()).map(|v| raag.star_link_split(v)).collect();
        let fail = filter_map_range(config.exec, n, |i| {
            let mut r = config.rng(7 << 40 | i);
            let v = r.gen_range(0..raag.graph.len());
            let (l1, l2) = (r.gen_range(0..=14), r.gen_range(0..=14));
            let g = raag.random_word(&mut r, l1);
            let h = raag.random_word(&mut r, l2);
            let split = &splits[v];
            let (ag, ah) = (raag.to_amalgam(split, v, &g), raag.to_amalgam(split, v, &h));
            (verify_letter_qm(split, &ag, &ah) == LqmCheck::Violation)
                .then(|| format!("{}, {}", raag.format(&g), raag.format(&h)))
        });
        ensure(fail.is_empty(), || format!("raag violation at {}", fail[0]))?;
    }
    Ok(format!("exhaustive length <= 6 agreement; {n} free and 2 x {n} raag pairs without violation"))
}

fn random_elem<R: Rng>(raag: &Raag, r: &mut R, max: usize) -> RaagElement {
    let len = r.gen_range(0..=max);
    raag.random_word(r, len)
}

fn order_soundness(config: &Config, _: &Runner) -> Result<String, String> {
    let n = 10_000u64;
    let graphs = [
        ("path", Raag::new(Graph::path(&["a", "b", "c"]))),
        ("5-cycle", Raag::new(Graph::cycle(&["a", "b", "c", "d", "e"]))),
    ];
    for (gi, (name, raag)) in graphs.iter().enumerate() {
        let sign = |g: &RaagElement| positivity_sign(raag, g).map_err(|e| e.to_string());
        let verts = raag.graph.len();
        let fail = filter_map_range(config.exec, n, |i| {
            let mut r = config.rng((8 << 40) | (gi as u64) << 32 | i);
            let mut check = || -> Result<(), String> {
                let g = random_elem(raag, &mut r, 10);
                let h = random_elem(raag, &mut r, 5);
                let conj = raag.mul(&raag.mul(&h, &g), &raag.inv(&h));
                ensure(sign(&conj)? == sign(&g)?, || format!("conjugation of {}", raag.format(&g)))?;
                let mut g1 = random_elem(raag, &mut r, 8);
                let mut g2 = random_elem(raag, &mut r, 8);
                if sign(&g1)? < 0 {
                    g1 = raag.inv(&g1);
                }
                if sign(&g2)? < 0 {
                    g2 = raag.inv(&g2);
                }
                if sign(&g1)? == 1 && sign(&g2)? == 1 {
                    ensure(sign(&raag.mul(&g1, &g2))? == 1, || {
                        format!("cone at {}, {}", raag.format(&g1), raag.format(&g2))
                    })?;
                }
                let lambda = r.gen_range(1..(1u64 << verts) - 1);
                let oracle = CosetSignOracle::from_set(raag, lambda);
                let x1 = random_elem(raag, &mut r, 6);
                let x2 = random_elem(raag, &mut r, 6);
                let t = random_elem(raag, &mut r, 6);
                let base = oracle.compare(&x1, &x2).map_err(|e| e.to_string())?;
                let moved = oracle
                    .compare(&raag.mul(&t, &x1), &raag.mul(&t, &x2))
                    .map_err(|e| e.to_string())?;
                let kernel = oracle
                    .compare_via_kernel(&raag.mul(&t, &x1), &raag.mul(&t, &x2))
                    .map_err(|e| e.to_string())?;
                ensure(base == moved && base == kernel, || {
                    format!("coset order at {}, {}", raag.format(&x1), raag.format(&x2))
                })
            };
            check().err()
        });
        ensure(fail.is_empty(), || format!("{name}: {} failures, first {}", fail.len(), fail[0]))?;
    }
    let raag = &graphs[0].1;
    let v = raag.graph.index_of("b").expect("vertex b");
    let link = raag.graph.link(v);
    let mut r = config.rng(8);
    for _ in 0..1000 {
        let g = random_elem(raag, &mut r, 12);
        let s = coset_sign(raag, link, &g).map_err(|e| e.to_string())?;
        ensure(s as i64 == g.exp_sum(v).signum(), || format!("star sign at {}", raag.format(&g)))?;
    }
    Ok(format!("{n} samples x 3 properties on path and 5-cycle; 1000 star/link samples exact"))
}

fn raag_theorem(config: &Config, runner: &Runner) -> Result<String, String> {
    std::fs::create_dir_all(&config.scratch).map_err(|e| e.to_string())?;
    let path = config.scratch.join("path3.json");
    let spec = Graph::path(&["a", "b", "c"]).to_spec();
    std::fs::write(&path, serde_json::to_string(&spec).expect("serializable")).map_err(|e| e.to_string())?;
    let p = path.to_string_lossy().into_owned();
    let (rec, _) = bound_record(runner, &["bound", "--graph", &p, "--word", "acAC", "--json"])?;
    ensure(rec.scl_lower_bound.value() == Rational::new(1, 2), || {
        format!("bound {}", rec.scl_lower_bound)
    })?;
    let clique_words = ["abb", "abAB", "bcBC", "cccb", "b", ""];
    for w in clique_words {
        let out = runner(&args(&["bound", "--graph", &p, "--word", w]));
        ensure(out.status == 1, || format!("`{w}` exited with {}", out.status))?;
    }
    Ok(format!(
        "[a,c] on the path: scl >= {}; {} clique-supported words exit 1",
        rec.scl_lower_bound,
        clique_words.len()
    ))
}

fn known_non_reproduction(_: &Config, runner: &Runner) -> Result<String, String> {
    let (rec, _) = bound_record(runner, &["bound", "--group", "f2", "--word", "abABaBBBAbbb", "--json"])?;
    ensure(rec.scl_lower_bound.value() == Rational::new(1, 2), || {
        format!("bound {}", rec.scl_lower_bound)
    })?;
    ensure(!rec.extended_bound, || "unexpected extended bound".into())?;
    Ok("abABaBBBAbbb gives exactly 1/2; the true value 3/4 is out of scope".into())
}

fn homogenization_cross_check(config: &Config, _: &Runner) -> Result<String, String> {
    let phi = F2SignQm::new();
    let n = 1000u64;
    let fail = filter_map_range(config.exec, n, |i| {
        let mut r = config.rng(11 << 32 | i);
        let g0 = commutator_word(&mut r, 24);
        let check = || -> Result<(), String> {
            let (_, gp, cert) = free_certificate(&g0).map_err(|e| e.to_string())?;
            let slope = phi_bar_eval(&cert, &phi, &gp).map_err(|e| e.to_string())?;
            ensure(slope == cert.phi_bar, || format!("slope {slope} vs {}", cert.phi_bar))?;
            ensure(cert.depth() <= phi.image(&gp).len(), || format!("depth {}", cert.depth()))
        };
        check().err().map(|e| format!("{g0}: {e}"))
    });
    ensure(fail.is_empty(), || format!("{} failures, first {}", fail.len(), fail[0]))?;
    Ok(format!("{n} certificates, exact slope agreement, depth within image length"))
}
