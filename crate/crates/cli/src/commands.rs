//! Subcommands as pure functions returning exit code and output text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ellsurf_core::arith::parse_rational;
use ellsurf_core::error::{TopologyError, TransformError};
use ellsurf_core::oracle::compare;
use ellsurf_core::sampling::random_real_generic;
use ellsurf_core::search::{search_extremal, SearchBudget};
use ellsurf_core::topology::betti;
use ellsurf_core::transforms::{i0star_transform, twist, verify_i0star, I0StarParams};
use ellsurf_core::weierstrass::{classify_fibers, WeierstrassTriple};

use crate::document::{InputError, TripleDocument};
use crate::report::ReportDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
/// `search` exhausted its budget.
pub const EXIT_NOT_FOUND: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Output { code, stdout: String::new(), stderr }
    }
}

fn load(doc: &TripleDocument) -> Result<WeierstrassTriple, Output> {
    doc.to_triple().map_err(|e| Output::fail(EXIT_INVALID, format!("{e}\n")))
}

fn read(path: &str) -> Result<TripleDocument, Output> {
    TripleDocument::read(path).map_err(|e| Output::fail(EXIT_INVALID, format!("{e}\n")))
}

fn unwrap_or_output(r: Result<Output, Output>) -> Output {
    r.unwrap_or_else(|o| o)
}

pub fn validate(doc: &TripleDocument) -> Output {
    match doc.to_triple() {
        Ok(t) => Output::ok(format!(
            "valid: k = {}, deg p = {}, deg q = {}, deg discriminant = {}\n",
            t.k(),
            t.p().degree(),
            t.q().degree(),
            t.discriminant().degree()
        )),
        Err(InputError::Invalid(e)) => Output::fail(EXIT_INVALID, format!("invalid: {e}\n")),
        Err(e) => Output::fail(EXIT_INVALID, format!("{e}\n")),
    }
}

pub fn validate_file(path: &str) -> Output {
    unwrap_or_output(read(path).map(|d| validate(&d)))
}

pub fn report(doc: &TripleDocument, json: bool) -> Output {
    unwrap_or_output((|| {
        let t = load(doc)?;
        let r = ReportDocument::build(&t)
            .map_err(|e| Output::fail(EXIT_VIOLATION, format!("internal inconsistency: {e}\n")))?;
        Ok(Output::ok(if json { r.to_json() + "\n" } else { r.to_text() }))
    })())
}

pub fn report_file(path: &str, json: bool) -> Output {
    unwrap_or_output(read(path).map(|d| report(&d, json)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    Twist,
    I0Star(String, String),
}

fn duality_failures(t: &WeierstrassTriple, tw: &WeierstrassTriple) -> Result<Vec<String>, TopologyError> {
    let mut failures = Vec::new();
    if twist(tw) != *t {
        failures.push("twist is not an involution".to_string());
    }
    if classify_fibers(t)? != classify_fibers(tw)? {
        failures.push("twist changed the complex fiber data".to_string());
    }
    match (betti(t), betti(tw)) {
        (Ok(a), Ok(b)) => {
            let checks = [
                (b.h1 == 2 * a.h0, "h1(X') = 2 h0(X)"),
                (2 * b.h0 == a.h1, "h0(X') = h1(X)/2"),
                (b.h_star == a.h_star, "h*(X') = h*(X)"),
                (b.chi == -a.chi, "chi(X') = -chi(X)"),
            ];
            failures.extend(checks.iter().filter(|(ok, _)| !ok).map(|(_, n)| n.to_string()));
        }
        (Err(TopologyError::NotRealGeneric(_)), Err(TopologyError::NotRealGeneric(_))) => {}
        (Err(e), _) | (_, Err(e)) => return Err(e),
    }
    Ok(failures)
}

pub fn transform(doc: &TripleDocument, op: &Transform, verify: bool) -> Output {
    unwrap_or_output((|| {
        let t = load(doc)?;
        let invalid = |e: TransformError| Output::fail(EXIT_INVALID, format!("invalid parameters: {e}\n"));
        let (out, failures) = match op {
            Transform::Twist => {
                let y = twist(&t);
                let failures = if verify {
                    duality_failures(&t, &y).map_err(|e| Output::fail(EXIT_VIOLATION, format!("{e}\n")))?
                } else {
                    Vec::new()
                };
                (y, failures)
            }
            Transform::I0Star(a, b) => {
                let parse = |s: &str| {
                    parse_rational(s)
                        .ok_or_else(|| Output::fail(EXIT_INVALID, format!("parse error: {s:?} is not an exact rational\n")))
                };
                let params = I0StarParams::new(parse(a)?, parse(b)?).map_err(invalid)?;
                let y = i0star_transform(&t, &params).map_err(invalid)?;
                let failures = if verify {
                    let v = verify_i0star(&t, &params, &y).map_err(|e| Output::fail(EXIT_VIOLATION, format!("{e}\n")))?;
                    v.failures().iter().map(|s| s.to_string()).collect()
                } else {
                    Vec::new()
                };
                (y, failures)
            }
        };
        let doc = TripleDocument::from_triple(&out.normalize());
        let mut o = Output::ok(doc.to_json() + "\n");
        if verify {
            if failures.is_empty() {
                o.stderr = "verify: all checks passed\n".to_string();
            } else {
                o.code = EXIT_VIOLATION;
                o.stderr = failures.iter().map(|f| format!("verify FAILED: {f}\n")).collect();
            }
        }
        Ok(o)
    })())
}

pub fn transform_file(path: &str, op: &Transform, verify: bool) -> Output {
    unwrap_or_output(read(path).map(|d| transform(&d, op, verify)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub k: u32,
    pub trials: u64,
    pub seed: u64,
    /// The oracle runs on every trial whose index is a multiple of this.
    pub oracle_stride: u64,
    /// Worker cap; does not affect the output.
    pub threads: Option<usize>,
}

struct Trial {
    h0h1: Option<(u32, u32)>,
    oracle_checked: bool,
    violations: Vec<String>,
    doc: TripleDocument,
}

/// The triple drawn for trial `index`.
pub fn fuzz_triple(k: u32, seed: u64, index: u64) -> WeierstrassTriple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    random_real_generic(&mut rng, k)
}

fn run_trial(cfg: &FuzzConfig, index: u64) -> Trial {
    let t = fuzz_triple(cfg.k, cfg.seed, index);
    let mut violations = Vec::new();
    match classify_fibers(&t) {
        Ok(c) if c.euler_sum() == 12 * cfg.k => {}
        Ok(c) => violations.push(format!("Euler sum {} != 12k", c.euler_sum())),
        Err(e) => violations.push(format!("classification failed: {e}")),
    }
    let h0h1 = match betti(&t) {
        Ok(r) => {
            violations.extend(r.bounds.violations());
            Some((r.h0, r.h1))
        }
        Err(e) => {
            violations.push(format!("topology failed: {e}"));
            None
        }
    };
    match duality_failures(&t, &twist(&t)) {
        Ok(f) => violations.extend(f),
        Err(e) => violations.push(format!("twist topology failed: {e}")),
    }
    let oracle_checked = index % cfg.oracle_stride.max(1) == 0;
    if oracle_checked {
        match compare(&t) {
            Ok(c) if c.agree() => {}
            Ok(c) => violations.push(format!("oracle {c}")),
            Err(e) => violations.push(format!("oracle failed: {e}")),
        }
    }
    Trial { h0h1, oracle_checked, violations, doc: TripleDocument::from_triple(&t) }
}

pub fn fuzz(cfg: &FuzzConfig) -> Output {
    if cfg.k == 0 {
        return Output::fail(EXIT_INVALID, "invalid parameters: k must be positive\n".into());
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        pool = pool.num_threads(n.max(1));
    }
    let pool = pool.build().expect("thread pool");
    let trials: Vec<Trial> = pool.install(|| (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect());

    let mut s = String::new();
    let _ = writeln!(s, "fuzz k={} trials={} seed={}", cfg.k, cfg.trials, cfg.seed);
    let mut hist: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for t in &trials {
        if let Some(key) = t.h0h1 {
            *hist.entry(key).or_default() += 1;
        }
    }
    let _ = writeln!(s, "(h0, h1) distribution:");
    for ((h0, h1), n) in &hist {
        let _ = writeln!(s, "  h0={h0} h1={h1}: {n}");
    }
    let oracle = trials.iter().filter(|t| t.oracle_checked).count();
    let bad: Vec<(usize, &Trial)> = trials.iter().enumerate().filter(|(_, t)| !t.violations.is_empty()).collect();
    let _ = writeln!(s, "oracle comparisons: {oracle}");
    let _ = writeln!(s, "violations: {}", bad.len());
    for (i, t) in &bad {
        let _ = writeln!(s, "trial {i}:");
        for v in &t.violations {
            let _ = writeln!(s, "  {v}");
        }
        let _ = writeln!(s, "{}", t.doc.to_json());
    }
    Output { code: if bad.is_empty() { EXIT_OK } else { EXIT_VIOLATION }, stdout: s, stderr: String::new() }
}

pub fn search(k: u32, components: u32, budget: SearchBudget) -> Output {
    if k == 0 {
        return Output::fail(EXIT_INVALID, "invalid parameters: k must be positive\n".into());
    }
    match search_extremal(k, components, budget) {
        Ok(o) => {
            let mut out = Output::ok(TripleDocument::from_triple(&o.triple).to_json() + "\n");
            out.stderr = format!(
                "found at candidate {}: h0 = {}, h1 = {}, arc+ = {}, arc- = {}; oracle {}\n",
                o.candidate, o.report.h0, o.report.h1, o.report.arc_plus, o.report.arc_minus, o.comparison
            );
            out
        }
        Err(e @ TransformError::TargetExceedsBound { .. }) => {
            Output::fail(EXIT_INVALID, format!("rejected: {e} (real components never exceed 5k)\n"))
        }
        Err(e) => Output::fail(EXIT_NOT_FOUND, format!("{e}\n")),
    }
}

pub fn oracle_check(doc: &TripleDocument) -> Output {
    unwrap_or_output((|| {
        let t = load(doc)?;
        match compare(&t) {
            Ok(c) => {
                let mut o = Output::ok(format!("{c}\n"));
                if c.agree() {
                    o.stdout.push_str(&c.trace);
                } else {
                    o.code = EXIT_VIOLATION;
                }
                Ok(o)
            }
            Err(e @ TopologyError::NotRealGeneric(_)) => Err(Output::fail(EXIT_INVALID, format!("refused: {e}\n"))),
            Err(e) => Err(Output::fail(EXIT_VIOLATION, format!("{e}\n"))),
        }
    })())
}

pub fn oracle_check_file(path: &str) -> Output {
    unwrap_or_output(read(path).map(|d| oracle_check(&d)))
}

