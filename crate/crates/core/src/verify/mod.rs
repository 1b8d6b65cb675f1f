//! Executable property suites. Every suite is deterministic for a given
//! seed and reports one line per property.

use std::fmt;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

mod algebra;
mod analysis;
pub mod gen;
mod topology;

/// Suite names in run order.
pub const SUITES: [&str; 11] = [
    "identities",
    "ring",
    "oracle",
    "differential",
    "sets",
    "completeness",
    "derivative",
    "taylor",
    "mvt",
    "ode",
    "higher",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub elapsed_ms: f64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "{} [{verdict}] seed {} ({:.1} ms)", self.suite, self.seed, self.elapsed_ms)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "  {mark} {} ({} cases)", c.name, c.cases)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Accumulates instances of one property; keeps the first failure.
pub(crate) struct Tally {
    name: String,
    cases: usize,
    failure: Option<String>,
    note: String,
}

impl Tally {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            failure: None,
            note: String::new(),
        }
    }

    pub(crate) fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    /// Records an operation that must succeed and satisfy `pred`.
    pub(crate) fn result<T>(&mut self, r: Result<T>, pred: impl FnOnce(&T) -> std::result::Result<(), String>) {
        match r {
            Ok(v) => match pred(&v) {
                Ok(()) => self.case(true, String::new),
                Err(msg) => self.case(false, || msg),
            },
            Err(e) => self.case(false, || format!("unexpected error: {e}")),
        }
    }

    pub(crate) fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub(crate) fn finish(self) -> Check {
        let passed = self.failure.is_none() && self.cases > 0;
        let detail = match self.failure {
            Some(f) => f,
            None if self.cases == 0 => "no cases ran".into(),
            None => self.note,
        };
        Check {
            name: self.name,
            passed,
            cases: self.cases,
            detail,
        }
    }
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn suite_rng(seed: u64, name: &str) -> ChaCha8Rng {
    // Each suite gets its own stream so suites can run alone.
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Runs one suite by name.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let mut rng = suite_rng(seed, name);
    let start = Instant::now();
    let checks = match name {
        "identities" => algebra::identities(&mut rng),
        "ring" => algebra::ring(&mut rng),
        "oracle" => algebra::oracle(&mut rng),
        "differential" => algebra::differential(&mut rng),
        "sets" => topology::sets(&mut rng),
        "completeness" => topology::completeness(&mut rng),
        "derivative" => analysis::derivative(&mut rng),
        "taylor" => analysis::taylor_suite(&mut rng),
        "mvt" => analysis::mvt(&mut rng),
        "ode" => analysis::ode(),
        "higher" => analysis::higher(&mut rng),
        other => {
            return Err(Error::Domain(format!(
                "unknown suite `{other}`; known suites: {}",
                SUITES.join(", ")
            )))
        }
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        passed: checks.iter().all(|c| c.passed),
        elapsed_ms,
        checks,
    })
}

pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|s| run_suite(s, seed).expect("listed suites exist"))
        .collect()
}
