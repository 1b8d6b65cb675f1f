//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Each criterion runs its property suite at the default seed (or
//! `MONADICA_SEED`) plus a few literal spot checks, and must finish within
//! its time budget.

use std::process::ExitCode;
use std::time::Instant;

use monadica::calculus::{gen_eval, taylor, x, Expr, GenFn};
use monadica::sets::{monad, sup_r};
use monadica::verify::{run_suite, SuiteReport};
use monadica::{GeneralizedReal, Generator, RealSet};

struct Criterion {
    id: u32,
    title: &'static str,
    suite: &'static str,
    budget_ms: f64,
    spot: fn() -> Result<(), String>,
}

fn e1(shadow: f64) -> GeneralizedReal {
    GeneralizedReal::make(shadow, [(Generator::Impulse(1), 1.0)]).unwrap()
}

fn none() -> Result<(), String> {
    Ok(())
}

fn identities_spot() -> Result<(), String> {
    let got = gen_eval(&Expr::exp(x()), &e1(0.0)).map_err(|e| e.to_string())?;
    if got != e1(1.0) {
        return Err(format!("exp(e:1) = {got}"));
    }
    let got = gen_eval(&Expr::log(x()), &e1(1.0)).map_err(|e| e.to_string())?;
    if got != e1(0.0) {
        return Err(format!("log(1 + e:1) = {got}"));
    }
    Ok(())
}

fn ring_spot() -> Result<(), String> {
    let d = GeneralizedReal::make(0.0, [(Generator::Impulse(3), 2.5), (Generator::Harmonic, -1.0)]).unwrap();
    let sq = &d * &d;
    if sq != GeneralizedReal::zero() {
        return Err(format!("dx dx = {sq}"));
    }
    Ok(())
}

fn completeness_spot() -> Result<(), String> {
    let s = sup_r(&monad(&RealSet::open(0.0, 1.0))).map_err(|e| e.to_string())?;
    if s != 1.0 {
        return Err(format!("sup_r(m(]0, 1[)) = {s}"));
    }
    Ok(())
}

fn taylor_spot() -> Result<(), String> {
    let exp = GenFn::on_reals(Expr::exp(x())).map_err(|e| e.to_string())?;
    let r = taylor(&exp, 0.0, 3, &GeneralizedReal::real(0.5).unwrap()).map_err(|e| e.to_string())?;
    let th = r.theta.ok_or("no theta")?;
    if (r.partial_sum - 1.6458333).abs() > 1e-7 || !(th > 0.0 && th < 1.0) || (th - 0.2068).abs() > 1e-3 {
        return Err(format!("{r:?}"));
    }
    Ok(())
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "elementary identities at coefficient level", suite: "identities", budget_ms: 1000.0, spot: identities_spot },
    Criterion { id: 2, title: "ring and order laws, nilpotency", suite: "ring", budget_ms: 2000.0, spot: ring_spot },
    Criterion { id: 3, title: "termwise sequence oracle", suite: "oracle", budget_ms: 2000.0, spot: none },
    Criterion { id: 4, title: "differential rules", suite: "differential", budget_ms: 1000.0, spot: none },
    Criterion { id: 5, title: "monads, shadows, topology, hat-intervals", suite: "sets", budget_ms: 2000.0, spot: none },
    Criterion { id: 6, title: "real supremum equals classical supremum", suite: "completeness", budget_ms: 1000.0, spot: completeness_spot },
    Criterion { id: 7, title: "derivative engine", suite: "derivative", budget_ms: 3000.0, spot: none },
    Criterion { id: 8, title: "Taylor expansion and Lagrange bound", suite: "taylor", budget_ms: 2000.0, spot: taylor_spot },
    Criterion { id: 9, title: "mean value identity", suite: "mvt", budget_ms: 1000.0, spot: none },
    Criterion { id: 10, title: "singular ODEs and the derivative proviso", suite: "ode", budget_ms: 1000.0, spot: none },
    Criterion { id: 11, title: "higher extensions of x^2, exp, sin, cos", suite: "higher", budget_ms: 1000.0, spot: none },
];

fn seed() -> u64 {
    std::env::var("MONADICA_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0)
}

fn judge(c: &Criterion, report: &SuiteReport, spot: &Result<(), String>, ms: f64) -> Vec<String> {
    let mut problems: Vec<String> = report.failures().map(|f| format!("{}: {}", f.name, f.detail)).collect();
    if let Err(e) = spot {
        problems.push(format!("spot check: {e}"));
    }
    if ms > c.budget_ms {
        problems.push(format!("took {ms:.0} ms, budget {:.0} ms", c.budget_ms));
    }
    problems
}

fn main() -> ExitCode {
    let seed = seed();
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let report = run_suite(c.suite, seed).expect("known suite");
        let spot = (c.spot)();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let cases: usize = report.checks.iter().map(|k| k.cases).sum();
        let problems = judge(c, &report, &spot, ms);
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {verdict}  {} [{} properties, {cases} cases, {ms:.1} ms, seed {seed}]",
            c.id,
            c.title,
            report.checks.len()
        );
        for p in &problems {
            println!("    {p}");
        }
        if !problems.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", CRITERIA.len());
        ExitCode::FAILURE
    }
}
