//! Functions defined region by region: open gaps between breakpoints get
//! an expression, each breakpoint monad gets an affine rule `c + alpha dt`.

use std::fmt;

use serde::Serialize;

use super::expr::{eval_real, gen_eval, lambda, Expr};
use crate::error::{Error, Result};
use crate::real::GeneralizedReal;

/// `value + slope * dt` on the monad of a breakpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonadRule {
    pub value: f64,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseGenFn {
    breakpoints: Vec<f64>,
    gaps: Vec<Expr>,
    rules: Vec<MonadRule>,
}

/// Outcome of probing the classical difference quotient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probe {
    Exists(f64),
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PwDerivative {
    pub value: f64,
    pub probe: Probe,
}

enum Region {
    Gap(usize),
    Monad(usize),
}

impl PiecewiseGenFn {
    /// `gaps[i]` applies between `breakpoints[i-1]` and `breakpoints[i]`;
    /// `rules[i]` on the monad of `breakpoints[i]`.
    pub fn new(breakpoints: Vec<f64>, gaps: Vec<Expr>, rules: Vec<MonadRule>) -> Result<Self> {
        if breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::Domain("breakpoints must be finite".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("breakpoints must be strictly increasing".into()));
        }
        if gaps.len() != breakpoints.len() + 1 || rules.len() != breakpoints.len() {
            return Err(Error::Domain(format!(
                "{} breakpoints need {} gap expressions and {} monad rules",
                breakpoints.len(),
                breakpoints.len() + 1,
                breakpoints.len()
            )));
        }
        Ok(PiecewiseGenFn {
            breakpoints,
            gaps,
            rules,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn gaps(&self) -> &[Expr] {
        &self.gaps
    }

    pub fn rules(&self) -> &[MonadRule] {
        &self.rules
    }

    fn region(&self, t: f64) -> Region {
        match self.breakpoints.binary_search_by(|b| b.total_cmp(&t)) {
            Ok(i) => Region::Monad(i),
            Err(i) => Region::Gap(i),
        }
    }

    /// The underlying real function.
    pub fn real_value(&self, t: f64) -> Result<f64> {
        match self.region(t) {
            Region::Monad(i) => Ok(self.rules[i].value),
            Region::Gap(i) => eval_real(&self.gaps[i], t),
        }
    }

    fn region_name(&self, r: &Region) -> String {
        let b = &self.breakpoints;
        match *r {
            Region::Monad(i) => format!("m({})", b[i]),
            Region::Gap(0) if b.is_empty() => "all t".to_string(),
            Region::Gap(0) => format!("t < {}", b[0]),
            Region::Gap(i) if i == b.len() => format!("t > {}", b[i - 1]),
            Region::Gap(i) => format!("{} < t < {}", b[i - 1], b[i]),
        }
    }
}

/// Evaluates on the region containing `t`.
pub fn pw_eval(p: &PiecewiseGenFn, t: &GeneralizedReal) -> Result<GeneralizedReal> {
    match p.region(t.sigma()) {
        Region::Monad(i) => {
            let r = p.rules[i];
            let c = GeneralizedReal::real(r.value)?;
            Ok(c + t.dpart().scale(r.slope))
        }
        Region::Gap(i) => gen_eval(&p.gaps[i], t),
    }
}

const PROBE_KS: std::ops::RangeInclusive<i32> = 4..=20;
const CAUCHY_TAIL: usize = 5;
const CAUCHY_TOL: f64 = 1e-5;
const AGREE_TOL: f64 = 1e-4;

// One-sided difference quotients at +-2^-k, k = 4..=20.
fn one_sided(p: &PiecewiseGenFn, xi0: f64, side: f64) -> Option<Vec<f64>> {
    let f0 = p.real_value(xi0).ok()?;
    PROBE_KS
        .map(|k| {
            let h = side * 2f64.powi(-k);
            let q = (p.real_value(xi0 + h).ok()? - f0) / h;
            q.is_finite().then_some(q)
        })
        .collect()
}

fn is_cauchy(qs: &[f64]) -> bool {
    let tail = &qs[qs.len() - CAUCHY_TAIL..];
    let scale = tail.last().map_or(1.0, |q| q.abs().max(1.0));
    tail.windows(2).all(|w| (w[1] - w[0]).abs() <= CAUCHY_TOL * scale)
}

/// Probes the classical derivative of the underlying real function.
pub fn probe_limit(p: &PiecewiseGenFn, xi0: f64) -> Probe {
    let (Some(right), Some(left)) = (one_sided(p, xi0, 1.0), one_sided(p, xi0, -1.0)) else {
        return Probe::Absent;
    };
    if !is_cauchy(&right) || !is_cauchy(&left) {
        return Probe::Absent;
    }
    let (r, l) = (right[right.len() - 1], left[left.len() - 1]);
    if (r - l).abs() > AGREE_TOL * r.abs().max(l.abs()).max(1.0) {
        return Probe::Absent;
    }
    Probe::Exists(r / 2.0 + l / 2.0)
}

/// Derivative at a real point. On a breakpoint monad this is the declared
/// slope, which must agree with the classical limit when that exists.
pub fn pw_derivative_at(p: &PiecewiseGenFn, xi0: f64) -> Result<PwDerivative> {
    match p.region(xi0) {
        Region::Gap(i) => {
            let d = eval_real(&lambda(&p.gaps[i]), xi0)?;
            Ok(PwDerivative {
                value: d,
                probe: Probe::Exists(d),
            })
        }
        Region::Monad(i) => {
            let alpha = p.rules[i].slope;
            let probe = probe_limit(p, xi0);
            if let Probe::Exists(limit) = probe {
                if (limit - alpha).abs() > AGREE_TOL * alpha.abs().max(1.0) {
                    return Err(Error::ProvisoViolated {
                        declared: alpha,
                        limit,
                    });
                }
            }
            Ok(PwDerivative { value: alpha, probe })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionCheck {
    pub region: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for RegionCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
        };
        write!(f, "{:<12} {s}  {}", self.region, self.detail)
    }
}

const ODE_TOL: f64 = 1e-9;

fn gap_samples(bps: &[f64], i: usize, n: usize) -> Vec<f64> {
    let span = match (bps.first(), bps.last()) {
        (Some(a), Some(b)) => (b - a).max(1.0),
        _ => 1.0,
    };
    let frac = |j: usize| (j as f64 + 0.5) / n as f64;
    (0..n)
        .map(|j| match (i.checked_sub(1).map(|k| bps[k]), bps.get(i)) {
            (Some(a), Some(&b)) => a + (b - a) * frac(j),
            (Some(a), None) => a + span * 4.0 * frac(j),
            (None, Some(&b)) => b - span * 4.0 * frac(j),
            (None, None) => span * 8.0 * (frac(j) - 0.5),
        })
        .collect()
}

fn check_gap(sol: &Expr, rhs: &Expr, ts: &[f64]) -> (Status, String) {
    let d = lambda(sol);
    let mut worst: f64 = 0.0;
    for &t in ts {
        let (dv, rv) = match (eval_real(&d, t), eval_real(rhs, t)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return (Status::Fail, format!("not evaluable at t = {t}")),
        };
        let dev = (dv - rv).abs();
        if dev > ODE_TOL * rv.abs().max(1.0) {
            return (Status::Fail, format!("x'({t}) = {dv} but the right side is {rv}"));
        }
        worst = worst.max(dev);
    }
    (Status::Pass, format!("{} samples, max deviation {worst:e}", ts.len()))
}

fn check_monad(sol: &PiecewiseGenFn, rhs: MonadRule, xi: f64) -> (Status, String) {
    if rhs.slope != 0.0 {
        return (Status::Fail, "right side is not constant on the monad".into());
    }
    match pw_derivative_at(sol, xi) {
        Ok(d) => {
            let probe = match d.probe {
                Probe::Exists(l) => format!("classical limit {l}"),
                Probe::Absent => "classical limit absent".to_string(),
            };
            if d.value == rhs.value {
                (Status::Pass, format!("x' = {} ({probe})", d.value))
            } else {
                (Status::Fail, format!("x' = {} but the right side is {} ({probe})", d.value, rhs.value))
            }
        }
        Err(e) => (Status::Fail, e.to_string()),
    }
}

/// Checks `x' = rhs` region by region: on sampled points of every gap
/// and on every breakpoint monad.
pub fn ode_verify(solution: &PiecewiseGenFn, rhs: &PiecewiseGenFn, samples: usize) -> Result<Vec<RegionCheck>> {
    if solution.breakpoints != rhs.breakpoints {
        return Err(Error::RegionMismatch);
    }
    let bps = &solution.breakpoints;
    let n = samples.max(1);
    let mut out = Vec::new();
    for i in 0..=bps.len() {
        let ts = gap_samples(bps, i, n);
        let (status, detail) = check_gap(&solution.gaps[i], &rhs.gaps[i], &ts);
        out.push(RegionCheck {
            region: solution.region_name(&Region::Gap(i)),
            status,
            detail,
        });
        if i < bps.len() {
            let (status, detail) = check_monad(solution, rhs.rules[i], bps[i]);
            out.push(RegionCheck {
                region: solution.region_name(&Region::Monad(i)),
                status,
                detail,
            });
        }
    }
    // Keep left-to-right order: gap, monad, gap, ...
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::expr::{c, x};
    use crate::seq::Generator;

    fn rule(value: f64, slope: f64) -> MonadRule {
        MonadRule { value, slope }
    }

    fn abs_ext() -> PiecewiseGenFn {
        PiecewiseGenFn::new(vec![0.0], vec![Expr::neg(x()), x()], vec![rule(0.0, 0.0)]).unwrap()
    }

    #[test]
    fn evaluation_by_region() {
        let p = abs_ext();
        let e = |s: f64| GeneralizedReal::make(s, [(Generator::Impulse(1), 1.0)]).unwrap();
        assert_eq!(pw_eval(&p, &e(0.0)).unwrap(), GeneralizedReal::zero());
        assert_eq!(pw_eval(&p, &e(2.0)).unwrap(), e(2.0));
        assert_eq!(pw_eval(&p, &e(-2.0)).unwrap(), -e(-2.0));
    }

    #[test]
    fn derivative_with_proviso() {
        let d = pw_derivative_at(&abs_ext(), 0.0).unwrap();
        assert_eq!(d.value, 0.0);
        assert_eq!(d.probe, Probe::Absent);

        let sq = Expr::pow_int(x(), 2);
        let natural = PiecewiseGenFn::new(vec![3.0], vec![sq.clone(), sq.clone()], vec![rule(9.0, 6.0)]).unwrap();
        let d = pw_derivative_at(&natural, 3.0).unwrap();
        assert_eq!(d.value, 6.0);
        assert!(matches!(d.probe, Probe::Exists(l) if (l - 6.0).abs() < 1e-4));

        let wrong = PiecewiseGenFn::new(vec![0.0], vec![sq.clone(), sq], vec![rule(0.0, 1.0)]).unwrap();
        assert!(matches!(pw_derivative_at(&wrong, 0.0), Err(Error::ProvisoViolated { declared, .. }) if declared == 1.0));
    }

    #[test]
    fn singular_odes() {
        let rhs1 = PiecewiseGenFn::new(vec![0.0], vec![c(-1.0), c(1.0)], vec![rule(1.0, 0.0)]).unwrap();
        let sol1 = PiecewiseGenFn::new(vec![0.0], vec![Expr::neg(x()), x()], vec![rule(0.0, 1.0)]).unwrap();
        let rep = ode_verify(&sol1, &rhs1, 16).unwrap();
        assert_eq!(rep.len(), 3);
        assert!(rep.iter().all(|r| r.status == Status::Pass), "{rep:?}");

        let ident = PiecewiseGenFn::new(vec![0.0], vec![x(), x()], vec![rule(0.0, 1.0)]).unwrap();
        let rep = ode_verify(&ident, &rhs1, 16).unwrap();
        assert_eq!(rep[0].status, Status::Fail);
        assert_eq!(rep[2].status, Status::Pass);

        let rhs2 = PiecewiseGenFn::new(vec![0.0], vec![c(0.0), c(0.0)], vec![rule(1.0, 0.0)]).unwrap();
        let sol2 = PiecewiseGenFn::new(vec![0.0], vec![c(0.0), c(1.0)], vec![rule(1.0, 1.0)]).unwrap();
        let rep = ode_verify(&sol2, &rhs2, 16).unwrap();
        assert!(rep.iter().all(|r| r.status == Status::Pass), "{rep:?}");

        let other = PiecewiseGenFn::new(vec![1.0], vec![c(0.0), c(0.0)], vec![rule(1.0, 0.0)]).unwrap();
        assert_eq!(ode_verify(&sol2, &other, 4), Err(Error::RegionMismatch));
    }

    #[test]
    fn report_json() {
        let r = RegionCheck {
            region: "m(0)".into(),
            status: Status::Pass,
            detail: "ok".into(),
        };
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"region":"m(0)","status":"pass","detail":"ok"}"#);
    }
}
