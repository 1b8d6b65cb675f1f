//! Natural indiscernible extensions of real functions on open intervals,
//! and the theorems built on them: derivatives, higher extensions,
//! Taylor, mean value, inverse functions and images of sets.

use std::f64::consts::PI;

use serde::Serialize;

use super::expr::{eval_ieee, eval_real, gen_eval, lambda, Expr, InverseFn};
use super::jet::eval_jet;
use crate::error::{Error, Result};
use crate::real::GeneralizedReal;
use crate::sets::{GeneralizedSet, Interval, RealSet};

/// Number of sample points used for domain validation and root scans.
pub const GRID: usize = 1024;

/// Maps `t` in `]0, 1[` onto `]lo, hi[`.
pub fn interval_point(lo: f64, hi: f64, t: f64) -> f64 {
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => lo + (hi - lo) * t,
        (true, false) => lo + t / (1.0 - t),
        (false, true) => hi - (1.0 - t) / t,
        (false, false) => (PI * (t - 0.5)).tan(),
    }
}

/// `GRID` interior points of `]lo, hi[`, increasing.
pub fn grid_points(lo: f64, hi: f64) -> Vec<f64> {
    (0..GRID)
        .map(|i| interval_point(lo, hi, (i as f64 + 0.5) / GRID as f64))
        .collect()
}

/// Root of `g` on `[a, b]` given a sign change, to width `tol` (or as far
/// as binary64 allows).
pub fn bisect(g: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut ga = g(a)?;
    if ga == 0.0 {
        return Ok(a);
    }
    for _ in 0..200 {
        let m = a / 2.0 + b / 2.0;
        if (b - a) <= tol || m <= a || m >= b {
            break;
        }
        let gm = g(m)?;
        if gm == 0.0 {
            return Ok(m);
        }
        if (gm < 0.0) == (ga < 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    Ok(a / 2.0 + b / 2.0)
}

/// A real function `phi` on an open interval together with its symbolic
/// derivative, total on that interval.
#[derive(Debug, Clone, PartialEq)]
pub struct GenFn {
    expr: Expr,
    lo: f64,
    hi: f64,
    lambda: Expr,
}

impl GenFn {
    /// Checks `phi` and `lambda phi` on `GRID` sample points of `]lo, hi[`.
    pub fn new(expr: Expr, lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || !(lo < hi) {
            return Err(Error::Domain(format!("domain ]{lo}, {hi}[ is not an open interval")));
        }
        let lam = lambda(&expr);
        for t in grid_points(lo, hi) {
            eval_real(&expr, t)?;
            eval_real(&lam, t).map_err(|_| {
                Error::NotDifferentiable(format!("derivative {lam} undefined at {t}"))
            })?;
        }
        Ok(GenFn {
            expr,
            lo,
            hi,
            lambda: lam,
        })
    }

    /// On the whole real line.
    pub fn on_reals(expr: Expr) -> Result<Self> {
        GenFn::new(expr, f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn lambda(&self) -> &Expr {
        &self.lambda
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo < t && t < self.hi
    }

    fn check(&self, t: f64) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfDomain(t))
        }
    }

    /// `phi(t)`.
    pub fn value(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        eval_real(&self.expr, t)
    }

    /// `lambda^(k) phi (t)`, with `k = 0` giving `phi`. Orders above one
    /// come from series arithmetic rather than symbolic derivatives.
    pub fn nth_lambda(&self, k: u32, t: f64) -> Result<f64> {
        self.check(t)?;
        match k {
            0 => eval_real(&self.expr, t),
            1 => eval_lambda(&self.lambda, t, 1),
            k => self.jet(k, t).map(|j| j[k as usize]),
        }
    }

    // phi(t), ..., lambda^(k) phi(t)
    fn jet(&self, k: u32, t: f64) -> Result<Vec<f64>> {
        let j = eval_jet(&self.expr, t, k as usize)
            .map_err(|_| Error::NotDifferentiable(format!("derivative of order {k} undefined at {t}")))?;
        if j.iter().any(|v| v.is_nan()) {
            return Err(Error::NotDifferentiable(format!("derivative of order {k} undefined at {t}")));
        }
        Ok(j)
    }

    /// `phi(sigma x) + lambda phi(sigma x) dx`.
    pub fn nat_ext_eval(&self, x: &GeneralizedReal) -> Result<GeneralizedReal> {
        let s = x.sigma();
        let v = self.value(s)?;
        let d = self.nth_lambda(1, s)?;
        finite_lift(x, v, d)
    }

    /// Structural evaluation of the expression (agrees with the natural
    /// extension).
    pub fn gen_eval(&self, x: &GeneralizedReal) -> Result<GeneralizedReal> {
        self.check(x.sigma())?;
        gen_eval(&self.expr, x)
    }

    /// The derivative, constant on every monad: `lambda phi(sigma x)`.
    pub fn derivative_at(&self, x: &GeneralizedReal) -> Result<f64> {
        self.nth_lambda(1, x.sigma())
    }

    /// `lambda^(m-1)(sigma x) + lambda^(m)(sigma x) dx`.
    pub fn mth_ext_eval(&self, m: u32, x: &GeneralizedReal) -> Result<GeneralizedReal> {
        if m == 0 {
            return Err(Error::Domain("extension order starts at 1".into()));
        }
        let s = x.sigma();
        self.check(s)?;
        let (v, d) = (self.nth_lambda(m - 1, s)?, self.nth_lambda(m, s)?);
        finite_lift(x, v, d)
    }

    /// `lambda^(m)(sigma x)`.
    pub fn mth_derivative(&self, m: u32, x: &GeneralizedReal) -> Result<f64> {
        self.nth_lambda(m, x.sigma())
    }

}

fn eval_lambda(e: &Expr, t: f64, k: u32) -> Result<f64> {
    eval_real(e, t)
        .map_err(|_| Error::NotDifferentiable(format!("derivative of order {k} undefined at {t}")))
}

fn finite_lift(x: &GeneralizedReal, v: f64, d: f64) -> Result<GeneralizedReal> {
    if !v.is_finite() || !d.is_finite() {
        return Err(Error::OutOfDomain(x.sigma()));
    }
    Ok(x.lift(v, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaylorResult {
    pub partial_sum: f64,
    pub remainder_bound: f64,
    /// A Lagrange point in `]0, 1[`, when the root search finds one.
    pub theta: Option<f64>,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Taylor polynomial of order `m` at `xi0` evaluated at `sigma x`, with a
/// Lagrange point and a bound for the remainder.
pub fn taylor(f: &GenFn, xi0: f64, m: u32, x: &GeneralizedReal) -> Result<TaylorResult> {
    let s = x.sigma();
    f.check(xi0)?;
    f.check(s)?;
    if s == xi0 {
        return Err(Error::OutOfDomain(s));
    }
    let h = s - xi0;
    let at0 = f.jet(m, xi0)?;
    let mut partial_sum = 0.0;
    for k in 0..=m {
        partial_sum += at0[k as usize] * h.powi(k as i32) / factorial(k);
    }
    let value = f.value(s)?;
    let top = |t: f64| f.nth_lambda(m + 1, t);
    let scale = h.powi(m as i32 + 1) / factorial(m + 1);
    let g = |theta: f64| -> Result<f64> {
        let d = top(xi0 + theta * h)?;
        Ok(value - partial_sum - scale * d)
    };

    let thetas: Vec<f64> = (0..=GRID).map(|j| j as f64 / GRID as f64).collect();
    let mut gs = Vec::with_capacity(thetas.len());
    let mut max_top: f64 = 0.0;
    for &t in &thetas {
        max_top = max_top.max(top(xi0 + t * h)?.abs());
        gs.push(g(t)?);
    }

    let mut theta = None;
    for j in 1..=GRID {
        let (t0, t1) = (thetas[j - 1], thetas[j]);
        if gs[j - 1] == 0.0 && t0 > 0.0 {
            theta = Some(t0);
            break;
        }
        if (gs[j - 1] < 0.0) != (gs[j] < 0.0) && gs[j] != 0.0 {
            let r = bisect(g, t0, t1, 0.0)?;
            if r > 0.0 && r < 1.0 {
                theta = Some(r);
                break;
            }
        }
    }
    if theta.is_none() {
        let (j, gmin) = (1..GRID)
            .map(|j| (j, gs[j].abs()))
            .fold((0, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc });
        if gmin <= 1e-10 {
            theta = Some(thetas[j]);
        }
    }
    if let Some(t) = theta {
        max_top = max_top.max(top(xi0 + t * h)?.abs());
    }
    Ok(TaylorResult {
        partial_sum,
        remainder_bound: max_top * scale.abs(),
        theta,
    })
}

/// A real `gamma` strictly between the shadows of `a < b` with
/// `phi(b) - phi(a) = lambda phi(gamma) (b - a)` on shadows.
pub fn mvt_gamma(f: &GenFn, a: &GeneralizedReal, b: &GeneralizedReal) -> Result<f64> {
    let (sa, sb) = (a.sigma(), b.sigma());
    if !a.lt(b) {
        return Err(Error::Domain("mean value point needs a < b".into()));
    }
    let slope = (f.value(sb)? - f.value(sa)?) / (sb - sa);
    let g = |t: f64| -> Result<f64> { Ok(f.nth_lambda(1, t)? - slope) };
    let pts: Vec<f64> = (1..GRID)
        .map(|j| sa + (sb - sa) * (j as f64 / GRID as f64))
        .filter(|t| *t > sa && *t < sb)
        .collect();
    let vals = pts.iter().map(|&t| g(t)).collect::<Result<Vec<f64>>>()?;
    for j in 0..pts.len() {
        if vals[j] == 0.0 {
            return Ok(pts[j]);
        }
        if j > 0 && (vals[j - 1] < 0.0) != (vals[j] < 0.0) {
            return bisect(g, pts[j - 1], pts[j], 0.0);
        }
    }
    // Sign changes may sit in the end cells.
    let ends = [(sa, pts.first().copied()), (pts.last().copied().unwrap_or(sb), Some(sb))];
    for (lo, hi) in ends {
        let Some(hi) = hi else { continue };
        let (glo, ghi) = (g(lo).ok(), g(hi).ok());
        if let (Some(u), Some(v)) = (glo, ghi) {
            if (u < 0.0) != (v < 0.0) {
                let r = bisect(g, lo, hi, 0.0)?;
                if r > sa && r < sb {
                    return Ok(r);
                }
            }
        }
    }
    // No sign change: a touching root. Refine |g| around the best cell.
    let j = (0..vals.len())
        .min_by(|&p, &q| vals[p].abs().total_cmp(&vals[q].abs()))
        .ok_or_else(|| Error::Domain("interval too narrow".into()))?;
    let mut lo = if j > 0 { pts[j - 1] } else { sa / 2.0 + pts[j] / 2.0 };
    let mut hi = if j + 1 < pts.len() { pts[j + 1] } else { pts[j] / 2.0 + sb / 2.0 };
    let abs_g = |t: f64| g(t).map(f64::abs);
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if !(lo < m1 && m1 < m2 && m2 < hi) {
            break;
        }
        if abs_g(m1)? <= abs_g(m2)? {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let refined = lo / 2.0 + hi / 2.0;
    Ok(if abs_g(refined)? <= vals[j].abs() { refined } else { pts[j] })
}

// Limit of phi at an end of ]lo, hi[ from inside.
fn end_limit(e: &Expr, end: f64, other: f64) -> f64 {
    let v = eval_ieee(e, end);
    if !v.is_nan() {
        return v;
    }
    let mut last = f64::NAN;
    for k in 1..=60 {
        let t = if end.is_finite() {
            end + (other_finite(other, end) - end) * 0.5f64.powi(k)
        } else {
            end.signum() * 2f64.powi(k)
        };
        let v = eval_ieee(e, t);
        if v.is_nan() {
            break;
        }
        last = v;
    }
    if last.abs() > 1e300 {
        last.signum() * f64::INFINITY
    } else {
        last
    }
}

fn other_finite(other: f64, end: f64) -> f64 {
    if other.is_finite() {
        other
    } else {
        end - other.signum()
    }
}

// Derivative sign over the domain: +1, -1, or an error.
fn monotone_sign(f: &GenFn) -> Result<f64> {
    let mut sign = 0.0;
    for t in grid_points(f.lo, f.hi) {
        let d = eval_real(&f.lambda, t)?;
        if d == 0.0 {
            return Err(Error::VanishingDerivative);
        }
        if sign == 0.0 {
            sign = d.signum();
        } else if d.signum() != sign {
            return Err(Error::NotInjective);
        }
    }
    Ok(sign)
}

/// The natural extension of the inverse function.
pub fn inverse_ext(f: &GenFn) -> Result<GenFn> {
    let sign = monotone_sign(f)?;
    let a = end_limit(&f.expr, f.lo, f.hi);
    let b = end_limit(&f.expr, f.hi, f.lo);
    let (lo, hi) = if sign > 0.0 { (a, b) } else { (b, a) };
    if lo.is_nan() || hi.is_nan() || !(lo < hi) {
        return Err(Error::Domain("image of the domain could not be determined".into()));
    }
    let whole = f.lo == f64::NEG_INFINITY && f.hi == f64::INFINITY;
    let positive = f.lo == 0.0 && f.hi == f64::INFINITY;
    let expr = match &f.expr {
        Expr::Exp(a) if **a == Expr::Var && whole => Expr::log(Expr::Var),
        Expr::Log(a) if **a == Expr::Var && positive => Expr::exp(Expr::Var),
        Expr::PowReal(a, al) if **a == Expr::Var && positive => Expr::pow_real(Expr::Var, 1.0 / al),
        Expr::Root(a, m) if **a == Expr::Var && positive => Expr::pow_int(Expr::Var, *m as i32),
        e => Expr::inverse(InverseFn {
            func: e.clone(),
            lo: f.lo,
            hi: f.hi,
            increasing: sign > 0.0,
        }),
    };
    GenFn::new(expr, lo, hi)
}

/// Derivatives of absolute value at most this are treated as zero at the
/// closed ends of a set when splitting into monotone pieces.
pub const ZERO_SLOPE: f64 = 1e-12;

/// Image of a subset of the domain under the natural extension.
///
/// Reals in the image are `phi(J)`; nonreal values come from points where
/// the derivative does not vanish.
pub fn image(f: &GenFn, j: &RealSet) -> Result<GeneralizedSet> {
    let mut base = RealSet::empty();
    let mut reals = RealSet::empty();
    for part in j.parts() {
        let below = part.lo < f.lo || (part.lo == f.lo && part.lo_closed);
        let above = part.hi > f.hi || (part.hi == f.hi && part.hi_closed);
        if below || above {
            return Err(Error::OutOfDomain(if below { part.lo } else { part.hi }));
        }
        let (b, r) = image_part(f, part)?;
        base = base.union(&b);
        reals = reals.union(&r);
    }
    Ok(GeneralizedSet::new(base, &reals, &RealSet::empty()))
}

fn image_part(f: &GenFn, part: &Interval) -> Result<(RealSet, RealSet)> {
    let phi = |t: f64| eval_real(&f.expr, t);
    let lam = |t: f64| eval_real(&f.lambda, t);
    if part.is_point() {
        let p = part.lo;
        let v = RealSet::point(phi(p)?);
        let b = if lam(p)?.abs() > ZERO_SLOPE { v.clone() } else { RealSet::empty() };
        return Ok((b, v));
    }
    let (lo, hi) = (part.lo, part.hi);
    let mut ts = vec![];
    if part.lo_closed {
        ts.push(lo);
    }
    ts.extend(grid_points(lo, hi));
    if part.hi_closed {
        ts.push(hi);
    }
    let ds = ts.iter().map(|&t| lam(t)).collect::<Result<Vec<f64>>>()?;

    // Zeros of the derivative, in order.
    let mut zeros: Vec<f64> = Vec::new();
    // Closed ends use a tolerance; inside, only exact zeros and sign
    // changes count, so fast decay (exp near -inf) is not a zero.
    let is_zero = |t: f64, d: f64| {
        let end = (t == lo && part.lo_closed) || (t == hi && part.hi_closed);
        if end {
            d.abs() <= ZERO_SLOPE
        } else {
            d == 0.0
        }
    };
    let flags: Vec<bool> = ts.iter().zip(&ds).map(|(&t, &d)| is_zero(t, d)).collect();
    if flags.iter().all(|z| *z) {
        // Constant on the part.
        let v = RealSet::point(phi(ts[ts.len() / 2])?);
        return Ok((RealSet::empty(), v));
    }
    // Runs of vanishing derivative reaching an infinite end are underflow
    // tails, not critical points.
    let mut skip = vec![false; ts.len()];
    if lo == f64::NEG_INFINITY {
        for i in 0..ts.len() {
            if !flags[i] {
                break;
            }
            skip[i] = true;
        }
    }
    if hi == f64::INFINITY {
        for i in (0..ts.len()).rev() {
            if !flags[i] {
                break;
            }
            skip[i] = true;
        }
    }
    for i in 0..ts.len() {
        if skip[i] {
            continue;
        }
        if flags[i] {
            zeros.push(ts[i]);
        } else if i > 0 && !flags[i - 1] && !skip[i - 1] && (ds[i - 1] < 0.0) != (ds[i] < 0.0) {
            zeros.push(bisect(lam, ts[i - 1], ts[i], 0.0)?);
        }
    }

    let value_at = |t: f64, closed: bool, other: f64| -> Result<f64> {
        if closed || (t > lo && t < hi) {
            phi(t)
        } else {
            Ok(end_limit(&f.expr, t, other))
        }
    };

    let mut cuts = vec![(lo, part.lo_closed)];
    cuts.extend(zeros.iter().map(|&z| (z, true)));
    cuts.push((hi, part.hi_closed));
    cuts.dedup_by(|a, b| a.0 == b.0);

    let mut base = RealSet::empty();
    let mut reals = RealSet::empty();
    for w in cuts.windows(2) {
        let ((u, _), (v, _)) = (w[0], w[1]);
        if !(u < v) {
            continue;
        }
        let fu = value_at(u, u != lo || part.lo_closed, v)?;
        let fv = value_at(v, v != hi || part.hi_closed, u)?;
        let (a, b) = if fu <= fv { (fu, fv) } else { (fv, fu) };
        let piece = RealSet::interval(a, b, false, false)?;
        base = base.union(&piece);
        reals = reals.union(&piece);
    }
    for &z in &zeros {
        reals = reals.union(&RealSet::point(phi(z)?));
    }
    for (t, closed) in [(lo, part.lo_closed), (hi, part.hi_closed)] {
        if closed {
            let v = RealSet::point(phi(t)?);
            reals = reals.union(&v);
            if lam(t)?.abs() > ZERO_SLOPE {
                base = base.union(&v);
            }
        }
    }
    Ok((base, reals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::expr::{c, x};
    use crate::seq::Generator;

    fn e1(shadow: f64) -> GeneralizedReal {
        GeneralizedReal::make(shadow, [(Generator::Impulse(1), 1.0)]).unwrap()
    }

    fn real(v: f64) -> GeneralizedReal {
        GeneralizedReal::real(v).unwrap()
    }

    #[test]
    fn construction_checks_domain() {
        assert!(GenFn::on_reals(Expr::exp(x())).is_ok());
        assert!(matches!(GenFn::on_reals(Expr::log(x())), Err(Error::OutOfDomain(_))));
        assert!(GenFn::new(Expr::log(x()), 0.0, f64::INFINITY).is_ok());
        assert!(GenFn::new(x(), 1.0, 1.0).is_err());
    }

    #[test]
    fn natural_extension() {
        let exp = GenFn::on_reals(Expr::exp(x())).unwrap();
        assert_eq!(exp.nat_ext_eval(&e1(0.0)).unwrap(), e1(1.0));
        assert_eq!(exp.derivative_at(&real(0.0)).unwrap(), 1.0);
        let sq = GenFn::on_reals(Expr::pow_int(x(), 2)).unwrap();
        assert_eq!(sq.derivative_at(&e1(3.0)).unwrap(), 6.0);
        let e2 = GeneralizedReal::make(3.0, [(Generator::Impulse(2), 1.0)]).unwrap();
        assert_eq!(sq.derivative_at(&e2).unwrap(), sq.derivative_at(&real(3.0)).unwrap());
        let log = GenFn::new(Expr::log(x()), 0.0, f64::INFINITY).unwrap();
        assert_eq!(log.nat_ext_eval(&real(-1.0)), Err(Error::OutOfDomain(-1.0)));
    }

    #[test]
    fn higher_extensions() {
        let sq = GenFn::on_reals(Expr::pow_int(x(), 2)).unwrap();
        let y = e1(5.0);
        assert_eq!(sq.mth_ext_eval(2, &y).unwrap(), &e1(0.0) * 2.0 + real(10.0));
        assert_eq!(sq.mth_derivative(2, &y).unwrap(), 2.0);
        assert_eq!(sq.mth_derivative(3, &y).unwrap(), 0.0);
    }

    #[test]
    fn taylor_exp() {
        let exp = GenFn::on_reals(Expr::exp(x())).unwrap();
        let r = taylor(&exp, 0.0, 3, &real(0.5)).unwrap();
        assert!((r.partial_sum - 1.6458333333333333).abs() < 1e-12);
        let th = r.theta.unwrap();
        assert!((th - 0.2068).abs() < 1e-3, "{th}");
        let err = (0.5f64.exp() - r.partial_sum).abs();
        assert!(err <= r.remainder_bound);
        let sq = GenFn::on_reals(Expr::pow_int(x(), 2)).unwrap();
        let p = taylor(&sq, 1.0, 2, &real(3.0)).unwrap();
        assert_eq!(p.partial_sum, 9.0);
        assert_eq!(p.remainder_bound, 0.0);
        assert!(matches!(taylor(&sq, 1.0, 2, &real(1.0)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn mean_value() {
        let sq = GenFn::on_reals(Expr::pow_int(x(), 2)).unwrap();
        assert_eq!(mvt_gamma(&sq, &real(1.0), &real(2.0)).unwrap(), 1.5);
        let cube = GenFn::on_reals(Expr::pow_int(x(), 3)).unwrap();
        let g = mvt_gamma(&cube, &real(0.0), &real(3.0)).unwrap();
        assert!((g - 3f64.sqrt()).abs() < 1e-12);
        let a = e1(0.0);
        let b = GeneralizedReal::make(0.0, [(Generator::Impulse(2), 1.0)]).unwrap();
        assert!(matches!(mvt_gamma(&sq, &a, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn inverses() {
        let exp = GenFn::on_reals(Expr::exp(x())).unwrap();
        let log = inverse_ext(&exp).unwrap();
        assert_eq!(log.domain(), (0.0, f64::INFINITY));
        assert_eq!(log.nat_ext_eval(&e1(1.0)).unwrap(), e1(0.0));
        let e = 1f64.exp();
        assert!((log.derivative_at(&real(e)).unwrap() - 1.0 / e).abs() < 1e-15);
        let sq = GenFn::new(Expr::pow_int(x(), 2), -1.0, 1.0).unwrap();
        assert_eq!(inverse_ext(&sq), Err(Error::NotInjective));
        let flat = GenFn::on_reals(c(2.0)).unwrap();
        assert_eq!(inverse_ext(&flat), Err(Error::VanishingDerivative));
        let cubic = GenFn::on_reals(Expr::add(Expr::pow_int(x(), 3), x())).unwrap();
        let inv = inverse_ext(&cubic).unwrap();
        assert_eq!(inv.domain(), (f64::NEG_INFINITY, f64::INFINITY));
        assert!((inv.value(10.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((inv.derivative_at(&real(10.0)).unwrap() - 1.0 / 13.0).abs() < 1e-12);
    }

    #[test]
    fn images() {
        let exp = GenFn::on_reals(Expr::exp(x())).unwrap();
        let im = image(&exp, &RealSet::whole()).unwrap();
        assert_eq!(im, crate::sets::monad(&RealSet::open(0.0, f64::INFINITY)));
        let sin = GenFn::on_reals(Expr::sin(x())).unwrap();
        let h = PI / 2.0;
        let j = RealSet::closed(-h, h).union(&RealSet::closed(h, 3.0 * h));
        let im = image(&sin, &j).unwrap();
        assert_eq!(im.base(), &RealSet::open(-1.0, 1.0));
        assert_eq!(im.extra_reals(), RealSet::points(&[-1.0, 1.0]));
        let flat = GenFn::on_reals(c(2.0)).unwrap();
        let im = image(&flat, &RealSet::closed(0.0, 1.0)).unwrap();
        assert!(im.base().is_empty());
        assert_eq!(im.reals(), &RealSet::point(2.0));
    }
}
