//! Expression trees for real functions of one variable, their symbolic
//! derivative, real evaluation, and structural evaluation over the
//! generalized reals.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::real::{real_root, GeneralizedReal};

/// A real function of the variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    PowInt(Box<Expr>, i32),
    /// `a^alpha` for positive `a`.
    PowReal(Box<Expr>, f64),
    /// Positive `m`-th root of a positive argument.
    Root(Box<Expr>, u32),
    Exp(Box<Expr>),
    Log(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    /// `outer(inner(x))`; `outer` is itself a function of `x`.
    Compose(Box<Expr>, Box<Expr>),
    /// Inverse of a strictly monotone function.
    Inverse(Box<InverseFn>),
}

/// `func` restricted to the open interval `]lo, hi[`, where it is strictly
/// monotone. Evaluated by bisection.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseFn {
    pub func: Expr,
    pub lo: f64,
    pub hi: f64,
    pub increasing: bool,
}

// Failure inside evaluation, mapped to a public error at the top.
enum Fail {
    Domain,
    NotInvertible,
}

type Eval<T> = std::result::Result<T, Fail>;

fn finite(v: f64) -> Eval<f64> {
    if v.is_nan() {
        Err(Fail::Domain)
    } else {
        Ok(v)
    }
}

pub fn x() -> Expr {
    Expr::Var
}

pub fn c(v: f64) -> Expr {
    Expr::Const(v)
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn is_const(&self, v: f64) -> bool {
        matches!(self, Expr::Const(c) if *c == v)
    }

    fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    // Smart constructors folding constants and trivial identities.

    pub fn neg(a: Expr) -> Expr {
        match a {
            Expr::Const(v) => Expr::Const(-v),
            Expr::Neg(inner) => *inner,
            a => Expr::Neg(Box::new(a)),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x + y),
            (Some(0.0), _) => b,
            (_, Some(0.0)) => a,
            _ => match b {
                Expr::Neg(nb) => Expr::Sub(Box::new(a), nb),
                b => Expr::Add(Box::new(a), Box::new(b)),
            },
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x - y),
            (Some(0.0), _) => Expr::neg(b),
            (_, Some(0.0)) => a,
            _ => match b {
                Expr::Neg(nb) => Expr::Add(Box::new(a), nb),
                b => Expr::Sub(Box::new(a), Box::new(b)),
            },
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => Expr::Const(x * y),
            (Some(0.0), _) | (_, Some(0.0)) => Expr::Const(0.0),
            (Some(1.0), _) => b,
            (_, Some(1.0)) => a,
            (Some(-1.0), _) => Expr::neg(b),
            (_, Some(-1.0)) => Expr::neg(a),
            _ => match (a, b) {
                (Expr::Neg(na), Expr::Neg(nb)) => Expr::Mul(na, nb),
                (Expr::Neg(na), b) => Expr::neg(Expr::Mul(na, Box::new(b))),
                (a, Expr::Neg(nb)) => Expr::neg(Expr::Mul(Box::new(a), nb)),
                // keep constants in front
                (a, b) if b.as_const().is_some() => Expr::Mul(Box::new(b), Box::new(a)),
                (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
            },
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) if y != 0.0 => Expr::Const(x / y),
            (Some(0.0), _) => Expr::Const(0.0),
            (_, Some(1.0)) => a,
            _ => Expr::Div(Box::new(a), Box::new(b)),
        }
    }

    pub fn pow_int(a: Expr, m: i32) -> Expr {
        match (a, m) {
            (_, 0) => Expr::Const(1.0),
            (a, 1) => a,
            (Expr::Const(v), m) => Expr::Const(v.powi(m)),
            (a, m) => Expr::PowInt(Box::new(a), m),
        }
    }

    pub fn pow_real(a: Expr, alpha: f64) -> Expr {
        if alpha == 0.0 {
            Expr::Const(1.0)
        } else {
            Expr::PowReal(Box::new(a), alpha)
        }
    }

    pub fn root(a: Expr, m: u32) -> Expr {
        Expr::Root(Box::new(a), m)
    }

    pub fn exp(a: Expr) -> Expr {
        Expr::Exp(Box::new(a))
    }

    pub fn log(a: Expr) -> Expr {
        Expr::Log(Box::new(a))
    }

    pub fn sin(a: Expr) -> Expr {
        Expr::Sin(Box::new(a))
    }

    pub fn cos(a: Expr) -> Expr {
        Expr::Cos(Box::new(a))
    }

    /// `outer(inner)`.
    pub fn compose(outer: Expr, inner: Expr) -> Expr {
        match (outer, inner) {
            (Expr::Var, inner) => inner,
            (outer, Expr::Var) => outer,
            (Expr::Const(v), _) => Expr::Const(v),
            (outer, inner) => Expr::Compose(Box::new(outer), Box::new(inner)),
        }
    }

    pub fn inverse(inv: InverseFn) -> Expr {
        Expr::Inverse(Box::new(inv))
    }

    /// Replaces the variable by `inner` throughout.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        let s = |e: &Expr| e.substitute(inner);
        match self {
            Expr::Const(v) => Expr::Const(*v),
            Expr::Var => inner.clone(),
            Expr::Neg(a) => Expr::neg(s(a)),
            Expr::Add(a, b) => Expr::add(s(a), s(b)),
            Expr::Sub(a, b) => Expr::sub(s(a), s(b)),
            Expr::Mul(a, b) => Expr::mul(s(a), s(b)),
            Expr::Div(a, b) => Expr::div(s(a), s(b)),
            Expr::PowInt(a, m) => Expr::pow_int(s(a), *m),
            Expr::PowReal(a, al) => Expr::pow_real(s(a), *al),
            Expr::Root(a, m) => Expr::root(s(a), *m),
            Expr::Exp(a) => Expr::exp(s(a)),
            Expr::Log(a) => Expr::log(s(a)),
            Expr::Sin(a) => Expr::sin(s(a)),
            Expr::Cos(a) => Expr::cos(s(a)),
            Expr::Compose(g, f) => Expr::compose((**g).clone(), s(f)),
            Expr::Inverse(_) => Expr::compose(self.clone(), inner.clone()),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var => 1,
            Expr::Neg(a)
            | Expr::PowInt(a, _)
            | Expr::PowReal(a, _)
            | Expr::Root(a, _)
            | Expr::Exp(a)
            | Expr::Log(a)
            | Expr::Sin(a)
            | Expr::Cos(a) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Compose(a, b) => {
                1 + a.size() + b.size()
            }
            Expr::Inverse(inv) => 1 + inv.func.size(),
        }
    }
}

/// The symbolic derivative.
pub fn lambda(e: &Expr) -> Expr {
    use Expr as E;
    match e {
        E::Const(_) => c(0.0),
        E::Var => c(1.0),
        E::Neg(a) => E::neg(lambda(a)),
        E::Add(a, b) => E::add(lambda(a), lambda(b)),
        E::Sub(a, b) => E::sub(lambda(a), lambda(b)),
        E::Mul(a, b) => E::add(
            E::mul(lambda(a), (**b).clone()),
            E::mul((**a).clone(), lambda(b)),
        ),
        E::Div(a, b) => {
            let num = E::sub(
                E::mul(lambda(a), (**b).clone()),
                E::mul((**a).clone(), lambda(b)),
            );
            E::div(num, E::pow_int((**b).clone(), 2))
        }
        E::PowInt(a, m) => E::mul(
            E::mul(c(f64::from(*m)), E::pow_int((**a).clone(), m - 1)),
            lambda(a),
        ),
        E::PowReal(a, al) => E::mul(
            E::mul(c(*al), E::pow_real((**a).clone(), al - 1.0)),
            lambda(a),
        ),
        E::Root(a, m) => {
            let r = E::root((**a).clone(), *m);
            let den = E::mul(c(f64::from(*m)), E::pow_int(r, *m as i32 - 1));
            E::div(lambda(a), den)
        }
        E::Exp(a) => E::mul(e.clone(), lambda(a)),
        E::Log(a) => E::div(lambda(a), (**a).clone()),
        E::Sin(a) => E::mul(E::cos((**a).clone()), lambda(a)),
        E::Cos(a) => E::mul(E::neg(E::sin((**a).clone())), lambda(a)),
        E::Compose(g, f) => E::mul(E::compose(lambda(g), (**f).clone()), lambda(f)),
        E::Inverse(inv) => E::div(c(1.0), E::compose(lambda(&inv.func), e.clone())),
    }
}

/// `k`-th symbolic derivative.
pub fn lambda_n(e: &Expr, k: u32) -> Expr {
    (0..k).fold(e.clone(), |acc, _| lambda(&acc))
}

fn real(e: &Expr, t: f64) -> Eval<f64> {
    use Expr as E;
    let v = match e {
        E::Const(v) => *v,
        E::Var => t,
        E::Neg(a) => -real(a, t)?,
        E::Add(a, b) => real(a, t)? + real(b, t)?,
        E::Sub(a, b) => real(a, t)? - real(b, t)?,
        E::Mul(a, b) => real(a, t)? * real(b, t)?,
        E::Div(a, b) => {
            let d = real(b, t)?;
            if d == 0.0 {
                return Err(Fail::Domain);
            }
            real(a, t)? / d
        }
        E::PowInt(a, m) => {
            let v = real(a, t)?;
            if v == 0.0 && *m < 0 {
                return Err(Fail::Domain);
            }
            v.powi(*m)
        }
        E::PowReal(a, al) => {
            let v = real(a, t)?;
            if v <= 0.0 {
                return Err(Fail::Domain);
            }
            v.powf(*al)
        }
        E::Root(a, m) => {
            let v = real(a, t)?;
            if v <= 0.0 || *m < 2 {
                return Err(Fail::Domain);
            }
            real_root(v, *m)
        }
        E::Exp(a) => real(a, t)?.exp(),
        E::Log(a) => {
            let v = real(a, t)?;
            if v <= 0.0 {
                return Err(Fail::Domain);
            }
            v.ln()
        }
        E::Sin(a) => real(a, t)?.sin(),
        E::Cos(a) => real(a, t)?.cos(),
        E::Compose(g, f) => real(g, real(f, t)?)?,
        E::Inverse(inv) => invert(inv, t)?,
    };
    finite(v)
}

/// Evaluates at a real point. Overflow yields an infinite value; invalid
/// operations (log or root of a non-positive value, division by zero,
/// undefined arithmetic) yield `OutOfDomain`.
pub fn eval_real(e: &Expr, t: f64) -> Result<f64> {
    real(e, t).map_err(|_| Error::OutOfDomain(t))
}

/// IEEE evaluation without domain checks, used to read off limits at the
/// ends of an interval.
pub fn eval_ieee(e: &Expr, t: f64) -> f64 {
    use Expr as E;
    match e {
        E::Const(v) => *v,
        E::Var => t,
        E::Neg(a) => -eval_ieee(a, t),
        E::Add(a, b) => eval_ieee(a, t) + eval_ieee(b, t),
        E::Sub(a, b) => eval_ieee(a, t) - eval_ieee(b, t),
        E::Mul(a, b) => eval_ieee(a, t) * eval_ieee(b, t),
        E::Div(a, b) => eval_ieee(a, t) / eval_ieee(b, t),
        E::PowInt(a, m) => eval_ieee(a, t).powi(*m),
        E::PowReal(a, al) => eval_ieee(a, t).powf(*al),
        E::Root(a, m) => {
            let v = eval_ieee(a, t);
            if v < 0.0 {
                f64::NAN
            } else {
                real_root(v, *m)
            }
        }
        E::Exp(a) => eval_ieee(a, t).exp(),
        E::Log(a) => eval_ieee(a, t).ln(),
        E::Sin(a) => eval_ieee(a, t).sin(),
        E::Cos(a) => eval_ieee(a, t).cos(),
        E::Compose(g, f) => eval_ieee(g, eval_ieee(f, t)),
        E::Inverse(inv) => invert(inv, t).unwrap_or(f64::NAN),
    }
}

// Solves func(s) = y on ]lo, hi[ by bisection.
pub(super) fn invert_value(inv: &InverseFn, y: f64) -> Result<f64> {
    invert(inv, y).map_err(|_| Error::OutOfDomain(y))
}

fn invert(inv: &InverseFn, y: f64) -> Eval<f64> {
    let (mut a, mut b) = (inv.lo, inv.hi);
    for _ in 0..4096 {
        let m = if a.is_infinite() && b.is_infinite() {
            0.0
        } else if a.is_infinite() {
            b - b.abs().max(1.0)
        } else if b.is_infinite() {
            a + a.abs().max(1.0)
        } else {
            a / 2.0 + b / 2.0
        };
        if m <= a || m >= b {
            break;
        }
        let v = real(&inv.func, m)?;
        if v == y {
            return Ok(m);
        }
        if (v < y) == inv.increasing {
            a = m;
        } else {
            b = m;
        }
    }
    let s = if a.is_finite() && b.is_finite() {
        a / 2.0 + b / 2.0
    } else {
        return Err(Fail::Domain);
    };
    let back = real(&inv.func, s)?;
    if (back - y).abs() <= 1e-9 * y.abs().max(1.0) {
        Ok(s)
    } else {
        Err(Fail::Domain)
    }
}

fn hat(e: &Expr, x: &GeneralizedReal) -> Eval<GeneralizedReal> {
    use Expr as E;
    let s = x.sigma();
    let out = match e {
        E::Const(v) => GeneralizedReal::real(*v).map_err(|_| Fail::Domain)?,
        E::Var => x.clone(),
        E::Neg(a) => -hat(a, x)?,
        E::Add(a, b) => hat(a, x)? + hat(b, x)?,
        E::Sub(a, b) => hat(a, x)? - hat(b, x)?,
        E::Mul(a, b) => hat(a, x)? * hat(b, x)?,
        E::Div(a, b) => {
            let d = hat(b, x)?;
            let inv = d.inv().map_err(|_| {
                if d.is_real() {
                    Fail::Domain
                } else {
                    Fail::NotInvertible
                }
            })?;
            hat(a, x)? * inv
        }
        E::PowInt(a, m) => {
            let v = hat(a, x)?;
            let p = v.pow_nat(m.unsigned_abs());
            if *m < 0 {
                p.inv().map_err(|_| Fail::Domain)?
            } else {
                p
            }
        }
        E::PowReal(a, al) => {
            let v = hat(a, x)?;
            let sv = v.sigma();
            if sv <= 0.0 {
                return Err(Fail::Domain);
            }
            v.lift(sv.powf(*al), al * sv.powf(al - 1.0))
        }
        E::Root(a, m) => hat(a, x)?.root(*m).map_err(|_| Fail::Domain)?,
        E::Exp(a) => {
            let v = hat(a, x)?;
            let ev = v.sigma().exp();
            v.lift(ev, ev)
        }
        E::Log(a) => {
            let v = hat(a, x)?;
            let sv = v.sigma();
            if sv <= 0.0 {
                return Err(Fail::Domain);
            }
            v.lift(sv.ln(), 1.0 / sv)
        }
        E::Sin(a) => {
            let v = hat(a, x)?;
            v.lift(v.sigma().sin(), v.sigma().cos())
        }
        E::Cos(a) => {
            let v = hat(a, x)?;
            v.lift(v.sigma().cos(), -v.sigma().sin())
        }
        E::Compose(g, f) => hat(g, &hat(f, x)?)?,
        E::Inverse(inv) => {
            let y = invert(inv, s)?;
            let slope = real(&lambda(&inv.func), y)?;
            if slope == 0.0 {
                return Err(Fail::Domain);
            }
            x.lift(y, 1.0 / slope)
        }
    };
    if !out.sigma().is_finite() || out.dpart_coeffs().values().any(|c| !c.is_finite()) {
        return Err(Fail::Domain);
    }
    Ok(out)
}

/// Structural evaluation over the generalized reals: ring operations of
/// the core module and the natural extensions of the primitives.
pub fn gen_eval(e: &Expr, x: &GeneralizedReal) -> Result<GeneralizedReal> {
    hat(e, x).map_err(|f| match f {
        Fail::Domain => Error::OutOfDomain(x.sigma()),
        Fail::NotInvertible => Error::NotInvertible,
    })
}

fn fmt_num(v: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if v == PI {
        write!(f, "pi")
    } else if v < 0.0 {
        write!(f, "({v})")
    } else {
        write!(f, "{v}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Expr as E;
        match self {
            E::Const(v) => fmt_num(*v, f),
            E::Var => write!(f, "x"),
            E::Neg(a) => write!(f, "-({a})"),
            E::Add(a, b) => write!(f, "({a} + {b})"),
            E::Sub(a, b) => write!(f, "({a} - {b})"),
            E::Mul(a, b) => write!(f, "({a} * {b})"),
            E::Div(a, b) => write!(f, "({a} / {b})"),
            E::PowInt(a, m) if *m < 0 => write!(f, "({a})^({m})"),
            E::PowInt(a, m) => write!(f, "({a})^{m}"),
            E::PowReal(a, al) => {
                write!(f, "pow(")?;
                fmt_num(*al, f)?;
                write!(f, ", {a})")
            }
            E::Root(a, 2) => write!(f, "sqrt({a})"),
            E::Root(a, m) => write!(f, "root({m}, {a})"),
            E::Exp(a) => write!(f, "exp({a})"),
            E::Log(a) => write!(f, "log({a})"),
            E::Sin(a) => write!(f, "sin({a})"),
            E::Cos(a) => write!(f, "cos({a})"),
            E::Compose(g, inner) => match **g {
                E::Inverse(_) => write!(f, "{g}({inner})"),
                _ => write!(f, "{}", g.substitute(inner)),
            },
            E::Inverse(inv) => write!(f, "inverse[{}]", inv.func),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::Generator;

    fn e1(shadow: f64) -> GeneralizedReal {
        GeneralizedReal::make(shadow, [(Generator::Impulse(1), 1.0)]).unwrap()
    }

    #[test]
    fn derivatives_of_primitives() {
        assert_eq!(lambda(&Expr::pow_int(x(), 2)), Expr::mul(c(2.0), x()));
        assert_eq!(lambda(&Expr::exp(x())), Expr::exp(x()));
        assert_eq!(lambda(&c(3.0)), c(0.0));
        assert_eq!(lambda(&Expr::sin(x())), Expr::cos(x()));
        assert_eq!(lambda(&Expr::cos(x())), Expr::neg(Expr::sin(x())));
        assert_eq!(lambda(&Expr::log(x())), Expr::div(c(1.0), x()));
        let d = lambda(&Expr::pow_real(x(), 0.5));
        assert_eq!(eval_real(&d, 4.0).unwrap(), 0.25);
    }

    #[test]
    fn real_evaluation_domains() {
        assert!(matches!(eval_real(&Expr::log(x()), 0.0), Err(Error::OutOfDomain(_))));
        assert!(matches!(eval_real(&Expr::div(c(1.0), x()), 0.0), Err(Error::OutOfDomain(_))));
        assert!(matches!(eval_real(&Expr::root(x(), 2), -1.0), Err(Error::OutOfDomain(_))));
        assert_eq!(eval_real(&Expr::exp(x()), 1000.0).unwrap(), f64::INFINITY);
        assert_eq!(eval_ieee(&Expr::log(x()), 0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn structural_evaluation() {
        let p = Expr::add(Expr::pow_int(x(), 2), Expr::mul(c(3.0), x()));
        assert_eq!(gen_eval(&p, &e1(2.0)).unwrap(), e1(0.0) * 7.0 + GeneralizedReal::real(10.0).unwrap());
        assert_eq!(gen_eval(&Expr::exp(x()), &e1(0.0)).unwrap(), e1(1.0));
        assert_eq!(gen_eval(&Expr::log(x()), &e1(1.0)).unwrap(), e1(0.0));
        assert_eq!(gen_eval(&Expr::sin(x()), &e1(0.0)).unwrap(), e1(0.0));
        assert_eq!(gen_eval(&Expr::cos(x()), &e1(0.0)).unwrap(), GeneralizedReal::one());
        let r = gen_eval(&Expr::exp(x()), &GeneralizedReal::one()).unwrap();
        assert!(r.is_real());
        assert_eq!(r.sigma(), 1f64.exp());
        let recip = Expr::div(c(1.0), x());
        assert_eq!(gen_eval(&recip, &e1(0.0)), Err(Error::NotInvertible));
        assert_eq!(gen_eval(&recip, &GeneralizedReal::zero()), Err(Error::OutOfDomain(0.0)));
    }

    #[test]
    fn inverse_node() {
        let cube = Expr::add(Expr::pow_int(x(), 3), x());
        let inv = Expr::inverse(InverseFn {
            func: cube.clone(),
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
            increasing: true,
        });
        let y = eval_real(&inv, 10.0).unwrap();
        assert!((y - 2.0).abs() < 1e-12);
        let d = eval_real(&lambda(&inv), 10.0).unwrap();
        assert!((d - 1.0 / 13.0).abs() < 1e-12);
        let v = gen_eval(&inv, &e1(10.0)).unwrap();
        assert!((v.coeff(&Generator::Impulse(1)) - 1.0 / 13.0).abs() < 1e-12);
    }

    #[test]
    fn simplifier_folds_constants() {
        assert_eq!(Expr::mul(c(2.0), c(3.0)), c(6.0));
        assert_eq!(Expr::add(x(), c(0.0)), x());
        assert_eq!(Expr::mul(c(0.0), Expr::exp(x())), c(0.0));
        assert_eq!(Expr::neg(Expr::neg(x())), x());
        assert_eq!(Expr::pow_int(x(), 1), x());
        assert_eq!(lambda_n(&Expr::pow_int(x(), 2), 3), c(0.0));
    }

    #[test]
    fn display() {
        let e = Expr::add(Expr::sin(x()), Expr::pow_int(x(), 2));
        assert_eq!(e.to_string(), "(sin(x) + (x)^2)");
        assert_eq!(Expr::compose(Expr::exp(x()), Expr::sin(x())).to_string(), "exp(sin(x))");
    }
}
