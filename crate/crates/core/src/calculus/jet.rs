//! Truncated Taylor series arithmetic: all derivatives up to a fixed order
//! at one point, without building symbolic derivatives.

use super::expr::{invert_value, Expr};
use crate::error::{Error, Result};
use crate::real::real_root;

/// Normalized coefficients `f^(i)(t) / i!`, `i = 0..=order`.
type Series = Vec<f64>;

fn domain(t: f64) -> Error {
    Error::OutOfDomain(t)
}

fn constant(v: f64, n: usize) -> Series {
    let mut s = vec![0.0; n];
    s[0] = v;
    s
}

fn mul(a: &[f64], b: &[f64]) -> Series {
    (0..a.len())
        .map(|k| (0..=k).map(|j| a[j] * b[k - j]).sum())
        .collect()
}

fn div(a: &[f64], b: &[f64]) -> Series {
    let mut c = vec![0.0; a.len()];
    for k in 0..a.len() {
        let acc: f64 = (1..=k).map(|j| b[j] * c[k - j]).sum();
        c[k] = (a[k] - acc) / b[0];
    }
    c
}

fn exp(a: &[f64]) -> Series {
    let mut b = vec![0.0; a.len()];
    b[0] = a[0].exp();
    for k in 1..a.len() {
        let acc: f64 = (1..=k).map(|j| j as f64 * a[j] * b[k - j]).sum();
        b[k] = acc / k as f64;
    }
    b
}

fn log(a: &[f64]) -> Series {
    let mut b = vec![0.0; a.len()];
    b[0] = a[0].ln();
    for k in 1..a.len() {
        let acc: f64 = (1..k).map(|j| j as f64 * b[j] * a[k - j]).sum();
        b[k] = (a[k] - acc / k as f64) / a[0];
    }
    b
}

fn sin_cos(a: &[f64]) -> (Series, Series) {
    let n = a.len();
    let (mut s, mut c) = (vec![0.0; n], vec![0.0; n]);
    s[0] = a[0].sin();
    c[0] = a[0].cos();
    for k in 1..n {
        let (mut ss, mut cc) = (0.0, 0.0);
        for j in 1..=k {
            ss += j as f64 * a[j] * c[k - j];
            cc += j as f64 * a[j] * s[k - j];
        }
        s[k] = ss / k as f64;
        c[k] = -cc / k as f64;
    }
    (s, c)
}

// a^alpha for a[0] > 0, with b[0] given.
fn pow(a: &[f64], alpha: f64, b0: f64) -> Series {
    let mut b = vec![0.0; a.len()];
    b[0] = b0;
    for k in 1..a.len() {
        let acc: f64 = (1..=k)
            .map(|j| (alpha * j as f64 - (k - j) as f64) * a[j] * b[k - j])
            .sum();
        b[k] = acc / (k as f64 * a[0]);
    }
    b
}

fn pow_int(a: &[f64], m: i32) -> Series {
    let mut out = constant(1.0, a.len());
    let mut base = a.to_vec();
    let mut e = m.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            out = mul(&out, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    if m < 0 {
        div(&constant(1.0, a.len()), &out)
    } else {
        out
    }
}

fn series(e: &Expr, var: &[f64], t: f64) -> Result<Series> {
    use Expr as E;
    let n = var.len();
    let s = match e {
        E::Const(v) => constant(*v, n),
        E::Var => var.to_vec(),
        E::Neg(a) => series(a, var, t)?.iter().map(|v| -v).collect(),
        E::Add(a, b) => {
            let (a, b) = (series(a, var, t)?, series(b, var, t)?);
            a.iter().zip(&b).map(|(x, y)| x + y).collect()
        }
        E::Sub(a, b) => {
            let (a, b) = (series(a, var, t)?, series(b, var, t)?);
            a.iter().zip(&b).map(|(x, y)| x - y).collect()
        }
        E::Mul(a, b) => mul(&series(a, var, t)?, &series(b, var, t)?),
        E::Div(a, b) => {
            let d = series(b, var, t)?;
            if d[0] == 0.0 {
                return Err(domain(t));
            }
            div(&series(a, var, t)?, &d)
        }
        E::PowInt(a, m) => {
            let a = series(a, var, t)?;
            if a[0] == 0.0 && *m < 0 {
                return Err(domain(t));
            }
            pow_int(&a, *m)
        }
        E::PowReal(a, al) => {
            let a = series(a, var, t)?;
            if a[0] <= 0.0 {
                return Err(domain(t));
            }
            pow(&a, *al, a[0].powf(*al))
        }
        E::Root(a, m) => {
            let a = series(a, var, t)?;
            if a[0] <= 0.0 || *m < 2 {
                return Err(domain(t));
            }
            pow(&a, 1.0 / f64::from(*m), real_root(a[0], *m))
        }
        E::Exp(a) => exp(&series(a, var, t)?),
        E::Log(a) => {
            let a = series(a, var, t)?;
            if a[0] <= 0.0 {
                return Err(domain(t));
            }
            log(&a)
        }
        E::Sin(a) => sin_cos(&series(a, var, t)?).0,
        E::Cos(a) => sin_cos(&series(a, var, t)?).1,
        E::Compose(g, f) => {
            let inner = series(f, var, t)?;
            series(g, &inner, t)?
        }
        E::Inverse(inv) => {
            // Solve func(y) = var order by order.
            let y0 = invert_value(inv, var[0])?;
            let mut y = constant(y0, n);
            let mut unit = constant(y0, n);
            if n > 1 {
                unit[1] = 1.0;
            }
            let slope = series(&inv.func, &unit, t)?.get(1).copied().unwrap_or(1.0);
            if slope == 0.0 || !slope.is_finite() {
                return Err(domain(t));
            }
            for _ in 1..n {
                let fy = series(&inv.func, &y, t)?;
                for k in 1..n {
                    y[k] += (var[k] - fy[k]) / slope;
                }
            }
            y
        }
    };
    if s.iter().any(|v| v.is_nan()) {
        return Err(domain(t));
    }
    Ok(s)
}

/// `[f(t), f'(t), ..., f^(order)(t)]`.
pub fn eval_jet(e: &Expr, t: f64, order: usize) -> Result<Vec<f64>> {
    let mut var = constant(t, order + 1);
    if order > 0 {
        var[1] = 1.0;
    }
    let s = series(e, &var, t)?;
    let mut fact = 1.0;
    Ok(s.iter()
        .enumerate()
        .map(|(i, c)| {
            if i > 1 {
                fact *= i as f64;
            }
            c * fact
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::expr::{c, eval_real, lambda_n, x};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn matches_symbolic_derivatives() {
        let exprs = [
            Expr::exp(Expr::sin(x())),
            Expr::log(Expr::add(c(2.0), Expr::cos(x()))),
            Expr::pow_real(Expr::add(c(2.0), Expr::sin(x())), -1.3),
            Expr::root(Expr::add(c(3.0), x()), 3),
            Expr::div(x(), Expr::add(c(2.0), Expr::cos(x()))),
            Expr::pow_int(Expr::sin(x()), -2),
            Expr::compose(Expr::exp(x()), Expr::mul(x(), x())),
        ];
        for e in &exprs {
            let j = eval_jet(e, 0.7, 5).unwrap();
            for (k, v) in j.iter().enumerate() {
                let want = eval_real(&lambda_n(e, k as u32), 0.7).unwrap();
                assert!(close(*v, want), "{e} order {k}: {v} vs {want}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(eval_jet(&Expr::log(x()), -1.0, 3).is_err());
        assert!(eval_jet(&Expr::div(c(1.0), x()), 0.0, 2).is_err());
    }
}
