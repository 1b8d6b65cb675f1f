//! Random instances for the property suites.

use rand::Rng;

use crate::calculus::{c, x, Expr};
use crate::real::GeneralizedReal;
use crate::seq::{Catalog, Generator};
use crate::sets::{Interval, RealSet};

fn coeffs<R: Rng>(rng: &mut R) -> Vec<(Generator, f64)> {
    let cat = Catalog::default();
    let members = cat.members();
    let k = rng.random_range(0..=3);
    (0..k)
        .map(|_| {
            let g = members[rng.random_range(0..members.len())];
            (g, rng.random_range(-5.0..5.0))
        })
        .collect()
}

/// Shadow in `[-10, 10]` (sometimes an integer or zero), up to three
/// catalog generators with coefficients in `[-5, 5]`.
pub fn real<R: Rng>(rng: &mut R) -> GeneralizedReal {
    let shadow = match rng.random_range(0..10) {
        0 => 0.0,
        1 | 2 => f64::from(rng.random_range(-10..=10)),
        _ => rng.random_range(-10.0..10.0),
    };
    GeneralizedReal::make(shadow, coeffs(rng)).expect("finite")
}

pub fn infinitesimal<R: Rng>(rng: &mut R) -> GeneralizedReal {
    let mut d = coeffs(rng);
    if d.is_empty() {
        d.push((Generator::Impulse(1), rng.random_range(0.5..5.0)));
    }
    GeneralizedReal::make(0.0, d).expect("finite")
}

/// Shadow with absolute value in `[0.1, 10]`.
pub fn invertible<R: Rng>(rng: &mut R) -> GeneralizedReal {
    let mag = rng.random_range(0.1..10.0);
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    GeneralizedReal::make(sign * mag, coeffs(rng)).expect("finite")
}

/// Nonreal value with the given shadow.
pub fn nonreal_at<R: Rng>(rng: &mut R, shadow: f64) -> GeneralizedReal {
    infinitesimal(rng) + GeneralizedReal::real(shadow).expect("finite")
}

fn grid_point<R: Rng>(rng: &mut R) -> f64 {
    f64::from(rng.random_range(-10..=10)) / 2.0
}

/// A raw (possibly overlapping) list of intervals and points with
/// endpoints on the half-integer grid in `[-5, 5]`, rays allowed when
/// `rays` is set.
pub fn raw_intervals<R: Rng>(rng: &mut R, rays: bool) -> Vec<Interval> {
    let k = rng.random_range(0..=4);
    let mut out = Vec::new();
    for _ in 0..k {
        if rng.random_range(0..4) == 0 {
            out.push(Interval::point(grid_point(rng)));
            continue;
        }
        let (mut a, mut b) = (grid_point(rng), grid_point(rng));
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        if rays && rng.random_range(0..6) == 0 {
            a = f64::NEG_INFINITY;
        }
        if rays && rng.random_range(0..6) == 0 {
            b = f64::INFINITY;
        }
        if let Ok(Some(i)) = Interval::new(a, b, rng.random_bool(0.5), rng.random_bool(0.5)) {
            out.push(i);
        }
    }
    out
}

pub fn real_set<R: Rng>(rng: &mut R) -> RealSet {
    RealSet::from_intervals(raw_intervals(rng, true))
}

// Unary building blocks that keep values and derivatives moderate on
// the whole line.
fn wrap<R: Rng>(rng: &mut R, a: Expr) -> Expr {
    match rng.random_range(0..9) {
        0 => Expr::sin(a),
        1 => Expr::cos(a),
        2 => Expr::exp(Expr::sin(a)),
        3 => Expr::log(Expr::add(c(2.0), Expr::sin(a))),
        4 => Expr::root(Expr::add(c(2.0), Expr::cos(a)), 2),
        5 => Expr::div(a, Expr::add(c(2.0), Expr::cos(x()))),
        6 => Expr::pow_real(Expr::add(c(2.0), Expr::sin(a)), rng.random_range(-2.0..2.0)),
        7 => Expr::add(Expr::mul(c(rng.random_range(-1.5..1.5)), a), c(rng.random_range(-1.0..1.0))),
        _ => Expr::mul(Expr::sin(a.clone()), Expr::cos(a)),
    }
}

/// A random expression defined on all of `R`.
pub fn expr<R: Rng>(rng: &mut R, depth: u32) -> Expr {
    let mut e = match rng.random_range(0..4) {
        0 => x(),
        1 => Expr::pow_int(x(), rng.random_range(2..=3)),
        2 => Expr::add(x(), c(rng.random_range(-1.0..1.0))),
        _ => Expr::mul(c(rng.random_range(-1.5..1.5)), x()),
    };
    for _ in 0..depth {
        e = wrap(rng, e);
        if rng.random_range(0..4) == 0 {
            let other = wrap(rng, x());
            e = if rng.random_bool(0.5) {
                Expr::add(e, other)
            } else {
                Expr::mul(e, other)
            };
        }
    }
    e
}

/// Depth one or two.
pub fn small_expr<R: Rng>(rng: &mut R) -> Expr {
    let depth = rng.random_range(1..=2);
    expr(rng, depth)
}
