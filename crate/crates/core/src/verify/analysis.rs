//! Derivatives, Taylor, mean value, singular ODEs and higher extensions.

use std::f64::consts::{E, PI};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::algebra::gr_close;
use super::{close, gen, Check, Tally};
use crate::calculus::{
    c, eval_real, gen_eval, image, inverse_ext, lambda, mvt_gamma, ode_verify, pw_derivative_at, taylor, x, Expr,
    GenFn, MonadRule, PiecewiseGenFn, Probe, Status,
};
use crate::error::Error;
use crate::real::GeneralizedReal;
use crate::seq::Generator;
use crate::sets::{monad, GeneralizedSet, Interval, RealSet};

const CHAIN_TOL: f64 = 1e-9;
const EXACT: f64 = 1e-12;

fn real(v: f64) -> GeneralizedReal {
    GeneralizedReal::real(v).expect("finite")
}

fn e1(shadow: f64) -> GeneralizedReal {
    GeneralizedReal::make(shadow, [(Generator::Impulse(1), 1.0)]).expect("finite")
}

fn on_reals(e: Expr) -> GenFn {
    GenFn::on_reals(e).expect("generated expressions are total on R")
}

// Linear combination of the natural extensions, evaluated independently
// of gen_eval: phi(s) + lambda phi(s) dx.
fn hat(f: &GenFn, v: &GeneralizedReal) -> GeneralizedReal {
    f.nat_ext_eval(v).expect("inside the domain")
}

pub(super) fn derivative(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const N: usize = 200;
    let mut chain = Tally::new("(g o f)' = g'(f) f'");
    let mut homo = Tally::new("structural evaluation equals the natural extension");
    let mut rules = Tally::new("extension of f + g, c f, f g, f / g, g o f from the parts");
    let mut cd = Tally::new("derivative matches the central difference quotient (h = 1e-6)")
        .note("tolerance 1e-5 max(1, |f'|)");
    let mut contract = Tally::new("real inputs give phi exactly; shadows give phi(sigma x)");
    let mut constancy = Tally::new("derivative is constant on monads; f = f(s) + f'(s) dx");

    for _ in 0..N {
        let fe = gen::small_expr(rng);
        let ge = gen::small_expr(rng);
        let he = Expr::compose(ge.clone(), fe.clone());
        let (f, g, h) = (on_reals(fe.clone()), on_reals(ge.clone()), on_reals(he.clone()));
        let s = rng.random_range(-3.0..3.0);
        let v = gen::nonreal_at(rng, s);

        let fs = f.value(s).expect("total");
        let want = g.derivative_at(&real(fs)).expect("total") * f.derivative_at(&real(s)).expect("total");
        let got = h.derivative_at(&v).expect("total");
        chain.case(close(got, want, CHAIN_TOL), || format!("g = {ge}, f = {fe} at {s}: {got} vs {want}"));

        for (e, fun) in [(&fe, &f), (&he, &h)] {
            homo.result(gen_eval(e, &v), |got| {
                let want = hat(fun, &v);
                if gr_close(got, &want, CHAIN_TOL) {
                    Ok(())
                } else {
                    Err(format!("{e} at {v}: {got} vs {want}"))
                }
            });
        }

        let (fv, gv) = (hat(&f, &v), hat(&g, &v));
        let k = rng.random_range(-3.0..3.0);
        let den = Expr::add(c(2.0), Expr::cos(ge.clone()));
        let denf = on_reals(den.clone());
        let combos: [(Expr, GeneralizedReal); 5] = [
            (Expr::add(fe.clone(), ge.clone()), &fv + &gv),
            (Expr::mul(c(k), fe.clone()), fv.scale(k)),
            (Expr::mul(fe.clone(), ge.clone()), &fv * &gv),
            (Expr::div(fe.clone(), den), fv.checked_div(&hat(&denf, &v)).expect("shadow >= 1")),
            (he.clone(), hat(&g, &fv)),
        ];
        for (e, want) in combos {
            let got = hat(&on_reals(e.clone()), &v);
            rules.case(gr_close(&got, &want, CHAIN_TOL), || format!("{e} at {v}: {got} vs {want}"));
        }

        // Difference quotients on the (shallower) parts; deep composites
        // like sin(x^9) defeat a fixed step.
        for (e, fun) in [(&fe, &f), (&ge, &g)] {
            let t = rng.random_range(-2.0..2.0);
            let hstep = 1e-6;
            let q = (fun.value(t + hstep).expect("total") - fun.value(t - hstep).expect("total")) / (2.0 * hstep);
            let d = fun.derivative_at(&real(t)).expect("total");
            cd.case((q - d).abs() <= 1e-5 * d.abs().max(1.0), || format!("{e} at {t}: {d} vs {q}"));
        }

        let r = hat(&h, &real(s));
        let phi = h.value(s).expect("total");
        contract.case(r.is_real() && r.sigma() == phi && hat(&h, &v).sigma() == phi, || format!("{he} at {s}"));

        let d0 = h.derivative_at(&real(s)).expect("total");
        let w = gen::nonreal_at(rng, s);
        let lifted = w.lift(phi, d0);
        constancy.case(h.derivative_at(&w) == Ok(d0) && hat(&h, &w) == lifted, || format!("{he} at {w}"));
    }

    let mut checks = vec![
        chain.finish(),
        homo.finish(),
        rules.finish(),
        cd.finish(),
        contract.finish(),
        constancy.finish(),
    ];
    checks.push(uniqueness(rng));
    checks.push(monotonicity(rng));
    checks.extend(inverses(rng));
    checks.push(images(rng));
    checks
}

// Two slopes realizing the same extension at the impulse e:1 coincide.
fn uniqueness(rng: &mut ChaCha8Rng) -> Check {
    let mut t = Tally::new("the slope on a monad is determined by the value at e:1");
    for _ in 0..100 {
        let s = rng.random_range(-5.0..5.0);
        let v = rng.random_range(-5.0..5.0);
        let a = rng.random_range(-5.0..5.0);
        let b = if rng.random_bool(0.3) { a } else { rng.random_range(-5.0..5.0) };
        let p = e1(s);
        let same = p.lift(v, a) == p.lift(v, b);
        t.case(same == (a == b) && p.lift(v, a).coeff(&Generator::Impulse(1)) == a, || format!("{a} vs {b}"));
    }
    t.finish()
}

fn monotonicity(rng: &mut ChaCha8Rng) -> Check {
    let mut t = Tally::new("f' > 0 gives strictly increasing, f' = 0 gives constant");
    let increasing = [
        Expr::exp(x()),
        Expr::add(Expr::pow_int(x(), 3), x()),
        Expr::add(x(), Expr::mul(c(0.5), Expr::sin(x()))),
    ];
    let constant = on_reals(c(rng.random_range(-3.0..3.0)));
    for _ in 0..100 {
        let s1 = rng.random_range(-3.0..3.0);
        let s2 = s1 + rng.random_range(0.01..3.0);
        let (a, b) = (gen::nonreal_at(rng, s1), gen::nonreal_at(rng, s2));
        for e in &increasing {
            let f = on_reals(e.clone());
            let (fa, fb) = (hat(&f, &a), hat(&f, &b));
            t.case(fa.lt(&fb), || format!("{e}: f({a}) = {fa}, f({b}) = {fb}"));
        }
        t.case(hat(&constant, &a) == hat(&constant, &b), || format!("constant at {a}, {b}"));
    }
    t.finish()
}

fn inverses(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut log = Tally::new("inverse of exp is log: 1 + e:1 goes to e:1, derivative at e is 1/e");
    match inverse_ext(&on_reals(Expr::exp(x()))) {
        Ok(inv) => {
            log.result(inv.nat_ext_eval(&e1(1.0)), |v| {
                if gr_close(v, &e1(0.0), EXACT) {
                    Ok(())
                } else {
                    Err(format!("got {v}"))
                }
            });
            log.result(inv.derivative_at(&real(E)), |d| {
                if close(*d, 1.0 / E, EXACT) {
                    Ok(())
                } else {
                    Err(format!("derivative {d}"))
                }
            });
        }
        Err(e) => log.case(false, || e.to_string()),
    }

    let mut general = Tally::new("inverse of x^3 + x: round trip and reciprocal derivative");
    let cubic = on_reals(Expr::add(Expr::pow_int(x(), 3), x()));
    match inverse_ext(&cubic) {
        Ok(inv) => {
            for _ in 0..50 {
                let s = rng.random_range(-3.0..3.0);
                let y = gen::nonreal_at(rng, cubic.value(s).expect("total"));
                let back = inv.nat_ext_eval(&y).expect("inside image");
                let d = inv.derivative_at(&y).expect("inside image");
                let want = 1.0 / (3.0 * s * s + 1.0);
                let round = hat(&cubic, &back);
                general.case(
                    close(back.sigma(), s, CHAIN_TOL) && close(d, want, CHAIN_TOL) && gr_close(&round, &y, CHAIN_TOL),
                    || format!("at y = {y}: back {back}, derivative {d} vs {want}"),
                );
            }
        }
        Err(e) => general.case(false, || e.to_string()),
    }

    let mut refused = Tally::new("non-injective or flat functions have no inverse");
    let sq = GenFn::new(Expr::pow_int(x(), 2), -1.0, 1.0).expect("total");
    refused.case(inverse_ext(&sq) == Err(Error::NotInjective), || format!("{:?}", inverse_ext(&sq)));
    let flat = on_reals(c(1.0));
    refused.case(inverse_ext(&flat) == Err(Error::VanishingDerivative), || format!("{:?}", inverse_ext(&flat)));
    vec![log.finish(), general.finish(), refused.finish()]
}

fn set_close(a: &RealSet, b: &RealSet, tol: f64) -> bool {
    let (pa, pb) = (a.parts(), b.parts());
    pa.len() == pb.len()
        && pa.iter().zip(pb).all(|(i, j)| {
            let end = |u: f64, v: f64| u == v || close(u, v, tol);
            end(i.lo, j.lo) && end(i.hi, j.hi) && i.lo_closed == j.lo_closed && i.hi_closed == j.hi_closed
        })
}

fn images(rng: &mut ChaCha8Rng) -> Check {
    let mut t = Tally::new("images: exp(R) = R+, sin over a period, exp(m(A)) = m(exp A)");
    let exp = on_reals(Expr::exp(x()));
    let positive = monad(&RealSet::open(0.0, f64::INFINITY));
    t.result(image(&exp, &RealSet::whole()), |g| {
        if *g == positive {
            Ok(())
        } else {
            Err(format!("exp image {g}"))
        }
    });

    let sin = on_reals(Expr::sin(x()));
    for _ in 0..20 {
        let a = rng.random_range(-10.0..10.0);
        let j = RealSet::closed(a, a + 2.0 * PI + rng.random_range(0.0..3.0));
        t.result(image(&sin, &j), |g| {
            let base_ok = set_close(g.base(), &RealSet::open(-1.0, 1.0), EXACT);
            let extras_ok = set_close(&g.extra_reals(), &RealSet::points(&[-1.0, 1.0]), EXACT);
            if base_ok && extras_ok && g.holes().is_empty() {
                Ok(())
            } else {
                Err(format!("sin image of {j}: {g}"))
            }
        });
    }

    for _ in 0..50 {
        let raw = gen::raw_intervals(rng, true);
        let set = RealSet::from_intervals(raw.clone());
        let mapped = RealSet::from_intervals(raw.iter().map(|i| {
            Interval::new(i.lo.exp(), i.hi.exp(), i.lo_closed && i.lo.is_finite(), i.hi_closed)
                .expect("ordered")
                .expect("nonempty")
        }));
        let want: GeneralizedSet = monad(&mapped);
        t.result(image(&exp, &set), |g| {
            if *g == want {
                Ok(())
            } else {
                Err(format!("exp image of {set}: {g}, want {want}"))
            }
        });
    }
    t.finish()
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

pub(super) fn taylor_suite(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let exp = on_reals(Expr::exp(x()));
    let mut known = Tally::new("exp at 0, order 3, x = 0.5: partial sum 1.6458333, theta near 0.2068");
    // Independent: direct sum of 0.5^k / k!.
    let want: f64 = (0..=3).map(|k| 0.5f64.powi(k as i32) / factorial(k)).sum();
    known.result(taylor(&exp, 0.0, 3, &real(0.5)), |r| {
        let Some(th) = r.theta else {
            return Err("no theta".into());
        };
        let g = 0.5f64.exp() - r.partial_sum - 0.5f64.powi(4) / 24.0 * (th * 0.5).exp();
        // Closed form of the Lagrange point.
        let exact = 2.0 * ((0.5f64.exp() - want) * 24.0 / 0.0625).ln();
        if (r.partial_sum - 1.6458333).abs() <= 1e-7
            && close(r.partial_sum, want, EXACT)
            && th > 0.0
            && th < 1.0
            && g.abs() <= 1e-10
            && (th - exact).abs() <= 1e-9
        {
            Ok(())
        } else {
            Err(format!("{r:?}, g(theta) = {g}, closed form {exact}"))
        }
    });
    let sq = on_reals(Expr::pow_int(x(), 2));
    known.result(taylor(&sq, 1.0, 2, &real(3.0)), |r| {
        if r.partial_sum == 9.0 && r.remainder_bound == 0.0 {
            Ok(())
        } else {
            Err(format!("x^2: {r:?}"))
        }
    });

    let mut bound = Tally::new("Lagrange bound holds and theta satisfies the identity");
    let mut n = 0;
    while n < 100 {
        let e = gen::small_expr(rng);
        let f = on_reals(e.clone());
        let xi0 = rng.random_range(-2.0..2.0);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let s = xi0 + sign * rng.random_range(0.05..1.5);
        let m = rng.random_range(0..=3u32);
        n += 1;
        let v = gen::nonreal_at(rng, s);
        bound.result(taylor(&f, xi0, m, &v), |r| {
            let phi = f.value(s).expect("total");
            let err = (phi - r.partial_sum).abs();
            let slack = 1e-12 * phi.abs().max(1.0);
            if err > r.remainder_bound + slack {
                return Err(format!("{e}, xi0 {xi0}, m {m}, at {s}: error {err} > bound {}", r.remainder_bound));
            }
            if let Some(th) = r.theta {
                let top = lambda_order(&e, m + 1);
                let d = eval_real(&top, xi0 + th * (s - xi0)).expect("total");
                let g = phi - r.partial_sum - (s - xi0).powi(m as i32 + 1) / factorial(m + 1) * d;
                let rem = (s - xi0).powi(m as i32 + 1) / factorial(m + 1) * d;
                let size = phi.abs().max(r.partial_sum.abs()).max(rem.abs()).max(1.0);
                if !(th > 0.0 && th < 1.0) || g.abs() > 1e-10 * size {
                    return Err(format!("{e}, xi0 {xi0}, m {m}, at {s}: theta {th}, g {g}"));
                }
            }
            Ok(())
        });
    }
    vec![known.finish(), bound.finish()]
}

fn lambda_order(e: &Expr, k: u32) -> Expr {
    (0..k).fold(e.clone(), |acc, _| lambda(&acc))
}

// Eq (1): f(b) - f(a) = f'(g)(b - a) + (f'(b) - f'(g)) db + (f'(g) - f'(a)) da
fn mvt_rhs(f: &GenFn, a: &GeneralizedReal, b: &GeneralizedReal, gamma: f64) -> GeneralizedReal {
    let dg = f.derivative_at(&real(gamma)).expect("inside");
    let (da_s, db_s) = (f.derivative_at(a).expect("inside"), f.derivative_at(b).expect("inside"));
    (b - a).scale(dg) + b.dpart().scale(db_s - dg) + a.dpart().scale(dg - da_s)
}

pub(super) fn mvt(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut nonreal = Tally::new("mean value identity with nonreal endpoints")
        .note("coefficients 1e-12 relative, shadow 1e-9");
    let mut classical = Tally::new("real endpoints reduce to the classical identity");
    for _ in 0..100 {
        let e = gen::small_expr(rng);
        let f = on_reals(e.clone());
        let sa = rng.random_range(-3.0..3.0);
        let sb = sa + rng.random_range(0.1..3.0);
        for real_ends in [false, true] {
            let (a, b) = if real_ends {
                (real(sa), real(sb))
            } else {
                (gen::nonreal_at(rng, sa), gen::nonreal_at(rng, sb))
            };
            let tally = if real_ends { &mut classical } else { &mut nonreal };
            tally.result(mvt_gamma(&f, &a, &b), |&gamma| {
                if !(sa < gamma && gamma < sb) {
                    return Err(format!("{e}: gamma {gamma} outside ]{sa}, {sb}["));
                }
                let lhs = hat(&f, &b) - hat(&f, &a);
                let rhs = mvt_rhs(&f, &a, &b, gamma);
                let shadow_ok = close(lhs.sigma(), rhs.sigma(), CHAIN_TOL);
                let d_ok = gr_close(&lhs.dpart(), &rhs.dpart(), EXACT);
                if shadow_ok && d_ok && (!real_ends || (lhs.is_real() && rhs.is_real())) {
                    Ok(())
                } else {
                    Err(format!("{e} on [{a}, {b}], gamma {gamma}: {lhs} vs {rhs}"))
                }
            });
        }
    }
    let mut known = Tally::new("x^2 on [1, 2] gives 1.5, x^3 on [0, 3] gives sqrt 3, a ~ b refused");
    let sq = on_reals(Expr::pow_int(x(), 2));
    let cube = on_reals(Expr::pow_int(x(), 3));
    let g1 = mvt_gamma(&sq, &real(1.0), &real(2.0));
    known.case(g1 == Ok(1.5), || format!("{g1:?}"));
    let g2 = mvt_gamma(&cube, &real(0.0), &real(3.0));
    known.case(matches!(g2, Ok(v) if close(v, 3f64.sqrt(), EXACT)), || format!("{g2:?}"));
    let e2 = GeneralizedReal::make(0.0, [(Generator::Impulse(2), 1.0)]).expect("finite");
    let g3 = mvt_gamma(&sq, &e1(0.0), &e2);
    known.case(matches!(g3, Err(Error::Domain(_))), || format!("{g3:?}"));
    vec![nonreal.finish(), classical.finish(), known.finish()]
}

fn rule(value: f64, slope: f64) -> MonadRule {
    MonadRule { value, slope }
}

fn pw(gaps: [Expr; 2], r: MonadRule) -> PiecewiseGenFn {
    PiecewiseGenFn::new(vec![0.0], gaps.to_vec(), vec![r]).expect("well formed")
}

pub(super) fn ode() -> Vec<Check> {
    let rhs1 = pw([c(-1.0), c(1.0)], rule(1.0, 0.0));
    let sol1 = pw([Expr::neg(x()), x()], rule(0.0, 1.0));
    let rhs2 = pw([c(0.0), c(0.0)], rule(1.0, 0.0));
    let sol2 = pw([c(0.0), c(1.0)], rule(1.0, 1.0));
    let wrong = pw([x(), x()], rule(0.0, 1.0));

    let mut first = Tally::new("x' = -1, 1, 1 solved by -t, 0 + dt, t region by region");
    let mut second = Tally::new("x' = 0, 1, 0 solved by 0, 1 + dt, 1 region by region");
    for (tally, sol, rhs) in [(&mut first, &sol1, &rhs1), (&mut second, &sol2, &rhs2)] {
        tally.result(ode_verify(sol, rhs, 64), |rep| {
            let names: Vec<&str> = rep.iter().map(|r| r.region.as_str()).collect();
            if names == ["t < 0", "m(0)", "t > 0"] && rep.iter().all(|r| r.status == Status::Pass) {
                Ok(())
            } else {
                Err(format!("{rep:?}"))
            }
        });
    }
    let mut wrong_t = Tally::new("x = t fails the first equation on t < 0 only");
    wrong_t.result(ode_verify(&wrong, &rhs1, 64), |rep| {
        let st: Vec<Status> = rep.iter().map(|r| r.status).collect();
        if st == [Status::Fail, Status::Pass, Status::Pass] {
            Ok(())
        } else {
            Err(format!("{rep:?}"))
        }
    });
    let mut mismatch = Tally::new("different breakpoints are refused");
    let shifted = PiecewiseGenFn::new(vec![1.0], vec![c(0.0), c(0.0)], vec![rule(1.0, 0.0)]).expect("well formed");
    mismatch.case(ode_verify(&sol2, &shifted, 8) == Err(Error::RegionMismatch), String::new);

    let mut abs = Tally::new("abs extension: f'(0) = 0, classical limit absent");
    abs.result(pw_derivative_at(&pw([Expr::neg(x()), x()], rule(0.0, 0.0)), 0.0), |d| {
        if d.value == 0.0 && d.probe == Probe::Absent {
            Ok(())
        } else {
            Err(format!("{d:?}"))
        }
    });
    let mut proviso = Tally::new("declared slopes must match an existing classical limit");
    let sq = Expr::pow_int(x(), 2);
    let natural = PiecewiseGenFn::new(vec![3.0], vec![sq.clone(), sq.clone()], vec![rule(9.0, 6.0)]).expect("well formed");
    proviso.result(pw_derivative_at(&natural, 3.0), |d| match d.probe {
        Probe::Exists(l) if d.value == 6.0 && (l - 6.0).abs() <= 1e-4 => Ok(()),
        _ => Err(format!("{d:?}")),
    });
    let bad = pw([sq.clone(), sq], rule(0.0, 1.0));
    let r = pw_derivative_at(&bad, 0.0);
    proviso.case(matches!(r, Err(Error::ProvisoViolated { declared, .. }) if declared == 1.0), || format!("{r:?}"));

    vec![first.finish(), second.finish(), wrong_t.finish(), mismatch.finish(), abs.finish(), proviso.finish()]
}

fn sin_hat(v: &GeneralizedReal) -> GeneralizedReal {
    v.lift(v.sigma().sin(), v.sigma().cos())
}

fn cos_hat(v: &GeneralizedReal) -> GeneralizedReal {
    v.lift(v.sigma().cos(), -v.sigma().sin())
}

fn exp_hat(v: &GeneralizedReal) -> GeneralizedReal {
    let e = v.sigma().exp();
    v.lift(e, e)
}

fn sign(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub(super) fn higher(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let sq = on_reals(Expr::pow_int(x(), 2));
    let exp = on_reals(Expr::exp(x()));
    let sin = on_reals(Expr::sin(x()));
    let cos = on_reals(Expr::cos(x()));
    let mut t_sq = Tally::new("x^2: x^2, 2x, 2, then 0");
    let mut t_exp = Tally::new("exp: every extension is exp");
    let mut t_sin = Tally::new("sin: +-sin or +-cos by the parity of m");
    let mut t_cos = Tally::new("cos: +-cos or +-sin by the parity of m");
    let mut t_sigma = Tally::new("m-th derivative is the shadow of the (m+1)-th extension");

    for _ in 0..50 {
        let s0 = rng.random_range(-5.0..5.0);
        let v = gen::nonreal_at(rng, s0);
        for m in 1..=8u32 {
            let s = v.sigma();
            let want_sq = match m {
                1 => &v * &v,
                2 => v.scale(2.0),
                3 => real(2.0),
                _ => GeneralizedReal::zero(),
            };
            let want_sin = if m % 2 == 0 {
                cos_hat(&v).scale(sign((m - 2) / 2))
            } else {
                sin_hat(&v).scale(sign((m - 1) / 2))
            };
            let want_cos = if m % 2 == 0 {
                sin_hat(&v).scale(sign(m / 2))
            } else {
                cos_hat(&v).scale(sign((m - 1) / 2))
            };
            let cases = [
                (&mut t_sq, &sq, want_sq),
                (&mut t_exp, &exp, exp_hat(&v)),
                (&mut t_sin, &sin, want_sin),
                (&mut t_cos, &cos, want_cos),
            ];
            for (tally, f, want) in cases {
                tally.result(f.mth_ext_eval(m, &v), |got| {
                    if gr_close(got, &want, EXACT) {
                        Ok(())
                    } else {
                        Err(format!("m = {m} at {v}: {got} vs {want}"))
                    }
                });
                let d = f.mth_derivative(m, &v);
                let next = f.mth_ext_eval(m + 1, &v).map(|g| g.sigma());
                t_sigma.case(d.is_ok() && d == next, || format!("{} m = {m} at {s}", f.expr()));
            }
        }
    }
    vec![t_sq.finish(), t_exp.finish(), t_sin.finish(), t_cos.finish(), t_sigma.finish()]
}
