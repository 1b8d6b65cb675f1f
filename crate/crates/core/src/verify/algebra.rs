//! Ring, order, differential and elementary-function identities.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{close, gen, Check, Tally};
use crate::calculus::{gen_eval, x, Expr};
use crate::real::{archimedean_witness, density_nonreal_between, density_real_between, Cmp3, GeneralizedReal};
use crate::seq::{self, BinaryOp, Catalog, Generator, Witness};

/// Shadows and every coefficient agree to `tol` (relative, floor 1).
pub fn gr_close(a: &GeneralizedReal, b: &GeneralizedReal, tol: f64) -> bool {
    if !close(a.sigma(), b.sigma(), tol) {
        return false;
    }
    let gens: Vec<&Generator> = a.dpart_coeffs().keys().chain(b.dpart_coeffs().keys()).collect();
    gens.into_iter().all(|g| close(a.coeff(g), b.coeff(g), tol))
}

fn real(v: f64) -> GeneralizedReal {
    GeneralizedReal::real(v).expect("finite")
}

fn show(v: &GeneralizedReal) -> String {
    v.to_string()
}

const EXACT: f64 = 1e-12;

pub(super) fn identities(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut dxs = vec![GeneralizedReal::infinitesimal(Generator::Impulse(1), 1.0).expect("finite")];
    dxs.extend((0..50).map(|_| gen::infinitesimal(rng)));

    let mut checks = Vec::new();
    let one = real(1.0);
    let unary: [(&str, Expr, bool, fn(&GeneralizedReal) -> GeneralizedReal); 4] = [
        ("exp(dx) = 1 + dx", Expr::exp(x()), false, |d| real(1.0) + d),
        ("log(1 + dx) = dx", Expr::log(x()), true, |d| d.clone()),
        ("sin(dx) = dx", Expr::sin(x()), false, |d| d.clone()),
        ("cos(dx) = 1", Expr::cos(x()), false, |_| real(1.0)),
    ];
    for (name, e, shift, want) in unary {
        let mut t = Tally::new(name);
        for d in &dxs {
            let arg = if shift { &one + d } else { d.clone() };
            let expect = want(d);
            t.result(gen_eval(&e, &arg), |v| {
                if gr_close(v, &expect, EXACT) {
                    Ok(())
                } else {
                    Err(format!("at dx = {}: got {}, want {}", show(d), show(v), show(&expect)))
                }
            });
        }
        checks.push(t.finish());
    }
    for alpha in [-1.0, 0.5, 2.0, PI] {
        let mut t = Tally::new(format!("(1 + dx)^{alpha} = 1 + {alpha} dx"));
        let e = Expr::pow_real(x(), alpha);
        for d in &dxs {
            let expect = &one + &d.scale(alpha);
            t.result(gen_eval(&e, &(&one + d)), |v| {
                if gr_close(v, &expect, EXACT) {
                    Ok(())
                } else {
                    Err(format!("at dx = {}: got {}, want {}", show(d), show(v), show(&expect)))
                }
            });
        }
        checks.push(t.finish());
    }

    // Trigonometric and exponential identities on random arguments.
    let xs: Vec<GeneralizedReal> = (0..200).map(|_| gen::real(rng)).collect();
    let ev = |e: &Expr, v: &GeneralizedReal| gen_eval(e, v).expect("entire function");
    let (sin, cos, exp) = (Expr::sin(x()), Expr::cos(x()), Expr::exp(x()));

    let mut t = Tally::new("sin^2 + cos^2 = 1");
    for v in &xs {
        let s = ev(&sin, v);
        let c = ev(&cos, v);
        let sum = &s * &s + &c * &c;
        t.case(gr_close(&sum, &one, EXACT), || format!("at {}: {}", show(v), show(&sum)));
    }
    checks.push(t.finish());

    let mut add_t = Tally::new("sin(x1 +- x2) = sin x1 cos x2 +- sin x2 cos x1");
    let mut exp_t = Tally::new("exp(x1) exp(x2) = exp(x1 + x2)");
    for w in xs.chunks(2) {
        let (a, b) = (&w[0], &w[1]);
        let (sa, ca, sb, cb) = (ev(&sin, a), ev(&cos, a), ev(&sin, b), ev(&cos, b));
        let plus = ev(&sin, &(a + b));
        let minus = ev(&sin, &(a - b));
        let want_plus = &sa * &cb + &sb * &ca;
        let want_minus = &sa * &cb - &sb * &ca;
        add_t.case(gr_close(&plus, &want_plus, EXACT) && gr_close(&minus, &want_minus, EXACT), || {
            format!("at ({}, {})", show(a), show(b))
        });
        let prod = ev(&exp, a) * ev(&exp, b);
        let sum = ev(&exp, &(a + b));
        exp_t.case(gr_close(&prod, &sum, EXACT), || format!("at ({}, {}): {} vs {}", show(a), show(b), show(&prod), show(&sum)));
    }
    checks.push(add_t.finish());
    checks.push(exp_t.finish());

    let mut t = Tally::new("sin periodic with period 2 pi, sin odd, cos even");
    let two_pi = real(2.0 * PI);
    for v in &xs {
        let periodic = gr_close(&ev(&sin, &(v + &two_pi)), &ev(&sin, v), EXACT);
        let odd = gr_close(&ev(&sin, &(-v)), &(-ev(&sin, v)), EXACT);
        let even = gr_close(&ev(&cos, &(-v)), &ev(&cos, v), EXACT);
        t.case(periodic && odd && even, || format!("at {}", show(v)));
    }
    checks.push(t.finish());
    checks
}

pub(super) fn ring(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const N: usize = 1000;
    let triples: Vec<[GeneralizedReal; 3]> = (0..N).map(|_| [gen::real(rng), gen::real(rng), gen::real(rng)]).collect();
    let zero = GeneralizedReal::zero();
    let one = GeneralizedReal::one();

    let mut add_comm = Tally::new("x + y = y + x");
    let mut mul_comm = Tally::new("x y = y x");
    let mut add_assoc = Tally::new("(x + y) + z = x + (y + z)");
    let mut mul_assoc = Tally::new("(x y) z = x (y z)");
    let mut distrib = Tally::new("x (y + z) = x y + x z");
    let mut ident = Tally::new("x + 0 = x, x 1 = x, x - x = 0");
    let mut trich = Tally::new("exactly one of x < y, x ~ y, y < x");
    let mut order_add = Tally::new("x < y implies x + z < y + z");
    let mut order_mul = Tally::new("x < y and z > 0 imply x z < y z");
    let mut sigma_hom = Tally::new("sigma is a ring homomorphism fixing reals");
    let mut decomp = Tally::new("x = sigma x + dx, unique");
    let mut quotient = Tally::new("quotient map preserves sum and product");
    for [a, b, c] in &triples {
        let ctx = || format!("x = {}, y = {}, z = {}", a, b, c);
        add_comm.case(a + b == b + a, ctx);
        mul_comm.case(a * b == b * a, ctx);
        add_assoc.case(gr_close(&((a + b) + c), &(a + (b + c)), EXACT), ctx);
        mul_assoc.case(gr_close(&((a * b) * c), &(a * (b * c)), EXACT), ctx);
        distrib.case(gr_close(&(a * (b + c)), &(a * b + a * c), EXACT), ctx);
        ident.case(&(a + &zero) == a && &(a * &one) == a && (a + &(-a)) == zero, ctx);

        let flags = [a.lt(b), a.indiscernible(b), b.lt(a)];
        let cmp_ok = match a.cmp3(b) {
            Cmp3::Less => flags == [true, false, false],
            Cmp3::Indiscernible => flags == [false, true, false],
            Cmp3::Greater => flags == [false, false, true],
        };
        trich.case(cmp_ok && flags.iter().filter(|f| **f).count() == 1, ctx);
        if a.lt(b) {
            order_add.case((a + c).lt(&(b + c)), ctx);
            if c.is_positive() {
                order_mul.case((a * c).lt(&(b * c)), ctx);
            }
        }
        let sx = real(a.sigma());
        sigma_hom.case(
            close((a * b).sigma(), a.sigma() * b.sigma(), EXACT)
                && close((a + b).sigma(), a.sigma() + b.sigma(), EXACT)
                && real(sx.sigma()) == sx,
            ctx,
        );
        let rebuilt = GeneralizedReal::make(a.sigma(), a.dpart_coeffs().clone()).expect("finite");
        decomp.case(
            rebuilt == *a
                && &sx + &a.dpart() == *a
                && a.dpart().sigma() == 0.0
                && a.dpart().dpart() == a.dpart()
                && sx.dpart().is_real()
                && sx.dpart() == zero,
            ctx,
        );
        quotient.case(
            (a * b).quotient_repr() == a.quotient_repr() * b.quotient_repr()
                && close((a + b).quotient_repr(), a.quotient_repr() + b.quotient_repr(), EXACT),
            ctx,
        );
    }

    let mut nil = Tally::new("dx dx = 0 structurally");
    let mut small = Tally::new("infinitesimals lie between every negative and every positive");
    let mut monad0 = Tally::new("the only real infinitesimal is 0");
    for [a, b, _] in &triples {
        let d = gen::infinitesimal(rng);
        let sq = &d * &d;
        nil.case(sq.sigma() == 0.0 && sq.dpart_coeffs().is_empty(), || format!("dx = {d}: {sq}"));
        let ok = (a.sigma() <= 0.0 || d.lt(a)) && (b.sigma() >= 0.0 || b.lt(&d));
        small.case(ok, || format!("dx = {d}, x = {a}, y = {b}"));
        let r = real(d.sigma());
        monad0.case(r.is_real() && r == GeneralizedReal::zero(), || format!("{r}"));
    }

    let mut inv = Tally::new("x inv(x) = 1");
    let mut arch = Tally::new("archimedean witness is minimal");
    let mut dens = Tally::new("density witnesses lie strictly between");
    for _ in 0..N {
        let a = gen::invertible(rng);
        inv.result(a.inv(), |i| {
            let p = &a * i;
            if gr_close(&p, &one, EXACT) {
                Ok(())
            } else {
                Err(format!("x = {a}: x inv(x) = {p}"))
            }
        });
        let b = gen::real(rng);
        let pos = GeneralizedReal::make(a.sigma().abs(), a.dpart_coeffs().clone()).expect("finite");
        arch.result(archimedean_witness(&pos, &b), |&m| {
            let above = (&pos * m as f64).gt(&b);
            let minimal = m == 1 || !(&pos * (m - 1) as f64).gt(&b);
            if above && minimal {
                Ok(())
            } else {
                Err(format!("x = {pos}, y = {b}: m = {m}"))
            }
        });
        let (lo, hi) = if a.lt(&b) { (&a, &b) } else { (&b, &a) };
        if lo.lt(hi) {
            dens.result(density_real_between(lo, hi), |&z| {
                let zr = real(z);
                if lo.lt(&zr) && zr.lt(hi) {
                    Ok(())
                } else {
                    Err(format!("{z} not between {lo} and {hi}"))
                }
            });
            let (p, q) = (lo.sigma(), hi.sigma());
            dens.result(density_nonreal_between(p, q), |z| {
                if real(p).lt(z) && z.lt(&real(q)) && !z.is_real() {
                    Ok(())
                } else {
                    Err(format!("{z} not strictly between {p} and {q}"))
                }
            });
        }
    }

    vec![
        add_comm.finish(),
        mul_comm.finish(),
        add_assoc.finish(),
        mul_assoc.finish(),
        distrib.finish(),
        ident.finish(),
        trich.finish(),
        order_add.finish(),
        order_mul.finish(),
        sigma_hom.finish(),
        decomp.finish(),
        quotient.finish(),
        nil.finish(),
        small.finish(),
        monad0.finish(),
        inv.finish(),
        arch.finish(),
        dens.finish(),
    ]
}

// Bound on |x_n| over all n; every generator term lies in [0, 1].
fn size(x: &GeneralizedReal) -> f64 {
    x.sigma().abs() + x.dpart_coeffs().values().map(|c| c.abs()).sum::<f64>()
}

// Terms agree to 1e-12 relative to the magnitude of the intermediate
// quantities (`scale`), which is where rounding happens.
fn prefix_close(core: &GeneralizedReal, oracle: &[f64], scale: f64) -> Option<String> {
    let terms = seq::prefix(core, oracle.len());
    terms
        .iter()
        .zip(oracle)
        .enumerate()
        .find(|(_, (a, b))| (**a - **b).abs() > EXACT * a.abs().max(b.abs()).max(scale).max(1.0))
        .map(|(n, (a, b))| format!("term {}: core {a}, sequence formula {b}", n + 1))
}

pub(super) fn oracle(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const N: usize = 500;
    const TERMS: usize = 64;
    let mut add = Tally::new("x + y matches the termwise sum").note("1e-12 relative to the operand magnitudes");
    let mut mul = Tally::new("x y matches the termwise product formula");
    let mut inv = Tally::new("inv(x) matches the termwise inverse formula");
    let mut pow = Tally::new("x^m matches repeated termwise products");
    for _ in 0..N {
        let (a, b) = (gen::real(rng), gen::real(rng));
        let ctx = |d: String| format!("x = {a}, y = {b}: {d}");
        let o = seq::oracle_binary(BinaryOp::Add, &a, &b, TERMS);
        let bad = prefix_close(&(&a + &b), &o, size(&a) + size(&b));
        add.case(bad.is_none(), || ctx(bad.clone().unwrap_or_default()));
        let o = seq::oracle_binary(BinaryOp::Mul, &a, &b, TERMS);
        let bad = prefix_close(&(&a * &b), &o, size(&a) * size(&b));
        mul.case(bad.is_none(), || ctx(bad.clone().unwrap_or_default()));
        let c = gen::invertible(rng);
        match (c.inv(), seq::oracle_inv(&c, TERMS)) {
            (Ok(i), Ok(o)) => {
                let sx = c.sigma().abs();
                let bad = prefix_close(&i, &o, 1.0 / sx + size(&c) / (sx * sx));
                inv.case(bad.is_none(), || format!("x = {c}: {}", bad.clone().unwrap_or_default()));
            }
            _ => inv.case(false, || format!("x = {c}: inverse failed")),
        }
        let m = rng.random_range(0..=4);
        let bad = prefix_close(&a.pow_nat(m), &seq::oracle_pow(&a, m, TERMS), size(&a).powi(m as i32));
        pow.case(bad.is_none(), || format!("x = {a}, m = {m}: {}", bad.clone().unwrap_or_default()));
    }

    let mut conv = Tally::new("catalog generators converge (eps 1e-6, nmax 1e7)");
    for g in Catalog::default().members() {
        let v = GeneralizedReal::infinitesimal(*g, 1.0).expect("finite");
        let w = seq::convergence_witness(&v, 1e-6, 10_000_000);
        conv.case(matches!(w, Witness::Converged(_)), || format!("{g}: {w:?}"));
    }
    vec![add.finish(), mul.finish(), inv.finish(), pow.finish(), conv.finish()]
}

// Independent linear combination of coefficient maps.
fn combo(parts: &[(f64, &GeneralizedReal)]) -> BTreeMap<Generator, f64> {
    let mut out: BTreeMap<Generator, f64> = BTreeMap::new();
    for (k, v) in parts {
        for (g, c) in v.dpart_coeffs() {
            *out.entry(*g).or_insert(0.0) += k * c;
        }
    }
    out.retain(|_, c| *c != 0.0);
    out
}

fn coeffs_match(got: &GeneralizedReal, want: &BTreeMap<Generator, f64>, tol: f64) -> bool {
    let w = GeneralizedReal::make(0.0, want.clone()).expect("finite");
    let g = got.dpart();
    if tol == 0.0 {
        g == w
    } else {
        gr_close(&g, &w, tol)
    }
}

pub(super) fn differential(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const N: usize = 500;
    let mut sum = Tally::new("d(x + y) = dx + dy, d(x - y) = dx - dy");
    let mut prod = Tally::new("d(x y) = sigma x dy + sigma y dx");
    let mut pow = Tally::new("d(x^m) = m (sigma x)^(m-1) dx");
    let mut recip = Tally::new("d(1/x) = -dx / (sigma x)^2").note("relative tolerance 1e-12");
    let mut quot = Tally::new("d(y/x) = (sigma x dy - sigma y dx) / (sigma x)^2").note("relative tolerance 1e-12");
    let mut root = Tally::new("d(root_m x) = dx / (m root_m(sigma x)^(m-1))").note("relative tolerance 1e-12");
    for _ in 0..N {
        let (a, b) = (gen::real(rng), gen::real(rng));
        let ctx = || format!("x = {a}, y = {b}");
        sum.case(
            coeffs_match(&(&a + &b), &combo(&[(1.0, &a), (1.0, &b)]), 0.0)
                && coeffs_match(&(&a - &b), &combo(&[(1.0, &a), (-1.0, &b)]), 0.0),
            ctx,
        );
        prod.case(coeffs_match(&(&a * &b), &combo(&[(a.sigma(), &b), (b.sigma(), &a)]), 0.0), ctx);
        let m = rng.random_range(1..=6u32);
        let k = f64::from(m) * a.sigma().powi(m as i32 - 1);
        pow.case(coeffs_match(&a.pow_nat(m), &combo(&[(k, &a)]), 0.0), || format!("x = {a}, m = {m}"));

        let x = gen::invertible(rng);
        let sx = x.sigma();
        recip.result(x.inv(), |i| {
            if coeffs_match(i, &combo(&[(-1.0 / (sx * sx), &x)]), EXACT) {
                Ok(())
            } else {
                Err(format!("x = {x}: {i}"))
            }
        });
        quot.result(b.checked_div(&x), |q| {
            let want = combo(&[(sx / (sx * sx), &b), (-b.sigma() / (sx * sx), &x)]);
            if coeffs_match(q, &want, EXACT) {
                Ok(())
            } else {
                Err(format!("y = {b}, x = {x}: {q}"))
            }
        });
        let pos = GeneralizedReal::make(sx.abs(), x.dpart_coeffs().clone()).expect("finite");
        let m = rng.random_range(2..=5u32);
        root.result(pos.root(m), |r| {
            let base = sx.abs().powf(1.0 / f64::from(m));
            let want = combo(&[(1.0 / (f64::from(m) * base.powi(m as i32 - 1)), &pos)]);
            if coeffs_match(r, &want, EXACT) {
                Ok(())
            } else {
                Err(format!("x = {pos}, m = {m}: {r}"))
            }
        });
    }
    vec![sum.finish(), prod.finish(), pow.finish(), recip.finish(), quot.finish(), root.finish()]
}
