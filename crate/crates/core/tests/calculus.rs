use std::f64::consts::E;

use monadica::calculus::{
    c, eval_real, gen_eval, image, inverse_ext, lambda, mvt_gamma, parse, pw_derivative_at, taylor, x, Expr, GenFn,
    MonadRule, PiecewiseGenFn, Probe,
};
use monadica::{Error, GeneralizedReal, Generator, RealSet};
use proptest::prelude::*;

fn gr(shadow: f64, d1: f64) -> GeneralizedReal {
    GeneralizedReal::make(shadow, [(Generator::impulse(1).unwrap(), d1)]).unwrap()
}

fn real(v: f64) -> GeneralizedReal {
    GeneralizedReal::real(v).unwrap()
}

#[test]
fn classical_derivatives() {
    let sq = parse("x^2").unwrap();
    assert_eq!(eval_real(&lambda(&sq), 1.5).unwrap(), 3.0);
    assert_eq!(lambda(&Expr::exp(x())), Expr::exp(x()));
    assert!(lambda(&c(4.0)).is_const(0.0));
}

#[test]
fn extensions_at_infinitesimal_points() {
    let ev = |s: &str, at: GeneralizedReal| gen_eval(&parse(s).unwrap(), &at).unwrap();
    assert_eq!(ev("x^2 + 3*x", gr(2.0, 1.0)), gr(10.0, 7.0));
    assert_eq!(ev("exp(x)", gr(0.0, 1.0)), gr(1.0, 1.0));
    assert_eq!(ev("log(x)", gr(1.0, 1.0)), gr(0.0, 1.0));
    assert_eq!(ev("sin(x)", gr(0.0, 1.0)), gr(0.0, 1.0));
    assert_eq!(ev("cos(x)", gr(0.0, 1.0)), real(1.0));
    assert_eq!(ev("x^0.5", gr(1.0, 1.0)), gr(1.0, 0.5));
    let pyth = ev("sin(x)^2 + cos(x)^2", gr(0.7, 1.0));
    assert!((pyth.sigma() - 1.0).abs() < 1e-15);
    assert!(pyth.coeff(&Generator::impulse(1).unwrap()).abs() < 1e-15);
    assert_eq!(ev("exp(x)", real(1.0)), real(E));
}

#[test]
fn derivative_and_higher_extensions() {
    let sq = GenFn::on_reals(parse("x^2").unwrap()).unwrap();
    assert_eq!(sq.derivative_at(&gr(3.0, 1.0)), Ok(6.0));
    assert_eq!(sq.mth_ext_eval(2, &gr(5.0, 1.0)).unwrap(), gr(10.0, 2.0));
    assert_eq!(sq.mth_derivative(2, &gr(5.0, 1.0)), Ok(2.0));
    let exp = GenFn::on_reals(Expr::exp(x())).unwrap();
    assert_eq!(exp.derivative_at(&real(0.0)), Ok(1.0));
    for m in 1..6 {
        let want = gen_eval(&Expr::exp(x()), &gr(0.3, 1.0)).unwrap();
        let got = exp.mth_ext_eval(m, &gr(0.3, 1.0)).unwrap();
        assert!((got.sigma() - want.sigma()).abs() < 1e-12);
    }
}

#[test]
fn taylor_and_mean_value() {
    let sq = GenFn::on_reals(parse("x^2").unwrap()).unwrap();
    let r = taylor(&sq, 1.0, 2, &real(3.0)).unwrap();
    assert_eq!(r.partial_sum, 9.0);
    assert_eq!(mvt_gamma(&sq, &real(1.0), &real(2.0)), Ok(1.5));
    let cube = GenFn::on_reals(parse("x^3").unwrap()).unwrap();
    assert!((mvt_gamma(&cube, &real(0.0), &real(3.0)).unwrap() - 3f64.sqrt()).abs() < 1e-9);
    let d2 = GeneralizedReal::make(0.0, [(Generator::impulse(2).unwrap(), 1.0)]).unwrap();
    assert!(matches!(mvt_gamma(&sq, &gr(0.0, 1.0), &d2), Err(Error::Domain(_))));
}

#[test]
fn inverse_functions() {
    let exp = GenFn::on_reals(Expr::exp(x())).unwrap();
    let log = inverse_ext(&exp).unwrap();
    assert_eq!(log.gen_eval(&gr(1.0, 1.0)).unwrap(), gr(0.0, 1.0));
    assert!((log.derivative_at(&real(E)).unwrap() - 1.0 / E).abs() < 1e-15);
    let sq = GenFn::new(parse("x^2").unwrap(), -1.0, 1.0).unwrap();
    assert_eq!(inverse_ext(&sq).map(|_| ()), Err(Error::NotInjective));
}

#[test]
fn images() {
    let exp = GenFn::on_reals(Expr::exp(x())).unwrap();
    let img = image(&exp, &RealSet::whole()).unwrap();
    assert_eq!(img.reals(), &RealSet::open(0.0, f64::INFINITY));
    assert!(img.is_monadic());
}

#[test]
fn piecewise_derivative_proviso() {
    let rule = |value, slope| MonadRule { value, slope };
    let abs = PiecewiseGenFn::new(vec![0.0], vec![Expr::neg(x()), x()], vec![rule(0.0, 0.0)]).unwrap();
    let d = pw_derivative_at(&abs, 0.0).unwrap();
    assert_eq!((d.value, d.probe), (0.0, Probe::Absent));
    let sq = parse("x^2").unwrap();
    let bad = PiecewiseGenFn::new(vec![0.0], vec![sq.clone(), sq], vec![rule(0.0, 1.0)]).unwrap();
    assert!(matches!(pw_derivative_at(&bad, 0.0), Err(Error::ProvisoViolated { .. })));
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![Just(x()), (-4i32..=4).prop_map(|k| c(k as f64 * 0.5))]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), 1i32..4).prop_map(|(a, m)| Expr::pow_int(a, m)),
            inner.clone().prop_map(Expr::sin),
            inner.clone().prop_map(Expr::cos),
            inner.prop_map(Expr::exp),
        ]
    })
}

fn same(a: f64, b: f64) -> bool {
    (a.is_nan() && b.is_nan()) || a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn display_parses_back(e in expr()) {
        let back = parse(&e.to_string()).unwrap();
        for t in [-1.3, 0.0, 0.4, 2.1] {
            let (a, b) = (eval_real(&e, t), eval_real(&back, t));
            match (a, b) {
                (Ok(a), Ok(b)) => prop_assert!(same(a, b), "{} vs {}: {} vs {}", e, back, a, b),
                (a, b) => prop_assert_eq!(a.is_ok(), b.is_ok()),
            }
        }
    }

    #[test]
    fn infinitesimal_part_is_derivative_times_increment(e in expr(), s in -1.5..1.5f64, d in -3.0..3.0f64) {
        prop_assume!(d != 0.0);
        let (Ok(v), Ok(l)) = (eval_real(&e, s), eval_real(&lambda(&e), s)) else { return Ok(()) };
        prop_assume!(v.is_finite() && l.is_finite() && v.abs() < 1e6 && l.abs() < 1e6);
        let got = gen_eval(&e, &gr(s, d)).unwrap();
        prop_assert!(same(got.sigma(), v));
        let k = got.coeff(&Generator::impulse(1).unwrap());
        prop_assert!((k - l * d).abs() <= 1e-9 * (l * d).abs().max(1.0), "{}: {} vs {}", e, k, l * d);
    }
}
