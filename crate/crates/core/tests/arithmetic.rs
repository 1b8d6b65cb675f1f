use monadica::real::{archimedean_witness, density_nonreal_between, density_real_between};
use monadica::seq::{self, BinaryOp};
use monadica::{Cmp3, Error, GeneralizedReal, Generator};
use proptest::prelude::*;

fn e(k: u32) -> Generator {
    Generator::impulse(k).unwrap()
}

fn gr(shadow: f64, d: &[(Generator, f64)]) -> GeneralizedReal {
    GeneralizedReal::make(shadow, d.iter().copied()).unwrap()
}

fn real(v: f64) -> GeneralizedReal {
    GeneralizedReal::real(v).unwrap()
}

#[test]
fn construction_prunes_zero_coefficients() {
    assert_eq!(gr(0.0, &[]), GeneralizedReal::zero());
    assert_eq!(gr(3.0, &[(e(1), 0.0)]), real(3.0));
    assert!(gr(3.0, &[(e(1), 0.0)]).dpart_coeffs().is_empty());
    let x = gr(2.0, &[(e(1), 1.0)]);
    assert_eq!(x.sigma(), 2.0);
    assert_eq!(x.dpart(), gr(0.0, &[(e(1), 1.0)]));
}

#[test]
fn worked_products_and_inverses() {
    let a = gr(2.0, &[(e(1), 1.0)]);
    let b = gr(3.0, &[(e(2), 1.0)]);
    assert_eq!(&a + &b, gr(5.0, &[(e(1), 1.0), (e(2), 1.0)]));
    assert_eq!(&a * &b, gr(6.0, &[(e(1), 3.0), (e(2), 2.0)]));
    assert_eq!(&gr(1.0, &[(e(1), 1.0)]) + &gr(-1.0, &[(e(1), -1.0)]), GeneralizedReal::zero());
    assert_eq!(a.inv().unwrap(), gr(0.5, &[(e(1), -0.25)]));
    assert_eq!(gr(0.0, &[(e(1), 1.0)]).inv(), Err(Error::NotInvertible));
    assert_eq!(a.pow_nat(2), gr(4.0, &[(e(1), 4.0)]));
    assert_eq!(gr(4.0, &[(e(1), 1.0)]).root(2).unwrap(), gr(2.0, &[(e(1), 0.25)]));
    let r = gr(1.0, &[(e(1), 1.0)]).root(3).unwrap();
    assert!((r.coeff(&e(1)) - 1.0 / 3.0).abs() < 1e-15);
    assert!(matches!(gr(-1.0, &[(e(1), 1.0)]).root(2), Err(Error::Domain(_))));
}

#[test]
fn order_and_witnesses() {
    assert_eq!(gr(1.0, &[(e(1), 1.0)]).cmp3(&gr(2.0, &[(e(2), 1.0)])), Cmp3::Less);
    assert_eq!(gr(0.0, &[(e(1), 1.0)]).cmp3(&gr(0.0, &[(e(2), 1.0)])), Cmp3::Indiscernible);
    assert_eq!(archimedean_witness(&gr(0.5, &[(e(1), 1.0)]), &real(10.0)), Ok(21));
    assert_eq!(archimedean_witness(&real(1.0), &real(0.0)), Ok(1));
    assert!(archimedean_witness(&gr(0.0, &[(e(1), 1.0)]), &real(1.0)).is_err());
    assert_eq!(density_real_between(&gr(1.0, &[(e(1), 1.0)]), &real(2.0)), Ok(1.5));
    let z = density_nonreal_between(0.0, 1.0).unwrap();
    assert_eq!(z.sigma(), 0.5);
    assert!(!z.is_real());
    assert!(density_real_between(&gr(0.0, &[(e(1), 1.0)]), &gr(0.0, &[(e(2), 1.0)])).is_err());
}

#[test]
fn quotient_map() {
    assert_eq!(gr(2.0, &[(e(1), 1.0)]).quotient_repr(), 2.0);
    assert_eq!(gr(0.0, &[(e(1), 1.0)]).quotient_repr(), 0.0);
    let p = &gr(2.0, &[(e(1), 1.0)]) * &gr(3.0, &[(e(2), 1.0)]);
    assert_eq!(p.quotient_repr(), 6.0);
}

#[test]
fn display_and_json() {
    let x = gr(2.0, &[(e(1), 1.0), (Generator::Harmonic, -0.5)]);
    assert_eq!(x.to_string(), "2 + e:1 - 0.5*h");
    let back = GeneralizedReal::from_json(&x.to_json()).unwrap();
    assert_eq!(back, x);
    assert!(GeneralizedReal::from_json(r#"{"shadow":1,"d":{"q:1":1}}"#).is_err());
}

fn coeff() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), -5.0..5.0f64]
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (1u32..=8).prop_map(|k| Generator::impulse(k).unwrap()),
        Just(Generator::Harmonic),
        prop::sample::select(vec![0.5, 0.25, 0.75, 0.9]).prop_map(|r| Generator::geometric(r).unwrap()),
    ]
}

fn value() -> impl Strategy<Value = GeneralizedReal> {
    (-10.0..10.0f64, prop::collection::vec((generator(), coeff()), 0..4))
        .prop_map(|(s, d)| GeneralizedReal::make(s, d).unwrap())
}

proptest! {
    #[test]
    fn json_round_trip_is_bit_exact(x in value()) {
        let back = GeneralizedReal::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(back.sigma().to_bits(), x.sigma().to_bits());
        prop_assert_eq!(back, x);
    }

    #[test]
    fn sum_matches_termwise_sum(x in value(), y in value()) {
        let core = seq::prefix(&(&x + &y), 32);
        let oracle = seq::oracle_binary(BinaryOp::Add, &x, &y, 32);
        for (a, b) in core.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0) * 32.0);
        }
    }

    #[test]
    fn infinitesimals_square_to_zero(x in value()) {
        let d = x.dpart();
        prop_assert_eq!(&d * &d, GeneralizedReal::zero());
    }

    #[test]
    fn comparison_is_by_shadow(x in value(), y in value()) {
        let want = if x.sigma() < y.sigma() {
            Cmp3::Less
        } else if x.sigma() > y.sigma() {
            Cmp3::Greater
        } else {
            Cmp3::Indiscernible
        };
        prop_assert_eq!(x.cmp3(&y), want);
        prop_assert_eq!(x.lesssim(&y), x.sigma() <= y.sigma());
    }

    #[test]
    fn inverse_is_two_sided(x in value()) {
        prop_assume!(x.sigma().abs() > 0.1);
        let i = x.inv().unwrap();
        let p = &x * &i;
        prop_assert!((p.sigma() - 1.0).abs() < 1e-12);
        for c in p.dpart_coeffs().values() {
            prop_assert!(c.abs() < 1e-12);
        }
    }
}
