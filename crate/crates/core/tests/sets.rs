use monadica::sets::{
    hat_interval, is_compact, is_connected, is_upper_bound, length, max_r, member, monad, shadow, sup_r, topo,
    HatKind, TopoOp,
};
use monadica::{Error, GeneralizedReal, GeneralizedSet, Generator, RealSet};
use proptest::prelude::*;

fn near(s: f64) -> GeneralizedReal {
    GeneralizedReal::make(s, [(Generator::impulse(1).unwrap(), 1.0)]).unwrap()
}

#[test]
fn monads_and_shadows() {
    assert!(monad(&RealSet::empty()).is_empty());
    assert_eq!(shadow(&monad(&RealSet::closed(0.0, 1.0))), RealSet::closed(0.0, 1.0));
    assert!(member(&near(0.5), &monad(&RealSet::closed(0.0, 1.0))));
    assert!(member(&near(0.0), &monad(&RealSet::point(0.0))));
}

#[test]
fn extras_admit_only_their_real_point() {
    let g = GeneralizedSet::new(RealSet::closed(0.0, 1.0), &RealSet::point(2.0), &RealSet::empty());
    assert!(member(&near(1.0), &g));
    assert!(!member(&near(2.0), &g));
    assert!(member(&GeneralizedReal::real(2.0).unwrap(), &g));
    assert!(!g.is_monadic());
}

#[test]
fn monad_set_operations() {
    let m = |a: f64, b: f64| monad(&RealSet::closed(a, b));
    assert_eq!(m(0.0, 1.0).union(&m(2.0, 3.0)), monad(&RealSet::closed(0.0, 1.0).union(&RealSet::closed(2.0, 3.0))));
    assert_eq!(m(0.0, 1.0).intersect(&m(1.0, 2.0)), monad(&RealSet::point(1.0)));
    let half = RealSet::interval(0.0, 1.0, true, false).unwrap();
    assert_eq!(m(0.0, 2.0).difference(&m(1.0, 3.0)), monad(&half));
}

#[test]
fn hat_intervals() {
    assert_eq!(hat_interval(HatKind::Closed, 2.0, 2.0).unwrap(), monad(&RealSet::point(2.0)));
    assert_eq!(length(&hat_interval(HatKind::Closed, 2.0, 2.0).unwrap()), Ok(0.0));
    assert!(hat_interval(HatKind::Open, 2.0, 2.0).unwrap().is_empty());
    assert_eq!(length(&hat_interval(HatKind::HalfHi, 1.0, 4.0).unwrap()), Ok(3.0));
    let a = hat_interval(HatKind::Closed, 0.0, 1.0).unwrap();
    let b = hat_interval(HatKind::Closed, 1.0, 3.0).unwrap();
    assert_eq!(a.intersect(&b), monad(&RealSet::point(1.0)));
}

#[test]
fn topology_on_monads() {
    let closed = monad(&RealSet::closed(0.0, 1.0));
    let open = monad(&RealSet::open(0.0, 1.0));
    assert_eq!(topo(TopoOp::Interior, &closed).unwrap(), open);
    assert_eq!(is_compact(&closed), Ok(true));
    assert_eq!(is_compact(&open), Ok(false));
    let split = monad(&RealSet::closed(0.0, 1.0).union(&RealSet::closed(2.0, 3.0)));
    assert_eq!(is_connected(&split), Ok(false));
    let mixed = GeneralizedSet::new(RealSet::closed(0.0, 1.0), &RealSet::point(2.0), &RealSet::empty());
    assert_eq!(topo(TopoOp::Closure, &mixed), Err(Error::NotMonadic));
}

#[test]
fn real_suprema() {
    let open = monad(&RealSet::open(0.0, 1.0));
    assert_eq!(sup_r(&open), Ok(1.0));
    assert!(is_upper_bound(&near(1.0), &open));
    assert_eq!(max_r(&monad(&RealSet::closed(0.0, 1.0))), Ok(1.0));
    assert!(max_r(&open).is_err());
    assert_eq!(sup_r(&monad(&RealSet::interval(0.0, f64::INFINITY, true, false).unwrap())), Err(Error::Unbounded));
}

fn endpoint() -> impl Strategy<Value = f64> {
    (-8i32..=8).prop_map(|k| k as f64 * 0.5)
}

fn real_set() -> impl Strategy<Value = RealSet> {
    prop::collection::vec((endpoint(), endpoint(), any::<bool>(), any::<bool>()), 0..4).prop_map(|parts| {
        parts.into_iter().fold(RealSet::empty(), |acc, (a, b, lc, hc)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            acc.union(&RealSet::interval(lo, hi, lc || lo == hi, hc || lo == hi).unwrap())
        })
    })
}

fn probes(s: &RealSet, t: &RealSet) -> Vec<f64> {
    let mut v = vec![-100.0, 100.0];
    for i in s.parts().iter().chain(t.parts()) {
        for p in [i.lo, i.hi] {
            if p.is_finite() {
                v.extend([p - 0.25, p, p + 0.25]);
            }
        }
    }
    v
}

proptest! {
    #[test]
    fn complement_is_an_involution(s in real_set()) {
        prop_assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn set_algebra_is_pointwise(s in real_set(), t in real_set()) {
        let (u, i, d) = (s.union(&t), s.intersect(&t), s.difference(&t));
        for p in probes(&s, &t) {
            prop_assert_eq!(u.contains(p), s.contains(p) || t.contains(p));
            prop_assert_eq!(i.contains(p), s.contains(p) && t.contains(p));
            prop_assert_eq!(d.contains(p), s.contains(p) && !t.contains(p));
        }
    }

    #[test]
    fn monad_membership_follows_the_shadow(s in real_set(), k in -20i32..=20) {
        let p = k as f64 * 0.25;
        prop_assert_eq!(member(&near(p), &monad(&s)), s.contains(p));
    }

    #[test]
    fn closure_contains_interior(s in real_set()) {
        let g = monad(&s);
        let int = topo(TopoOp::Interior, &g).unwrap();
        let cl = topo(TopoOp::Closure, &g).unwrap();
        prop_assert!(int.difference(&g).is_empty());
        prop_assert!(g.difference(&cl).is_empty());
    }

    #[test]
    fn json_round_trip(s in real_set(), e in real_set()) {
        prop_assert_eq!(RealSet::from_json(&s.to_json()).unwrap(), s.clone());
        let g = GeneralizedSet::new(s, &e, &RealSet::empty());
        prop_assert_eq!(GeneralizedSet::from_json(&g.to_json()).unwrap(), g);
    }
}
