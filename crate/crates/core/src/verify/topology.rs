//! Monads and shadows of sets, the monad topology, hat-intervals and the
//! real supremum.
//!
//! The oracle here works on the raw interval lists the sets were built
//! from, never on the normalized form, and decides membership at a probe
//! grid dense enough to separate every elementary piece.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{gen, Check, Tally};
use crate::error::Error;
use crate::real::GeneralizedReal;
use crate::seq::Generator;
use crate::sets::{
    hat_interval, is_closed, is_compact, is_connected, is_lower_bound, is_open, is_upper_bound, length, max_r,
    member, min_r, monad, shadow, sup_r, inf_r, topo, GeneralizedSet, HatInterval, HatKind, Interval, RealSet,
    TopoOp,
};

const DELTA: f64 = 1e-3;
const EPS: f64 = 1e-4;
const FAR: f64 = 100.0;

struct Raw(Vec<Interval>);

impl Raw {
    fn has(&self, t: f64) -> bool {
        self.0.iter().any(|i| i.contains(t))
    }

    fn interior(&self, t: f64) -> bool {
        self.has(t - EPS) && self.has(t) && self.has(t + EPS)
    }

    fn closure(&self, t: f64) -> bool {
        self.has(t - EPS) || self.has(t) || self.has(t + EPS)
    }

    fn topo(&self, op: TopoOp, t: f64) -> bool {
        match op {
            TopoOp::Interior => self.interior(t),
            TopoOp::Closure => self.closure(t),
            TopoOp::Boundary => self.closure(t) && !self.interior(t),
            TopoOp::Exterior => !self.closure(t),
        }
    }

    fn set(&self) -> RealSet {
        RealSet::from_intervals(self.0.clone())
    }
}

// Endpoints, points just beside them, midpoints and far points.
fn probes(sets: &[&Raw]) -> Vec<f64> {
    let mut ends: Vec<f64> = sets
        .iter()
        .flat_map(|r| r.0.iter().flat_map(|i| [i.lo, i.hi]))
        .filter(|v| v.is_finite())
        .collect();
    ends.extend([-FAR, FAR, 0.0]);
    ends.sort_by(f64::total_cmp);
    ends.dedup();
    let mut out = Vec::new();
    for (k, &e) in ends.iter().enumerate() {
        out.extend([e - DELTA, e, e + DELTA]);
        if let Some(&next) = ends.get(k + 1) {
            out.push(e / 2.0 + next / 2.0);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

fn beside(t: f64, c: f64) -> GeneralizedReal {
    GeneralizedReal::make(t, [(Generator::Impulse(1), c)]).expect("finite")
}

fn real(t: f64) -> GeneralizedReal {
    GeneralizedReal::real(t).expect("finite")
}

/// Real probes, nonreal probes on both sides, and the expected truth.
fn agrees(g: &GeneralizedSet, ps: &[f64], real_in: impl Fn(f64) -> bool, monad_in: impl Fn(f64) -> bool) -> Option<String> {
    for &t in ps {
        if member(&real(t), g) != real_in(t) {
            return Some(format!("real {t}: member = {}", !real_in(t)));
        }
        for c in [1.0, -1.0] {
            let x = beside(t, c);
            if member(&x, g) != monad_in(t) {
                return Some(format!("{x}: member = {}", !monad_in(t)));
            }
        }
    }
    None
}

fn monadic_agrees(g: &GeneralizedSet, ps: &[f64], inside: impl Fn(f64) -> bool) -> Option<String> {
    agrees(g, ps, &inside, &inside)
}

fn bounded(r: &Raw) -> bool {
    r.0.iter().all(|i| i.lo.is_finite() && i.hi.is_finite())
}

// Members among sorted probes form one contiguous run.
fn contiguous(r: &Raw, ps: &[f64]) -> bool {
    let flags: Vec<bool> = ps.iter().map(|&t| r.has(t)).collect();
    let first = flags.iter().position(|f| *f);
    let last = flags.iter().rposition(|f| *f);
    match (first, last) {
        (Some(a), Some(b)) => flags[a..=b].iter().all(|f| *f),
        _ => true,
    }
}

fn raw_pair(rng: &mut ChaCha8Rng) -> (Raw, Raw) {
    (Raw(gen::raw_intervals(rng, true)), Raw(gen::raw_intervals(rng, true)))
}

pub(super) fn sets(rng: &mut ChaCha8Rng) -> Vec<Check> {
    const N: usize = 200;
    let mut base = Tally::new("monad(S) has members exactly the values with shadow in S");
    let mut shadow_t = Tally::new("shadow(monad(S)) = S, monad(shadow(m(S))) = m(S)");
    let mut extras = Tally::new("extra reals admit only the real point");
    let mut inj = Tally::new("monad(A) = monad(B) iff A = B");
    let mut ops = Tally::new("monad commutes with union, intersection, difference");
    let mut shadow_ops = Tally::new("shadow commutes with union, intersection, difference on monadic sets");
    let mut family = Tally::new("finite families: monad and shadow distribute over unions and intersections");
    let mut topo_t = Tally::new("interior, exterior, boundary, closure commute with monad");
    let mut mirror = Tally::new("shadow of a monad-topology operator is the real operator");
    let mut preds = Tally::new("open, closed, compact, connected agree with the base");
    let mut not_monadic = Tally::new("topology of a set with extra reals is refused");

    for _ in 0..N {
        let (a, b) = raw_pair(rng);
        let ps = probes(&[&a, &b]);
        let (sa, sb) = (a.set(), b.set());
        let (ma, mb) = (monad(&sa), monad(&sb));

        base.case(ma.is_monadic() && ma.base() == &sa, || format!("{sa}"));
        let bad = monadic_agrees(&ma, &ps, |t| a.has(t));
        base.case(bad.is_none(), || format!("{sa}: {}", bad.clone().unwrap_or_default()));

        shadow_t.case(shadow(&ma) == sa && monad(&shadow(&ma)) == ma, || format!("{sa}"));

        let ex_raw = Raw(
            (0..rng.random_range(1..=3))
                .map(|_| Interval::point(f64::from(rng.random_range(-12..=12)) / 2.0 + 0.25))
                .collect(),
        );
        let g = GeneralizedSet::new(sa.clone(), &ex_raw.set(), &RealSet::empty());
        let mut eps = ps.clone();
        eps.extend(ex_raw.0.iter().map(|i| i.lo));
        let bad = agrees(&g, &eps, |t| a.has(t) || ex_raw.has(t), |t| a.has(t));
        extras.case(bad.is_none() && shadow(&g) == sa.union(&ex_raw.set()), || {
            format!("{g}: {}", bad.clone().unwrap_or_default())
        });

        // B' covers the same reals as A, built from a different raw list.
        let mut split = a.0.clone();
        split.extend(b.0.iter().filter_map(|i| {
            let s = RealSet::from_intervals([*i]).intersect(&sa);
            s.parts().first().copied()
        }));
        split.reverse();
        let a2 = Raw(split);
        let same_reals = ps.iter().all(|&t| a.has(t) == a2.has(t));
        inj.case(same_reals && monad(&a2.set()) == ma, || format!("{sa} rebuilt as {}", a2.set()));
        let sem_eq = ps.iter().all(|&t| a.has(t) == b.has(t));
        inj.case((ma == mb) == sem_eq && (sa == sb) == sem_eq, || format!("{sa} vs {sb}"));

        let checks: [(&str, GeneralizedSet, GeneralizedSet, fn(bool, bool) -> bool); 3] = [
            ("union", monad(&sa.union(&sb)), ma.union(&mb), |p, q| p || q),
            ("intersection", monad(&sa.intersect(&sb)), ma.intersect(&mb), |p, q| p && q),
            ("difference", monad(&sa.difference(&sb)), ma.difference(&mb), |p, q| p && !q),
        ];
        for (name, lhs, rhs, f) in checks {
            let bad = monadic_agrees(&rhs, &ps, |t| f(a.has(t), b.has(t)));
            ops.case(lhs == rhs && bad.is_none(), || {
                format!("{name} of {sa} and {sb}: {lhs} vs {rhs} {}", bad.clone().unwrap_or_default())
            });
        }
        shadow_ops.case(
            shadow(&ma.union(&mb)) == shadow(&ma).union(&shadow(&mb))
                && shadow(&ma.intersect(&mb)) == shadow(&ma).intersect(&shadow(&mb))
                && shadow(&ma.difference(&mb)) == shadow(&ma).difference(&shadow(&mb)),
            || format!("{sa} and {sb}"),
        );

        let fam: Vec<Raw> = (0..rng.random_range(2..=5)).map(|_| Raw(gen::raw_intervals(rng, true))).collect();
        let refs: Vec<&Raw> = fam.iter().collect();
        let fps = probes(&refs);
        let fsets: Vec<RealSet> = fam.iter().map(Raw::set).collect();
        let monads: Vec<GeneralizedSet> = fsets.iter().map(monad).collect();
        let union_real = fsets.iter().fold(RealSet::empty(), |acc, s| acc.union(s));
        let inter_real = fsets.iter().fold(RealSet::whole(), |acc, s| acc.intersect(s));
        let union_m = monads.iter().fold(GeneralizedSet::empty(), |acc, s| acc.union(s));
        let inter_m = monads.iter().skip(1).fold(monads[0].clone(), |acc, s| acc.intersect(s));
        let bad_u = monadic_agrees(&union_m, &fps, |t| fam.iter().any(|r| r.has(t)));
        let bad_i = monadic_agrees(&inter_m, &fps, |t| fam.iter().all(|r| r.has(t)));
        family.case(
            monad(&union_real) == union_m
                && monad(&inter_real) == inter_m
                && shadow(&union_m) == monads.iter().fold(RealSet::empty(), |acc, s| acc.union(&shadow(s)))
                && bad_u.is_none()
                && bad_i.is_none(),
            || format!("{} sets: {}", fam.len(), bad_u.clone().or(bad_i.clone()).unwrap_or_default()),
        );

        for op in [TopoOp::Interior, TopoOp::Exterior, TopoOp::Boundary, TopoOp::Closure] {
            let real_op = match op {
                TopoOp::Interior => sa.interior(),
                TopoOp::Exterior => sa.exterior(),
                TopoOp::Boundary => sa.boundary(),
                TopoOp::Closure => sa.closure(),
            };
            match topo(op, &ma) {
                Ok(t) => {
                    let bad = monadic_agrees(&t, &ps, |p| a.topo(op, p));
                    topo_t.case(t == monad(&real_op) && bad.is_none(), || {
                        format!("{op:?} of {sa}: {t} {}", bad.clone().unwrap_or_default())
                    });
                    mirror.case(shadow(&t) == real_op, || format!("{op:?} of {sa}"));
                }
                Err(e) => topo_t.case(false, || format!("{op:?} of {sa}: {e}")),
            }
        }

        let open = ps.iter().all(|&t| a.has(t) == a.interior(t));
        let closed = ps.iter().all(|&t| a.has(t) == a.closure(t));
        let compact = closed && bounded(&a);
        let connected = contiguous(&a, &ps);
        let got = (is_open(&ma), is_closed(&ma), is_compact(&ma), is_connected(&ma));
        preds.case(got == (Ok(open), Ok(closed), Ok(compact), Ok(connected)), || {
            format!("{sa}: got {got:?}, want ({open}, {closed}, {compact}, {connected})")
        });
        if !g.is_monadic() {
            let bad_ops = [TopoOp::Interior, TopoOp::Closure]
                .iter()
                .any(|op| topo(*op, &g) != Err(Error::NotMonadic));
            not_monadic.case(!bad_ops && is_open(&g) == Err(Error::NotMonadic), || format!("{g}"));
        }
    }

    let mut checks = vec![
        base.finish(),
        shadow_t.finish(),
        extras.finish(),
        inj.finish(),
        ops.finish(),
        shadow_ops.finish(),
        family.finish(),
        topo_t.finish(),
        mirror.finish(),
        preds.finish(),
        not_monadic.finish(),
    ];
    checks.extend(hat_intervals(rng));
    checks
}

fn hat_oracle(kind: HatKind, lo: f64, hi: f64, t: f64) -> bool {
    match kind {
        HatKind::Closed => lo <= t && t <= hi,
        HatKind::Open => lo < t && t < hi,
        HatKind::HalfLo => lo < t && t <= hi,
        HatKind::HalfHi => lo <= t && t < hi,
        HatKind::ClosedRayUp => lo <= t,
        HatKind::OpenRayUp => lo < t,
        HatKind::ClosedRayDown => t <= hi,
        HatKind::OpenRayDown => t < hi,
        HatKind::Whole => true,
    }
}

fn hat_intervals(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut mon = Tally::new("hat-intervals are monads of the real intervals");
    let mut empty = Tally::new("open and half-open hat-intervals are empty iff a = b");
    let mut degen = Tally::new("[a, a]-hat is the monad of a");
    let mut distinct = Tally::new("bounded hat-interval kinds are pairwise distinct when a < b");
    let mut conn = Tally::new("hat-intervals are connected");
    let mut len = Tally::new("length is b - a, undefined for rays");
    let mut meet = Tally::new("[a, b]-hat meets [b, c]-hat in the monad of b");
    let mut order = Tally::new("endpoints out of order are refused");

    for _ in 0..200 {
        let a = f64::from(rng.random_range(-20..=20)) / 4.0;
        let b = if rng.random_range(0..4) == 0 {
            a
        } else {
            a + f64::from(rng.random_range(1..=20)) / 4.0
        };
        let ps: Vec<f64> = [a, b]
            .iter()
            .flat_map(|&e| [e - DELTA, e, e + DELTA])
            .chain([a / 2.0 + b / 2.0, -FAR, FAR])
            .collect();
        let mut bounded_sets = Vec::new();
        for kind in HatKind::ALL {
            let g = match hat_interval(kind, a, b) {
                Ok(g) => g,
                Err(e) => {
                    mon.case(false, || format!("{kind:?} {a} {b}: {e}"));
                    continue;
                }
            };
            let bad = monadic_agrees(&g, &ps, |t| hat_oracle(kind, a, b, t));
            let real_int = HatInterval::new(kind, a, b).expect("valid").real_interval();
            mon.case(bad.is_none() && g == monad(&real_int), || {
                format!("{kind:?} [{a}, {b}]: {}", bad.clone().unwrap_or_default())
            });
            conn.case(is_connected(&g) == Ok(true), || format!("{kind:?} [{a}, {b}]"));
            if kind.is_bounded() {
                let l = HatInterval::new(kind, a, b).and_then(|h| h.length());
                let ok = l == Ok(b - a) && (g.is_empty() || length(&g) == Ok(b - a));
                len.case(ok, || format!("{kind:?} [{a}, {b}]: {l:?}"));
                if kind != HatKind::Closed {
                    empty.case(g.is_empty() == (a == b), || format!("{kind:?} [{a}, {b}]"));
                }
                bounded_sets.push(g);
            } else {
                let l = HatInterval::new(kind, a, b).and_then(|h| h.length());
                len.case(matches!(l, Err(Error::LengthUndefined(_))), || format!("{kind:?}: {l:?}"));
                len.case(matches!(length(&g), Err(Error::LengthUndefined(_))), || format!("{kind:?} set"));
            }
        }
        if a == b {
            let g = hat_interval(HatKind::Closed, a, a);
            degen.case(g == Ok(monad(&RealSet::point(a))) && length(&monad(&RealSet::point(a))) == Ok(0.0), || {
                format!("[{a}, {a}]")
            });
        } else {
            let mut ok = true;
            for i in 0..bounded_sets.len() {
                for j in i + 1..bounded_sets.len() {
                    ok &= bounded_sets[i] != bounded_sets[j];
                }
            }
            distinct.case(ok, || format!("[{a}, {b}]"));
            let c = b + f64::from(rng.random_range(1..=8)) / 4.0;
            let m = hat_interval(HatKind::Closed, a, b)
                .and_then(|l| Ok(l.intersect(&hat_interval(HatKind::Closed, b, c)?)));
            meet.case(m == Ok(monad(&RealSet::point(b))), || format!("[{a}, {b}] and [{b}, {c}]"));
            let bad = hat_interval(HatKind::Closed, b, a);
            order.case(matches!(bad, Err(Error::Domain(_))), || format!("[{b}, {a}]: {bad:?}"));
        }
    }
    vec![
        mon.finish(),
        empty.finish(),
        degen.finish(),
        distinct.finish(),
        conn.finish(),
        len.finish(),
        meet.finish(),
        order.finish(),
    ]
}

pub(super) fn completeness(rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut sup_t = Tally::new("sup_r(monad(S)) = sup S, exactly");
    let mut inf_t = Tally::new("inf_r(monad(S)) = inf S, exactly");
    let mut ub = Tally::new("L is an upper bound iff sigma L >= sup S");
    let mut attained = Tally::new("max_r and min_r exist iff the bound lies in S");
    let mut errors = Tally::new("empty or unbounded sets have no real supremum");

    let mut n = 0;
    while n < 200 {
        let raw = Raw(gen::raw_intervals(rng, false));
        if raw.0.is_empty() {
            continue;
        }
        n += 1;
        let s = raw.set();
        let g = monad(&s);
        let top = raw.0.iter().map(|i| i.hi).fold(f64::NEG_INFINITY, f64::max);
        let bottom = raw.0.iter().map(|i| i.lo).fold(f64::INFINITY, f64::min);
        let got = sup_r(&g);
        sup_t.case(got == Ok(top), || format!("{s}: {got:?}, want {top}"));
        let got = inf_r(&g);
        inf_t.case(got == Ok(bottom), || format!("{s}: {got:?}, want {bottom}"));

        for l in [
            gen::real(rng),
            gen::nonreal_at(rng, top),
            beside(top, -1.0),
            real(top - DELTA),
        ] {
            let want = l.sigma() >= top;
            ub.case(is_upper_bound(&l, &g) == want, || format!("{l} for {s}"));
            let want = l.sigma() <= bottom;
            let lb = l.clone() - real(top - bottom);
            let want_lb = lb.sigma() <= bottom;
            ub.case(is_lower_bound(&lb, &g) == want_lb && (is_lower_bound(&l, &g) == want), || {
                format!("{lb} for {s}")
            });
        }

        let top_in = raw.0.iter().any(|i| i.hi == top && i.hi_closed);
        let bottom_in = raw.0.iter().any(|i| i.lo == bottom && i.lo_closed);
        let (mx, mn) = (max_r(&g), min_r(&g));
        let ok = match (top_in, &mx) {
            (true, Ok(v)) => *v == top,
            (false, Err(Error::NotAttained(_))) => true,
            _ => false,
        } && match (bottom_in, &mn) {
            (true, Ok(v)) => *v == bottom,
            (false, Err(Error::NotAttained(_))) => true,
            _ => false,
        };
        attained.case(ok, || format!("{s}: max {mx:?}, min {mn:?}"));

        let up = monad(&s.union(&RealSet::interval(top, f64::INFINITY, true, false).expect("ray")));
        errors.case(matches!(sup_r(&up), Err(Error::Unbounded)) && inf_r(&up) == Ok(bottom), || {
            format!("{}", shadow(&up))
        });
    }
    errors.case(
        matches!(sup_r(&GeneralizedSet::empty()), Err(Error::EmptySet))
            && matches!(inf_r(&GeneralizedSet::empty()), Err(Error::EmptySet)),
        || "empty set".into(),
    );
    vec![sup_t.finish(), inf_t.finish(), ub.finish(), attained.finish(), errors.finish()]
}
