//! Subsets of the reals (finite unions of intervals and points), their
//! monads in the generalized continuum, topology of the standard line,
//! hat-intervals and their lengths, and real suprema.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::GeneralizedReal;

/// A real interval. Infinite endpoints are never closed; a point is the
/// degenerate closed interval `[p, p]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    /// `None` when the interval is empty.
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Option<Self>> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::NonFiniteInput(f64::NAN));
        }
        if lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Ok(None);
        }
        let lo_closed = lo_closed && lo.is_finite();
        let hi_closed = hi_closed && hi.is_finite();
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return Ok(None);
        }
        Ok(Some(Interval {
            lo: lo + 0.0,
            hi: hi + 0.0,
            lo_closed,
            hi_closed,
        }))
    }

    pub fn point(p: f64) -> Self {
        Interval {
            lo: p + 0.0,
            hi: p + 0.0,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    // Open gap `]a, b[` with `a < b` lies inside this interval.
    fn covers_gap(&self, a: f64, b: f64) -> bool {
        self.lo <= a && self.hi >= b
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        let l = if self.lo_closed { '[' } else { ']' };
        let r = if self.hi_closed { ']' } else { '[' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// A finite union of pairwise disjoint, non-touching real intervals,
/// sorted by position. Points are stored as degenerate intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RealSet {
    parts: Vec<Interval>,
}

// Pieces of the line cut at breakpoints p_1 < ... < p_n:
// gap_0 = ]-inf, p_1[, {p_1}, gap_1 = ]p_1, p_2[, ..., gap_n = ]p_n, +inf[.
struct Pieces {
    points: Vec<f64>,
}

impl Pieces {
    fn of(sets: &[&RealSet]) -> Self {
        let mut points: Vec<f64> = sets
            .iter()
            .flat_map(|s| s.parts.iter().flat_map(|i| [i.lo, i.hi]))
            .filter(|p| p.is_finite())
            .collect();
        points.sort_by(f64::total_cmp);
        points.dedup();
        Pieces { points }
    }

    fn gap(&self, i: usize) -> (f64, f64) {
        let a = if i == 0 { f64::NEG_INFINITY } else { self.points[i - 1] };
        let b = self.points.get(i).copied().unwrap_or(f64::INFINITY);
        (a, b)
    }

    fn gaps_in(&self, s: &RealSet) -> Vec<bool> {
        (0..=self.points.len())
            .map(|i| {
                let (a, b) = self.gap(i);
                s.parts.iter().any(|iv| iv.covers_gap(a, b))
            })
            .collect()
    }

    fn points_in(&self, s: &RealSet) -> Vec<bool> {
        self.points.iter().map(|&p| s.contains(p)).collect()
    }

    fn build(&self, gaps: &[bool], points: &[bool]) -> RealSet {
        let mut parts = Vec::new();
        for i in 0..=self.points.len() {
            if gaps[i] {
                let (a, b) = self.gap(i);
                push_merged(&mut parts, Interval { lo: a, hi: b, lo_closed: false, hi_closed: false });
            }
            if i < self.points.len() && points[i] {
                push_merged(&mut parts, Interval::point(self.points[i]));
            }
        }
        RealSet { parts }
    }
}

// Appends a piece that lies to the right of everything already present.
fn push_merged(parts: &mut Vec<Interval>, next: Interval) {
    if let Some(last) = parts.last_mut() {
        if last.hi == next.lo && (last.hi_closed || next.lo_closed) {
            last.hi = next.hi;
            last.hi_closed = next.hi_closed;
            return;
        }
    }
    parts.push(next);
}

impl RealSet {
    pub fn empty() -> Self {
        RealSet::default()
    }

    pub fn whole() -> Self {
        RealSet {
            parts: vec![Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
                lo_closed: false,
                hi_closed: false,
            }],
        }
    }

    /// Normalizing union of arbitrary intervals.
    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> Self {
        let raw = RealSet {
            parts: intervals.into_iter().collect(),
        };
        let pieces = Pieces::of(&[&raw]);
        pieces.build(&pieces.gaps_in(&raw), &pieces.points_in(&raw))
    }

    pub fn interval(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        Ok(RealSet {
            parts: Interval::new(lo, hi, lo_closed, hi_closed)?.into_iter().collect(),
        })
    }

    /// `[a, b]`.
    pub fn closed(a: f64, b: f64) -> Self {
        RealSet::interval(a, b, true, true).expect("non-NaN endpoints")
    }

    /// `]a, b[`.
    pub fn open(a: f64, b: f64) -> Self {
        RealSet::interval(a, b, false, false).expect("non-NaN endpoints")
    }

    pub fn point(p: f64) -> Self {
        RealSet {
            parts: vec![Interval::point(p)],
        }
    }

    pub fn points(ps: &[f64]) -> Self {
        RealSet::from_intervals(ps.iter().map(|&p| Interval::point(p)))
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    /// Non-degenerate intervals.
    pub fn intervals(&self) -> Vec<Interval> {
        self.parts.iter().filter(|i| !i.is_point()).copied().collect()
    }

    /// Isolated points.
    pub fn isolated_points(&self) -> Vec<f64> {
        self.parts.iter().filter(|i| i.is_point()).map(|i| i.lo).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.parts.iter().any(|i| i.contains(x))
    }

    fn combine(&self, other: &RealSet, op: impl Fn(bool, bool) -> bool) -> RealSet {
        let pieces = Pieces::of(&[self, other]);
        let (ga, gb) = (pieces.gaps_in(self), pieces.gaps_in(other));
        let (pa, pb) = (pieces.points_in(self), pieces.points_in(other));
        let gaps: Vec<bool> = ga.iter().zip(&gb).map(|(&a, &b)| op(a, b)).collect();
        let points: Vec<bool> = pa.iter().zip(&pb).map(|(&a, &b)| op(a, b)).collect();
        pieces.build(&gaps, &points)
    }

    pub fn union(&self, other: &RealSet) -> RealSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &RealSet) -> RealSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &RealSet) -> RealSet {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> RealSet {
        RealSet::whole().difference(self)
    }

    fn own_pieces(&self) -> (Pieces, Vec<bool>, Vec<bool>) {
        let pieces = Pieces::of(&[self]);
        let gaps = pieces.gaps_in(self);
        let points = pieces.points_in(self);
        (pieces, gaps, points)
    }

    pub fn interior(&self) -> RealSet {
        let (pieces, gaps, points) = self.own_pieces();
        let points: Vec<bool> = (0..points.len())
            .map(|i| points[i] && gaps[i] && gaps[i + 1])
            .collect();
        pieces.build(&gaps, &points)
    }

    pub fn closure(&self) -> RealSet {
        let (pieces, gaps, points) = self.own_pieces();
        let points: Vec<bool> = (0..points.len())
            .map(|i| points[i] || gaps[i] || gaps[i + 1])
            .collect();
        pieces.build(&gaps, &points)
    }

    pub fn boundary(&self) -> RealSet {
        self.closure().difference(&self.interior())
    }

    pub fn exterior(&self) -> RealSet {
        self.closure().complement()
    }

    pub fn is_open(&self) -> bool {
        self.interior() == *self
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    pub fn is_bounded(&self) -> bool {
        self.parts
            .iter()
            .all(|i| i.lo.is_finite() && i.hi.is_finite())
    }

    pub fn is_compact(&self) -> bool {
        self.is_closed() && self.is_bounded()
    }

    /// Empty or a single interval.
    pub fn is_connected(&self) -> bool {
        self.parts.len() <= 1
    }

    pub fn sup(&self) -> Result<f64> {
        let last = self.parts.last().ok_or(Error::EmptySet)?;
        if last.hi.is_finite() {
            Ok(last.hi)
        } else {
            Err(Error::Unbounded)
        }
    }

    pub fn inf(&self) -> Result<f64> {
        let first = self.parts.first().ok_or(Error::EmptySet)?;
        if first.lo.is_finite() {
            Ok(first.lo)
        } else {
            Err(Error::Unbounded)
        }
    }
}

impl fmt::Display for RealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        for (k, i) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, " u ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A subset of the generalized continuum of the form `m(M) u R'` where
/// nonreal members are exactly those whose shadow lies in `M` and real
/// members are exactly the reals in `R`.
///
/// A monad `m(S)` has `M = R = S`. Extra reals are `R \ M`; holes are
/// reals of `M` removed by a set difference, `M \ R`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GeneralizedSet {
    base: RealSet,
    reals: RealSet,
}

impl GeneralizedSet {
    pub fn empty() -> Self {
        GeneralizedSet::default()
    }

    /// `base` as a monad, plus `extras`, minus the real points in `holes`.
    pub fn new(base: RealSet, extras: &RealSet, holes: &RealSet) -> Self {
        let reals = base.union(extras).difference(holes);
        GeneralizedSet { base, reals }
    }

    pub fn base(&self) -> &RealSet {
        &self.base
    }

    /// The set of reals belonging to this set.
    pub fn reals(&self) -> &RealSet {
        &self.reals
    }

    pub fn extra_reals(&self) -> RealSet {
        self.reals.difference(&self.base)
    }

    pub fn holes(&self) -> RealSet {
        self.base.difference(&self.reals)
    }

    pub fn is_monadic(&self) -> bool {
        self.base == self.reals
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty() && self.reals.is_empty()
    }

    pub fn union(&self, other: &GeneralizedSet) -> GeneralizedSet {
        GeneralizedSet {
            base: self.base.union(&other.base),
            reals: self.reals.union(&other.reals),
        }
    }

    pub fn intersect(&self, other: &GeneralizedSet) -> GeneralizedSet {
        GeneralizedSet {
            base: self.base.intersect(&other.base),
            reals: self.reals.intersect(&other.reals),
        }
    }

    pub fn difference(&self, other: &GeneralizedSet) -> GeneralizedSet {
        GeneralizedSet {
            base: self.base.difference(&other.base),
            reals: self.reals.difference(&other.reals),
        }
    }
}

/// `m(S) = { x | sigma x in S }`.
pub fn monad(s: &RealSet) -> GeneralizedSet {
    GeneralizedSet {
        base: s.clone(),
        reals: s.clone(),
    }
}

/// `{ sigma x | x in G }`.
pub fn shadow(g: &GeneralizedSet) -> RealSet {
    g.base.union(&g.reals)
}

pub fn member(x: &GeneralizedReal, g: &GeneralizedSet) -> bool {
    if x.is_real() {
        g.reals.contains(x.sigma())
    } else {
        g.base.contains(x.sigma())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopoOp {
    Interior,
    Exterior,
    Boundary,
    Closure,
}

/// A topology operator of the monad topology, computed on the base.
pub fn topo(op: TopoOp, g: &GeneralizedSet) -> Result<GeneralizedSet> {
    let b = monadic_base(g)?;
    let out = match op {
        TopoOp::Interior => b.interior(),
        TopoOp::Exterior => b.exterior(),
        TopoOp::Boundary => b.boundary(),
        TopoOp::Closure => b.closure(),
    };
    Ok(monad(&out))
}

fn monadic_base(g: &GeneralizedSet) -> Result<&RealSet> {
    if g.is_monadic() {
        Ok(&g.base)
    } else {
        Err(Error::NotMonadic)
    }
}

pub fn is_open(g: &GeneralizedSet) -> Result<bool> {
    monadic_base(g).map(RealSet::is_open)
}

pub fn is_closed(g: &GeneralizedSet) -> Result<bool> {
    monadic_base(g).map(RealSet::is_closed)
}

pub fn is_compact(g: &GeneralizedSet) -> Result<bool> {
    monadic_base(g).map(RealSet::is_compact)
}

pub fn is_connected(g: &GeneralizedSet) -> Result<bool> {
    monadic_base(g).map(RealSet::is_connected)
}

/// Real supremum: the shadow of every least upper bound.
pub fn sup_r(g: &GeneralizedSet) -> Result<f64> {
    shadow(g).sup()
}

pub fn inf_r(g: &GeneralizedSet) -> Result<f64> {
    shadow(g).inf()
}

pub fn max_r(g: &GeneralizedSet) -> Result<f64> {
    let s = sup_r(g)?;
    if shadow(g).contains(s) {
        Ok(s)
    } else {
        Err(Error::NotAttained(format!("supremum {s} is not attained")))
    }
}

pub fn min_r(g: &GeneralizedSet) -> Result<f64> {
    let s = inf_r(g)?;
    if shadow(g).contains(s) {
        Ok(s)
    } else {
        Err(Error::NotAttained(format!("infimum {s} is not attained")))
    }
}

/// `x <~ L` for every member `x`.
pub fn is_upper_bound(l: &GeneralizedReal, g: &GeneralizedSet) -> bool {
    match sup_r(g) {
        Ok(s) => l.sigma() >= s,
        Err(Error::EmptySet) => true,
        Err(_) => false,
    }
}

pub fn is_lower_bound(l: &GeneralizedReal, g: &GeneralizedSet) -> bool {
    match inf_r(g) {
        Ok(s) => l.sigma() <= s,
        Err(Error::EmptySet) => true,
        Err(_) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HatKind {
    /// `[a, b]`
    Closed,
    /// `]a, b[`
    Open,
    /// `]a, b]`
    HalfLo,
    /// `[a, b[`
    HalfHi,
    /// `[a, +inf[`
    ClosedRayUp,
    /// `]a, +inf[`
    OpenRayUp,
    /// `]-inf, b]`
    ClosedRayDown,
    /// `]-inf, b[`
    OpenRayDown,
    Whole,
}

impl HatKind {
    pub const ALL: [HatKind; 9] = [
        HatKind::Closed,
        HatKind::Open,
        HatKind::HalfLo,
        HatKind::HalfHi,
        HatKind::ClosedRayUp,
        HatKind::OpenRayUp,
        HatKind::ClosedRayDown,
        HatKind::OpenRayDown,
        HatKind::Whole,
    ];

    pub fn is_bounded(self) -> bool {
        matches!(self, HatKind::Closed | HatKind::Open | HatKind::HalfLo | HatKind::HalfHi)
    }
}

/// An interval of the generalized continuum, given by its kind and real
/// endpoints. Rays use `lo` (upward) or `hi` (downward) only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HatInterval {
    pub kind: HatKind,
    pub lo: f64,
    pub hi: f64,
}

impl HatInterval {
    pub fn new(kind: HatKind, lo: f64, hi: f64) -> Result<Self> {
        if kind.is_bounded() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::NonFiniteInput(if lo.is_finite() { hi } else { lo }));
            }
            if lo > hi {
                return Err(Error::Domain(format!("interval endpoints out of order: {lo} > {hi}")));
            }
        }
        Ok(HatInterval { kind, lo, hi })
    }

    pub fn real_interval(&self) -> RealSet {
        let (lo, hi) = (self.lo, self.hi);
        let (ninf, pinf) = (f64::NEG_INFINITY, f64::INFINITY);
        let r = match self.kind {
            HatKind::Closed => RealSet::interval(lo, hi, true, true),
            HatKind::Open => RealSet::interval(lo, hi, false, false),
            HatKind::HalfLo => RealSet::interval(lo, hi, false, true),
            HatKind::HalfHi => RealSet::interval(lo, hi, true, false),
            HatKind::ClosedRayUp => RealSet::interval(lo, pinf, true, false),
            HatKind::OpenRayUp => RealSet::interval(lo, pinf, false, false),
            HatKind::ClosedRayDown => RealSet::interval(ninf, hi, false, true),
            HatKind::OpenRayDown => RealSet::interval(ninf, hi, false, false),
            HatKind::Whole => Ok(RealSet::whole()),
        };
        r.unwrap_or_default()
    }

    pub fn to_set(&self) -> GeneralizedSet {
        monad(&self.real_interval())
    }

    /// `b - a` for bounded kinds, including degenerate empty ones.
    pub fn length(&self) -> Result<f64> {
        if self.kind.is_bounded() {
            Ok(self.hi - self.lo)
        } else {
            Err(Error::LengthUndefined("unbounded interval".into()))
        }
    }
}

pub fn hat_interval(kind: HatKind, lo: f64, hi: f64) -> Result<GeneralizedSet> {
    Ok(HatInterval::new(kind, lo, hi)?.to_set())
}

/// Length of a set that is a bounded hat-interval. The empty set has
/// length 0.
pub fn length(g: &GeneralizedSet) -> Result<f64> {
    let b = monadic_base(g).map_err(|_| Error::LengthUndefined("not an interval".into()))?;
    match b.parts() {
        [] => Ok(0.0),
        [i] if i.lo.is_finite() && i.hi.is_finite() => Ok(i.hi - i.lo),
        [_] => Err(Error::LengthUndefined("unbounded interval".into())),
        _ => Err(Error::LengthUndefined("not an interval".into())),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireBound {
    Num(f64),
    Inf(String),
}

#[derive(Serialize, Deserialize)]
struct WireInterval {
    lo: WireBound,
    hi: WireBound,
    #[serde(default)]
    lo_closed: bool,
    #[serde(default)]
    hi_closed: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireItem {
    Point(f64),
    Interval(WireInterval),
}

#[derive(Serialize, Deserialize, Default)]
struct WireSet {
    #[serde(default)]
    intervals: Vec<WireInterval>,
    #[serde(default)]
    points: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    extras: Option<Vec<WireItem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    holes: Option<Vec<WireItem>>,
}

fn bound_to_wire(v: f64) -> WireBound {
    if v == f64::INFINITY {
        WireBound::Inf("+inf".into())
    } else if v == f64::NEG_INFINITY {
        WireBound::Inf("-inf".into())
    } else {
        WireBound::Num(v)
    }
}

fn bound_from_wire(b: &WireBound) -> Result<f64> {
    match b {
        WireBound::Num(v) => Ok(*v),
        WireBound::Inf(s) => match s.as_str() {
            "+inf" | "inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            other => Err(Error::Parse(format!("bad interval bound `{other}`"))),
        },
    }
}

fn interval_to_wire(i: &Interval) -> WireInterval {
    WireInterval {
        lo: bound_to_wire(i.lo),
        hi: bound_to_wire(i.hi),
        lo_closed: i.lo_closed,
        hi_closed: i.hi_closed,
    }
}

fn interval_from_wire(w: &WireInterval) -> Result<Option<Interval>> {
    Interval::new(bound_from_wire(&w.lo)?, bound_from_wire(&w.hi)?, w.lo_closed, w.hi_closed)
}

fn check_point(p: f64) -> Result<Interval> {
    if p.is_finite() {
        Ok(Interval::point(p))
    } else {
        Err(Error::NonFiniteInput(p))
    }
}

fn set_from_wire(intervals: &[WireInterval], points: &[f64]) -> Result<RealSet> {
    let mut parts = Vec::new();
    for w in intervals {
        parts.extend(interval_from_wire(w)?);
    }
    for &p in points {
        parts.push(check_point(p)?);
    }
    Ok(RealSet::from_intervals(parts))
}

fn items_from_wire(items: &[WireItem]) -> Result<RealSet> {
    let mut parts = Vec::new();
    for item in items {
        match item {
            WireItem::Point(p) => parts.push(check_point(*p)?),
            WireItem::Interval(w) => parts.extend(interval_from_wire(w)?),
        }
    }
    Ok(RealSet::from_intervals(parts))
}

fn items_to_wire(s: &RealSet) -> Vec<WireItem> {
    s.parts()
        .iter()
        .map(|i| {
            if i.is_point() {
                WireItem::Point(i.lo)
            } else {
                WireItem::Interval(interval_to_wire(i))
            }
        })
        .collect()
}

fn real_set_to_wire(s: &RealSet) -> WireSet {
    WireSet {
        intervals: s.intervals().iter().map(interval_to_wire).collect(),
        points: s.isolated_points(),
        ..WireSet::default()
    }
}

fn parse_wire(text: &str) -> Result<WireSet> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

impl RealSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&real_set_to_wire(self)).expect("set encoding is infallible")
    }

    /// Reads `{"intervals": [...], "points": [...]}`; extras are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let w = parse_wire(text)?;
        if w.extras.is_some() || w.holes.is_some() {
            return Err(Error::Parse("a real set has no extras or holes".into()));
        }
        set_from_wire(&w.intervals, &w.points)
    }
}

impl GeneralizedSet {
    pub fn to_json(&self) -> String {
        let mut w = real_set_to_wire(&self.base);
        let extras = self.extra_reals();
        let holes = self.holes();
        w.extras = Some(items_to_wire(&extras));
        if !holes.is_empty() {
            w.holes = Some(items_to_wire(&holes));
        }
        serde_json::to_string(&w).expect("set encoding is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let w = parse_wire(text)?;
        let base = set_from_wire(&w.intervals, &w.points)?;
        let extras = items_from_wire(w.extras.as_deref().unwrap_or(&[]))?;
        let holes = items_from_wire(w.holes.as_deref().unwrap_or(&[]))?;
        Ok(GeneralizedSet::new(base, &extras, &holes))
    }
}

impl fmt::Display for GeneralizedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m({})", self.base)?;
        let extras = self.extra_reals();
        if !extras.is_empty() {
            write!(f, " + {extras}")?;
        }
        let holes = self.holes();
        if !holes.is_empty() {
            write!(f, " - {holes}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::Generator;

    fn gr(shadow: f64, e1: f64) -> GeneralizedReal {
        GeneralizedReal::make(shadow, [(Generator::Impulse(1), e1)]).unwrap()
    }

    fn iv(lo: f64, hi: f64, lc: bool, hc: bool) -> Interval {
        Interval::new(lo, hi, lc, hc).unwrap().unwrap()
    }

    #[test]
    fn normalization() {
        let s = RealSet::from_intervals([iv(2.0, 3.0, true, true), iv(0.0, 1.0, true, true), iv(1.0, 2.0, false, false)]);
        assert_eq!(s, RealSet::closed(0.0, 3.0));
        let t = RealSet::open(0.0, 1.0).union(&RealSet::open(1.0, 2.0));
        assert_eq!(t.parts().len(), 2);
        assert!(!t.contains(1.0));
        assert_eq!(RealSet::closed(0.0, 1.0).union(&RealSet::closed(1.0, 2.0)), RealSet::closed(0.0, 2.0));
        assert!(RealSet::open(1.0, 1.0).is_empty());
        assert_eq!(RealSet::points(&[3.0, 1.0, 3.0]).isolated_points(), vec![1.0, 3.0]);
        let u = RealSet::closed(0.0, 2.0).union(&RealSet::point(1.0));
        assert_eq!(u, RealSet::closed(0.0, 2.0));
    }

    #[test]
    fn boolean_ops() {
        let a = RealSet::closed(0.0, 2.0);
        let b = RealSet::closed(1.0, 3.0);
        assert_eq!(a.intersect(&b), RealSet::closed(1.0, 2.0));
        assert_eq!(a.difference(&b), RealSet::interval(0.0, 1.0, true, false).unwrap());
        assert_eq!(a.union(&b), RealSet::closed(0.0, 3.0));
        let c = RealSet::closed(0.0, 1.0).intersect(&RealSet::closed(1.0, 2.0));
        assert_eq!(c, RealSet::point(1.0));
        assert_eq!(a.complement().complement(), a);
        assert_eq!(RealSet::empty().complement(), RealSet::whole());
    }

    #[test]
    fn topology() {
        let s = RealSet::closed(0.0, 1.0).union(&RealSet::point(2.0));
        assert_eq!(s.interior(), RealSet::open(0.0, 1.0));
        assert_eq!(s.closure(), s);
        assert_eq!(s.boundary(), RealSet::points(&[0.0, 1.0, 2.0]));
        let ext = s.exterior();
        assert!(ext.contains(1.5) && !ext.contains(2.0) && ext.contains(-5.0));
        assert!(RealSet::open(0.0, 1.0).is_open());
        assert!(!RealSet::open(0.0, 1.0).is_closed());
        assert!(RealSet::whole().is_open() && RealSet::whole().is_closed());
        assert!(!RealSet::whole().is_compact());
        assert!(RealSet::closed(0.0, 1.0).is_compact());
        let punctured = RealSet::closed(0.0, 2.0).difference(&RealSet::point(1.0));
        assert_eq!(punctured.closure(), RealSet::closed(0.0, 2.0));
        assert_eq!(punctured.interior(), RealSet::open(0.0, 1.0).union(&RealSet::open(1.0, 2.0)));
    }

    #[test]
    fn monad_and_shadow() {
        assert!(monad(&RealSet::empty()).is_empty());
        let s = RealSet::closed(0.0, 1.0);
        assert_eq!(shadow(&monad(&s)), s);
        let g = monad(&s);
        assert_eq!(monad(&shadow(&g)), g);
        assert!(member(&gr(0.5, 1.0), &g));
        assert!(member(&gr(0.0, 1.0), &monad(&RealSet::point(0.0))));
        let with2 = g.union(&GeneralizedSet::new(RealSet::empty(), &RealSet::point(2.0), &RealSet::empty()));
        assert!(member(&gr(1.0, 1.0), &with2));
        assert!(!member(&gr(2.0, 1.0), &with2));
        assert!(member(&gr(2.0, 0.0), &with2));
        assert!(!with2.is_monadic());
        assert_eq!(shadow(&with2), s.union(&RealSet::point(2.0)));
    }

    #[test]
    fn monad_ops() {
        let a = monad(&RealSet::closed(0.0, 1.0));
        let b = monad(&RealSet::closed(2.0, 3.0));
        assert_eq!(a.union(&b), monad(&RealSet::closed(0.0, 1.0).union(&RealSet::closed(2.0, 3.0))));
        let (al, be, ga) = (-1.0, 0.5, 4.0);
        let x = monad(&RealSet::closed(al, be)).intersect(&monad(&RealSet::closed(be, ga)));
        assert_eq!(x, monad(&RealSet::point(be)));
        let d = monad(&RealSet::closed(0.0, 2.0)).difference(&monad(&RealSet::closed(1.0, 3.0)));
        assert_eq!(d, monad(&RealSet::interval(0.0, 1.0, true, false).unwrap()));
    }

    #[test]
    fn holes_from_difference() {
        let g = monad(&RealSet::closed(0.0, 1.0));
        let only_half = GeneralizedSet::new(RealSet::empty(), &RealSet::point(0.5), &RealSet::empty());
        let d = g.difference(&only_half);
        assert!(!member(&gr(0.5, 0.0), &d));
        assert!(member(&gr(0.5, 1.0), &d));
        assert_eq!(d.holes(), RealSet::point(0.5));
        assert_eq!(GeneralizedSet::from_json(&d.to_json()).unwrap(), d);
        assert_eq!(d.union(&only_half), g);
    }

    #[test]
    fn topology_on_monads() {
        let g = monad(&RealSet::closed(0.0, 1.0));
        assert_eq!(topo(TopoOp::Interior, &g).unwrap(), monad(&RealSet::open(0.0, 1.0)));
        assert!(is_compact(&g).unwrap());
        assert!(!is_compact(&monad(&RealSet::open(0.0, 1.0))).unwrap());
        let two = monad(&RealSet::closed(0.0, 1.0).union(&RealSet::closed(2.0, 3.0)));
        assert!(!is_connected(&two).unwrap());
        let extra = GeneralizedSet::new(RealSet::empty(), &RealSet::point(5.0), &RealSet::empty());
        assert_eq!(topo(TopoOp::Closure, &extra), Err(Error::NotMonadic));
    }

    #[test]
    fn suprema() {
        let g = monad(&RealSet::open(0.0, 1.0));
        assert_eq!(sup_r(&g).unwrap(), 1.0);
        assert_eq!(inf_r(&g).unwrap(), 0.0);
        assert!(is_upper_bound(&gr(1.0, 1.0), &g));
        assert!(is_upper_bound(&gr(1.0, -1.0), &g));
        assert!(!is_upper_bound(&gr(0.9, 0.0), &g));
        assert!(matches!(max_r(&g), Err(Error::NotAttained(_))));
        assert_eq!(max_r(&monad(&RealSet::closed(0.0, 1.0))).unwrap(), 1.0);
        assert_eq!(min_r(&monad(&RealSet::closed(0.0, 1.0))).unwrap(), 0.0);
        assert_eq!(sup_r(&GeneralizedSet::empty()), Err(Error::EmptySet));
        assert_eq!(sup_r(&hat_interval(HatKind::OpenRayUp, 0.0, 0.0).unwrap()), Err(Error::Unbounded));
    }

    #[test]
    fn hat_intervals() {
        let a = 2.5;
        assert_eq!(hat_interval(HatKind::Closed, a, a).unwrap(), monad(&RealSet::point(a)));
        assert_eq!(HatInterval::new(HatKind::Closed, a, a).unwrap().length().unwrap(), 0.0);
        for k in [HatKind::Open, HatKind::HalfLo, HatKind::HalfHi] {
            assert!(hat_interval(k, a, a).unwrap().is_empty());
            assert_eq!(HatInterval::new(k, a, a).unwrap().length().unwrap(), 0.0);
        }
        assert_eq!(HatInterval::new(HatKind::HalfHi, 1.0, 4.0).unwrap().length().unwrap(), 3.0);
        assert_eq!(length(&hat_interval(HatKind::HalfHi, 1.0, 4.0).unwrap()).unwrap(), 3.0);
        assert!(matches!(hat_interval(HatKind::Closed, 2.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(
            HatInterval::new(HatKind::ClosedRayUp, 0.0, 0.0).unwrap().length(),
            Err(Error::LengthUndefined(_))
        ));
        let x = hat_interval(HatKind::HalfLo, 0.0, 1.0).unwrap();
        assert!(!member(&gr(0.0, 1.0), &x));
        assert!(member(&gr(1.0, 1.0), &x));
    }

    #[test]
    fn json_round_trip() {
        let s = RealSet::interval(f64::NEG_INFINITY, 0.0, false, true)
            .unwrap()
            .union(&RealSet::point(2.0))
            .union(&RealSet::open(3.0, 4.5));
        let text = s.to_json();
        assert_eq!(
            text,
            r#"{"intervals":[{"lo":"-inf","hi":0.0,"lo_closed":false,"hi_closed":true},{"lo":3.0,"hi":4.5,"lo_closed":false,"hi_closed":false}],"points":[2.0]}"#
        );
        assert_eq!(RealSet::from_json(&text).unwrap(), s);
        let g = GeneralizedSet::from_json(r#"{"intervals":[{"lo":-1,"hi":1,"lo_closed":false,"hi_closed":false}],"points":[],"extras":[-1,1]}"#).unwrap();
        assert_eq!(g.extra_reals(), RealSet::points(&[-1.0, 1.0]));
        assert_eq!(GeneralizedSet::from_json(&g.to_json()).unwrap(), g);
        assert!(RealSet::from_json("{\"intervals\": 3}").is_err());
    }
}
