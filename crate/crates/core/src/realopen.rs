//! Finitely generated opens of the real line with exact rational endpoints.
//!
//! An open is a finite union of open intervals. Canonical form keeps the
//! components sorted and merges overlapping ones, but intervals that merely
//! touch at a point stay separate: `(0,1) ∨ (1,2)` is not `(0,2)`, the point
//! `1` is uncovered. Half-lines carry explicit infinity markers distinct
//! from rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use num::{BigRational, One, Signed, Zero};

use crate::error::{CoreError, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Lower {
    NegInf,
    Fin(BigRational),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Upper {
    Fin(BigRational),
    PosInf,
}

impl Lower {
    fn cmp_val(&self, other: &Lower) -> Ordering {
        match (self, other) {
            (Lower::NegInf, Lower::NegInf) => Ordering::Equal,
            (Lower::NegInf, _) => Ordering::Less,
            (_, Lower::NegInf) => Ordering::Greater,
            (Lower::Fin(a), Lower::Fin(b)) => a.cmp(b),
        }
    }
}

impl Upper {
    fn cmp_val(&self, other: &Upper) -> Ordering {
        match (self, other) {
            (Upper::PosInf, Upper::PosInf) => Ordering::Equal,
            (Upper::PosInf, _) => Ordering::Greater,
            (_, Upper::PosInf) => Ordering::Less,
            (Upper::Fin(a), Upper::Fin(b)) => a.cmp(b),
        }
    }
}

/// One open interval, possibly unbounded on either side; always nonempty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Span {
    pub lo: Lower,
    pub hi: Upper,
}

impl Span {
    pub fn new(lo: Lower, hi: Upper) -> Option<Span> {
        let nonempty = match (&lo, &hi) {
            (Lower::Fin(a), Upper::Fin(b)) => a < b,
            _ => true,
        };
        nonempty.then_some(Span { lo, hi })
    }

    pub fn bounded(lo: BigRational, hi: BigRational) -> Option<Span> {
        Span::new(Lower::Fin(lo), Upper::Fin(hi))
    }

    pub fn is_bounded(&self) -> bool {
        matches!((&self.lo, &self.hi), (Lower::Fin(_), Upper::Fin(_)))
    }

    fn lo_lt_hi(lo: &Lower, hi: &Upper) -> bool {
        match (lo, hi) {
            (Lower::Fin(a), Upper::Fin(b)) => a < b,
            _ => true,
        }
    }

    /// Set containment of open intervals.
    pub fn subset_of(&self, other: &Span) -> bool {
        other.lo.cmp_val(&self.lo) != Ordering::Greater
            && self.hi.cmp_val(&other.hi) != Ordering::Greater
    }

    /// Intersection, if nonempty.
    pub fn intersect(&self, other: &Span) -> Option<Span> {
        let lo = if self.lo.cmp_val(&other.lo) == Ordering::Less {
            other.lo.clone()
        } else {
            self.lo.clone()
        };
        let hi = if self.hi.cmp_val(&other.hi) == Ordering::Greater {
            other.hi.clone()
        } else {
            self.hi.clone()
        };
        Span::lo_lt_hi(&lo, &hi).then_some(Span { lo, hi })
    }

    /// Strict overlap (shared interior point).
    pub fn overlaps(&self, other: &Span) -> bool {
        self.intersect(other).is_some()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        let above = match &self.lo {
            Lower::NegInf => true,
            Lower::Fin(a) => a < q,
        };
        let below = match &self.hi {
            Upper::PosInf => true,
            Upper::Fin(b) => q < b,
        };
        above && below
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Lower::NegInf => write!(f, "(-inf, ")?,
            Lower::Fin(a) => write!(f, "({a}, ")?,
        }
        match &self.hi {
            Upper::PosInf => write!(f, "inf)"),
            Upper::Fin(b) => write!(f, "{b})"),
        }
    }
}

/// A finitely generated open of the line: disjoint, sorted spans, with
/// overlapping inputs merged and touching-at-a-point inputs kept apart.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RealOpen {
    spans: Vec<Span>,
}

impl RealOpen {
    pub fn bottom() -> RealOpen {
        RealOpen { spans: Vec::new() }
    }

    pub fn top() -> RealOpen {
        RealOpen {
            spans: vec![Span {
                lo: Lower::NegInf,
                hi: Upper::PosInf,
            }],
        }
    }

    /// A single bounded interval generator; empty input denotes bottom.
    pub fn interval(lo: BigRational, hi: BigRational) -> RealOpen {
        match Span::bounded(lo, hi) {
            Some(s) => RealOpen { spans: vec![s] },
            None => RealOpen::bottom(),
        }
    }

    pub fn from_spans(spans: impl IntoIterator<Item = Span>) -> RealOpen {
        let mut spans: Vec<Span> = spans.into_iter().collect();
        spans.sort_by(|a, b| a.lo.cmp_val(&b.lo).then_with(|| a.hi.cmp_val(&b.hi)));
        let mut out: Vec<Span> = Vec::new();
        for s in spans {
            match out.last_mut() {
                Some(last) if last.overlaps(&s) => {
                    if last.hi.cmp_val(&s.hi) == Ordering::Less {
                        last.hi = s.hi;
                    }
                }
                _ => out.push(s),
            }
        }
        RealOpen { spans: out }
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn is_bottom(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.spans.len() == 1
            && self.spans[0].lo == Lower::NegInf
            && self.spans[0].hi == Upper::PosInf
    }

    pub fn is_bounded(&self) -> bool {
        self.spans.iter().all(Span::is_bounded)
    }

    pub fn join(&self, other: &RealOpen) -> RealOpen {
        RealOpen::from_spans(self.spans.iter().chain(&other.spans).cloned())
    }

    pub fn meet(&self, other: &RealOpen) -> RealOpen {
        RealOpen::from_spans(
            self.spans
                .iter()
                .flat_map(|a| other.spans.iter().filter_map(move |b| a.intersect(b))),
        )
    }

    /// Order in the frame of opens: set containment. Canonical components
    /// are disjoint, so a connected component fits inside a single component
    /// of the other side.
    pub fn leq(&self, other: &RealOpen) -> bool {
        self.spans
            .iter()
            .all(|s| other.spans.iter().any(|t| s.subset_of(t)))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.spans.iter().any(|s| s.contains(q))
    }

    /// A rational inside this open but outside `other`, if one exists.
    ///
    /// Endpoints of both spans provide enough sample points: midpoints of
    /// consecutive boundary values plus points beyond the extremes.
    pub fn witness_not_leq(&self, other: &RealOpen) -> Option<BigRational> {
        let mut cuts: Vec<BigRational> = Vec::new();
        for s in self.spans.iter().chain(&other.spans) {
            if let Lower::Fin(a) = &s.lo {
                cuts.push(a.clone());
            }
            if let Upper::Fin(b) = &s.hi {
                cuts.push(b.clone());
            }
        }
        if cuts.is_empty() {
            cuts.push(BigRational::zero());
        }
        cuts.sort();
        cuts.dedup();
        let one = BigRational::one();
        let two = &one + &one;
        let mut samples = Vec::new();
        samples.push(cuts[0].clone() - &one);
        for w in cuts.windows(2) {
            samples.push((&w[0] + &w[1]) / &two);
        }
        samples.push(cuts[cuts.len() - 1].clone() + &one);
        samples.extend(cuts);
        samples
            .into_iter()
            .find(|q| self.contains(q) && !other.contains(q))
    }

    /// Inflates every component by `margin` on both sides; the star of this
    /// open against the cover of all intervals of width `margin`.
    pub fn inflate(&self, margin: &BigRational) -> RealOpen {
        assert!(margin.is_positive());
        RealOpen::from_spans(self.spans.iter().map(|s| Span {
            lo: match &s.lo {
                Lower::NegInf => Lower::NegInf,
                Lower::Fin(a) => Lower::Fin(a - margin),
            },
            hi: match &s.hi {
                Upper::PosInf => Upper::PosInf,
                Upper::Fin(b) => Upper::Fin(b + margin),
            },
        }))
    }
}

impl fmt::Display for RealOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.spans.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `A ◁ B` for the interval uniformity: some positive-width star of `A`
/// stays inside `B`. Returns the witness width, half the minimal clearance.
///
/// For unbounded `A` the documented convention is that only `B = 1`
/// qualifies.
pub fn real_uniformly_below(a: &RealOpen, b: &RealOpen) -> Option<BigRational> {
    if a.is_bottom() {
        return Some(BigRational::one());
    }
    if !a.is_bounded() {
        return b.is_top().then(BigRational::one);
    }
    // each connected component of a sits inside exactly one component of b
    // (components are disjoint) and needs strictly positive room there
    let mut clearance: Option<BigRational> = None;
    for s in a.spans() {
        let (slo, shi) = match (&s.lo, &s.hi) {
            (Lower::Fin(x), Upper::Fin(y)) => (x, y),
            _ => unreachable!("bounded checked above"),
        };
        let container = b.spans().iter().find(|t| s.subset_of(t))?;
        // None = unbounded room on both sides
        let room = match (&container.lo, &container.hi) {
            (Lower::NegInf, Upper::PosInf) => None,
            (Lower::NegInf, Upper::Fin(y)) => Some(y - shi),
            (Lower::Fin(x), Upper::PosInf) => Some(slo - x),
            (Lower::Fin(x), Upper::Fin(y)) => Some((slo - x).min(y - shi)),
        };
        if let Some(r) = room {
            if !r.is_positive() {
                return None;
            }
            if clearance.as_ref().map(|c| r < *c).unwrap_or(true) {
                clearance = Some(r);
            }
        }
    }
    let two = BigRational::from_integer(2.into());
    Some(match clearance {
        Some(c) => c / two,
        None => BigRational::one(),
    })
}

/// Checks that a bounded open is covered by finitely many width-`q`
/// intervals: the localized form of the width-`q` cover being a cover.
pub fn covered_by_width(a: &RealOpen, q: &BigRational) -> Result<Vec<(BigRational, BigRational)>> {
    if !q.is_positive() {
        return Err(CoreError::NonpositivePrecision(q.to_string()));
    }
    if !a.is_bounded() {
        return Err(CoreError::Unsupported(
            "width covers of unbounded opens are not finite".into(),
        ));
    }
    let mut ladder = Vec::new();
    let half = q / BigRational::from_integer(2.into());
    for s in a.spans() {
        let (lo, hi) = match (&s.lo, &s.hi) {
            (Lower::Fin(x), Upper::Fin(y)) => (x.clone(), y.clone()),
            _ => unreachable!(),
        };
        let mut p = lo - &half;
        loop {
            ladder.push((p.clone(), &p + q));
            if &p + q >= hi {
                break;
            }
            p += &half;
        }
    }
    let join = ladder.iter().fold(RealOpen::bottom(), |acc, (l, h)| {
        acc.join(&RealOpen::interval(l.clone(), h.clone()))
    });
    if a.leq(&join) {
        Ok(ladder)
    } else {
        Err(CoreError::Unsupported(
            "width ladder failed to cover".into(),
        ))
    }
}

/// Generators of the Dedekind-cut presentation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CutGenerator {
    /// `q` lies in the lower cut: the open `(q, ∞)`.
    LowerCut(BigRational),
    /// `q` lies in the upper cut: the open `(-∞, q)`.
    UpperCut(BigRational),
}

/// Image of a cut generator among interval opens.
pub fn cut_to_open(c: &CutGenerator) -> RealOpen {
    match c {
        CutGenerator::LowerCut(q) => RealOpen::from_spans([Span {
            lo: Lower::Fin(q.clone()),
            hi: Upper::PosInf,
        }]),
        CutGenerator::UpperCut(q) => RealOpen::from_spans([Span {
            lo: Lower::NegInf,
            hi: Upper::Fin(q.clone()),
        }]),
    }
}

/// Image of an interval generator among cut expressions: `(r, s)` becomes
/// the meet of the lower cut at `r` and the upper cut at `s`.
pub fn interval_to_cuts(lo: &BigRational, hi: &BigRational) -> (CutGenerator, CutGenerator) {
    (
        CutGenerator::LowerCut(lo.clone()),
        CutGenerator::UpperCut(hi.clone()),
    )
}
