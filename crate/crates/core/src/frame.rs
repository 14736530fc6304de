//! Finite frames as downset lattices of a poset of join-irreducibles.
//!
//! Meet is intersection, join is union, bottom is the empty set and top the
//! full set of irreducibles. Distributivity is automatic from the
//! representation, and every element has a unique normal form, so equality
//! and order are exact set operations.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::error::{CoreError, Result};
use crate::poset::{IrrSet, Poset};

static NEXT_FRAME_ID: AtomicU64 = AtomicU64::new(0);

#[derive(Clone)]
pub struct FiniteFrame {
    data: Arc<FrameData>,
}

struct FrameData {
    poset: Poset,
    id: u64,
    /// Lazily built frame on the squared poset, shared so relations built at
    /// different call sites live on one common square.
    square: OnceLock<Result<FiniteFrame>>,
}

impl PartialEq for FiniteFrame {
    fn eq(&self, other: &Self) -> bool {
        self.data.id == other.data.id
    }
}
impl Eq for FiniteFrame {}

impl FiniteFrame {
    /// Frame of downsets of `poset`.
    pub fn new(poset: Poset) -> FiniteFrame {
        FiniteFrame {
            data: Arc::new(FrameData {
                poset,
                id: NEXT_FRAME_ID.fetch_add(1, Ordering::Relaxed),
                square: OnceLock::new(),
            }),
        }
    }

    /// The frame on the squared irreducible poset, built once per frame.
    pub fn square_frame(&self) -> Result<FiniteFrame> {
        self.data
            .square
            .get_or_init(|| {
                let poset = self.data.poset.product(&self.data.poset)?;
                Ok(FiniteFrame::new(poset))
            })
            .clone()
    }

    /// Discrete frame on named points: the powerset lattice.
    pub fn discrete(names: &[&str]) -> FiniteFrame {
        FiniteFrame::new(Poset::discrete(
            names.iter().map(|s| s.to_string()).collect(),
        ))
    }

    pub fn poset(&self) -> &Poset {
        &self.data.poset
    }

    pub fn id(&self) -> u64 {
        self.data.id
    }

    pub fn irr_count(&self) -> usize {
        self.data.poset.len()
    }

    /// The degenerate frame `{0 = 1}` on no irreducibles.
    pub fn is_degenerate(&self) -> bool {
        self.irr_count() == 0
    }

    pub fn bottom(&self) -> FrameElement {
        FrameElement {
            frame: self.clone(),
            set: IrrSet::EMPTY,
        }
    }

    pub fn top(&self) -> FrameElement {
        FrameElement {
            frame: self.clone(),
            set: IrrSet::full(self.irr_count()),
        }
    }

    /// The element `↓i` for an irreducible index.
    pub fn irreducible(&self, i: usize) -> FrameElement {
        assert!(i < self.irr_count(), "irreducible index out of range");
        FrameElement {
            frame: self.clone(),
            set: self.data.poset.below(i),
        }
    }

    /// Element given by the down-closure of a set of irreducibles.
    pub fn element(&self, irrs: impl IntoIterator<Item = usize>) -> FrameElement {
        let set = self.data.poset.down_closure(IrrSet::from_iter(irrs));
        FrameElement {
            frame: self.clone(),
            set,
        }
    }

    /// Element from an already down-closed mask.
    pub fn element_from_set(&self, set: IrrSet) -> FrameElement {
        debug_assert!(self.data.poset.is_down_closed(set));
        FrameElement {
            frame: self.clone(),
            set,
        }
    }

    pub fn contains(&self, e: &FrameElement) -> bool {
        self == &e.frame
    }

    fn check_owns(&self, e: &FrameElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(CoreError::FrameMismatch)
        }
    }

    /// All elements, enumerated as down-closed subsets.
    ///
    /// Exponential in the number of irreducibles; callers stay under the
    /// guard by construction.
    pub fn elements(&self) -> Result<Vec<FrameElement>> {
        let n = self.irr_count();
        if n > 20 {
            return Err(CoreError::TooLarge {
                what: format!("element enumeration of a frame with {n} irreducibles"),
            });
        }
        let mut out = Vec::new();
        for raw in 0..(1u64 << n) {
            let set = IrrSet::from_iter((0..n).filter(|&i| raw >> i & 1 == 1));
            if self.data.poset.is_down_closed(set) {
                out.push(self.element_from_set(set));
            }
        }
        Ok(out)
    }

    /// Irreducible elements `↓0, ↓1, …` in index order.
    pub fn irreducibles(&self) -> impl Iterator<Item = FrameElement> + '_ {
        (0..self.irr_count()).map(|i| self.irreducible(i))
    }
}

impl fmt::Debug for FiniteFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteFrame#{}({:?})", self.data.id, self.data.poset)
    }
}

/// An element of a finite frame: a down-closed set of irreducibles.
#[derive(Clone, PartialEq, Eq)]
pub struct FrameElement {
    frame: FiniteFrame,
    set: IrrSet,
}

impl FrameElement {
    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn set(&self) -> IrrSet {
        self.set
    }

    pub fn meet(&self, other: &FrameElement) -> FrameElement {
        assert_eq!(self.frame, other.frame, "cross-frame meet");
        FrameElement {
            frame: self.frame.clone(),
            set: self.set.inter(other.set),
        }
    }

    pub fn join(&self, other: &FrameElement) -> FrameElement {
        assert_eq!(self.frame, other.frame, "cross-frame join");
        FrameElement {
            frame: self.frame.clone(),
            set: self.set.union(other.set),
        }
    }

    pub fn try_meet(&self, other: &FrameElement) -> Result<FrameElement> {
        self.frame.check_owns(other)?;
        Ok(self.meet(other))
    }

    pub fn try_join(&self, other: &FrameElement) -> Result<FrameElement> {
        self.frame.check_owns(other)?;
        Ok(self.join(other))
    }

    pub fn leq(&self, other: &FrameElement) -> bool {
        assert_eq!(self.frame, other.frame, "cross-frame comparison");
        self.set.is_subset(other.set)
    }

    pub fn try_leq(&self, other: &FrameElement) -> Result<bool> {
        self.frame.check_owns(other)?;
        Ok(self.leq(other))
    }

    pub fn is_bottom(&self) -> bool {
        self.set.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.set == IrrSet::full(self.frame.irr_count())
    }

    /// Positivity. Classically this is just being nonzero; the name tracks
    /// the stronger lattice-theoretic notion the tests exercise.
    pub fn is_positive(&self) -> bool {
        !self.set.is_empty()
    }

    /// Overlap `a ≬ b`: the meet is positive.
    pub fn overlaps(&self, other: &FrameElement) -> bool {
        self.meet(other).is_positive()
    }

    /// Pseudocomplement: the largest element meeting `self` in bottom.
    pub fn pseudocomplement(&self) -> FrameElement {
        let frame = &self.frame;
        let set = IrrSet::from_iter(
            (0..frame.irr_count()).filter(|&i| frame.poset().below(i).inter(self.set).is_empty()),
        );
        debug_assert!(frame.poset().is_down_closed(set));
        frame.element_from_set(set)
    }

    /// Join of `↓p` over the maximal irreducibles in the downset; used for
    /// readable printing.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.frame.poset().maximal(self.set).iter().collect()
    }
}

impl fmt::Display for FrameElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            return write!(f, "0");
        }
        if self.is_top() {
            return write!(f, "1");
        }
        let names: Vec<&str> = self
            .generator_indices()
            .into_iter()
            .map(|i| self.frame.poset().name(i))
            .collect();
        write!(f, "{}", names.join("+"))
    }
}

impl fmt::Debug for FrameElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

/// Joins a family of elements of one frame; `frame.bottom()` for an empty family.
pub fn join_all<'a>(
    frame: &FiniteFrame,
    items: impl IntoIterator<Item = &'a FrameElement>,
) -> FrameElement {
    let mut acc = frame.bottom();
    for e in items {
        acc = acc.join(e);
    }
    acc
}
