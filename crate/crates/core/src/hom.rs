//! Frame homomorphisms with their adjoints.
//!
//! A homomorphism is stored by its action on the irreducibles of the source;
//! this determines it on every element because elements are joins of
//! irreducibles. Construction validates finite-meet and top preservation,
//! which in a finite frame pins down a genuine frame homomorphism.
//!
//! Orientation: a `FrameHom` with source `O Y` and target `O X` is the frame
//! map of a locale morphism `X → Y`.

use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::frame::{join_all, FiniteFrame, FrameElement};
use crate::poset::IrrSet;

#[derive(Clone)]
pub struct FrameHom {
    source: FiniteFrame,
    target: FiniteFrame,
    /// Image of `↓i` for each source irreducible `i`.
    images: Arc<Vec<FrameElement>>,
}

impl PartialEq for FrameHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .images
                .iter()
                .zip(other.images.iter())
                .all(|(a, b)| a == b)
    }
}
impl Eq for FrameHom {}

impl FrameHom {
    /// Validating constructor from irreducible images.
    pub fn try_new(
        source: &FiniteFrame,
        target: &FiniteFrame,
        images: Vec<FrameElement>,
    ) -> Result<FrameHom> {
        if images.len() != source.irr_count() {
            return Err(CoreError::NotFrameHom {
                reason: format!(
                    "expected {} irreducible images, got {}",
                    source.irr_count(),
                    images.len()
                ),
            });
        }
        for im in &images {
            if !target.contains(im) {
                return Err(CoreError::FrameMismatch);
            }
        }
        let hom = FrameHom {
            source: source.clone(),
            target: target.clone(),
            images: Arc::new(images),
        };
        hom.validate()?;
        Ok(hom)
    }

    #[cfg(test)]
    pub(crate) fn new_unvalidated(
        source: &FiniteFrame,
        target: &FiniteFrame,
        images: Vec<FrameElement>,
    ) -> FrameHom {
        FrameHom {
            source: source.clone(),
            target: target.clone(),
            images: Arc::new(images),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.source.irr_count();
        // meets of irreducible pairs; monotonicity is the p ≤ q case
        for p in 0..n {
            for q in 0..n {
                let lhs = self.apply(&self.source.irreducible(p).meet(&self.source.irreducible(q)));
                let rhs = self.images[p].meet(&self.images[q]);
                if lhs != rhs {
                    return Err(CoreError::NotFrameHom {
                        reason: format!(
                            "meet not preserved at irreducibles {} and {}",
                            self.source.poset().name(p),
                            self.source.poset().name(q)
                        ),
                    });
                }
            }
        }
        if !join_all(&self.target, self.images.iter()).is_top() {
            return Err(CoreError::NotFrameHom {
                reason: "top not preserved".into(),
            });
        }
        Ok(())
    }

    pub fn identity(frame: &FiniteFrame) -> FrameHom {
        FrameHom {
            source: frame.clone(),
            target: frame.clone(),
            images: Arc::new(frame.irreducibles().collect()),
        }
    }

    /// The unique homomorphism into the degenerate frame.
    pub fn to_degenerate(source: &FiniteFrame, target: &FiniteFrame) -> FrameHom {
        assert!(target.is_degenerate());
        FrameHom {
            source: source.clone(),
            target: target.clone(),
            images: Arc::new(vec![target.top(); source.irr_count()]),
        }
    }

    pub fn source(&self) -> &FiniteFrame {
        &self.source
    }

    pub fn target(&self) -> &FiniteFrame {
        &self.target
    }

    pub fn irreducible_image(&self, i: usize) -> &FrameElement {
        &self.images[i]
    }

    pub fn apply(&self, e: &FrameElement) -> FrameElement {
        assert_eq!(*e.frame(), self.source, "element not in hom source");
        join_all(&self.target, e.set().iter().map(|i| &self.images[i]))
    }

    pub fn try_apply(&self, e: &FrameElement) -> Result<FrameElement> {
        if !self.source.contains(e) {
            return Err(CoreError::FrameMismatch);
        }
        Ok(self.apply(e))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FrameHom) -> FrameHom {
        assert_eq!(self.target, next.source, "homs do not compose");
        FrameHom {
            source: self.source.clone(),
            target: next.target.clone(),
            images: Arc::new(self.images.iter().map(|im| next.apply(im)).collect()),
        }
    }

    /// Right adjoint `h_*(b) = ⋁{a | h(a) ≤ b}`.
    ///
    /// The join is the set of irreducibles whose image lies below `b`, which
    /// is down-closed by monotonicity.
    pub fn right_adjoint(&self, b: &FrameElement) -> FrameElement {
        assert_eq!(*b.frame(), self.target, "element not in hom target");
        let set =
            IrrSet::from_iter((0..self.source.irr_count()).filter(|&i| self.images[i].leq(b)));
        debug_assert!(self.source.poset().is_down_closed(set));
        self.source.element_from_set(set)
    }

    /// Left adjoint `h_!(b) = ⋀{a | b ≤ h(a)}` of the frame map, taking
    /// elements of the target back into the source: `h_!(b) ≤ a ⇔ b ≤ h(a)`.
    ///
    /// It exists when the map preserves all meets; finite frames make that a
    /// pairwise check, and a map that fails it is reported instead of
    /// silently approximated.
    pub fn left_adjoint(&self, b: &FrameElement) -> Result<FrameElement> {
        assert_eq!(*b.frame(), self.target, "element not in hom target");
        if let Err(CoreError::NotFrameHom { reason }) = self.validate() {
            return Err(CoreError::NoLeftAdjoint { witness: reason });
        }
        // h_! preserves joins, so build it on irreducibles:
        // h_!(↓q) = ⋀{↓p | q ∈ h(↓p)}.
        let mut acc = self.source.bottom();
        for q in b.set().iter() {
            let mut piece = self.source.top();
            for p in 0..self.source.irr_count() {
                if self.images[p].set().contains(q) {
                    piece = piece.meet(&self.source.irreducible(p));
                }
            }
            acc = acc.join(&piece);
        }
        Ok(acc)
    }

    /// Strong density of the locale map this frame map presents: positive
    /// elements of the source lattice keep positive images.
    pub fn is_strongly_dense(&self) -> bool {
        self.images.iter().all(|im| im.is_positive()) || self.source.is_degenerate()
    }

    pub fn strongly_dense_certificate(&self) -> Result<()> {
        if self.source.is_degenerate() {
            return Ok(());
        }
        for (i, im) in self.images.iter().enumerate() {
            if !im.is_positive() {
                return Err(CoreError::NotStronglyDense {
                    witness: self.source.poset().name(i).to_string(),
                });
            }
        }
        Ok(())
    }

    /// Surjectivity via the counit: `h ∘ h_* = id` on the target.
    pub fn is_surjective(&self) -> bool {
        self.target
            .irreducibles()
            .all(|q| self.apply(&self.right_adjoint(&q)) == q)
    }

    /// Injectivity via the unit `h_* ∘ h = id`, checked on every element.
    pub fn is_injective(&self) -> Result<bool> {
        let elems = self.source.elements()?;
        Ok(elems
            .iter()
            .all(|a| self.right_adjoint(&self.apply(a)) == *a))
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.is_surjective() && self.is_injective()?)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<FrameHom> {
        if !self.is_isomorphism()? {
            return Err(CoreError::NotFrameHom {
                reason: "not an isomorphism".into(),
            });
        }
        FrameHom::try_new(
            &self.target,
            &self.source,
            self.target
                .irreducibles()
                .map(|q| self.right_adjoint(&q))
                .collect(),
        )
    }
}

impl fmt::Debug for FrameHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrameHom{{")?;
        for (i, im) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} ↦ {}", self.source.poset().name(i), im)?;
        }
        write!(f, "}}")
    }
}
