//! Binary coproducts of frames (product locales) and open relations.
//!
//! The coproduct of two finite frames is the downset lattice of the product
//! of their irreducible posets; `a ⊕ b` is the rectangle with sides `a` and
//! `b`. Relations are elements of a square coproduct and support the usual
//! calculus: composition, opposite, diagonal, reflexivity.

use std::fmt;

use crate::error::{CoreError, Result};
use crate::frame::{FiniteFrame, FrameElement};
use crate::hom::FrameHom;
use crate::poset::IrrSet;

#[derive(Clone, PartialEq, Eq)]
pub struct ProductFrame {
    frame: FiniteFrame,
    left: FiniteFrame,
    right: FiniteFrame,
}

impl ProductFrame {
    pub fn new(left: &FiniteFrame, right: &FiniteFrame) -> Result<ProductFrame> {
        if left == right {
            return ProductFrame::square(left);
        }
        let poset = left.poset().product(right.poset())?;
        Ok(ProductFrame {
            frame: FiniteFrame::new(poset),
            left: left.clone(),
            right: right.clone(),
        })
    }

    /// The square `X × X` used for relations on `X`; shared per frame so
    /// relations built at different call sites compose.
    pub fn square(frame: &FiniteFrame) -> Result<ProductFrame> {
        Ok(ProductFrame {
            frame: frame.square_frame()?,
            left: frame.clone(),
            right: frame.clone(),
        })
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn left(&self) -> &FiniteFrame {
        &self.left
    }

    pub fn right(&self) -> &FiniteFrame {
        &self.right
    }

    pub fn is_square(&self) -> bool {
        self.left == self.right
    }

    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.right.irr_count() + j
    }

    pub fn unpair(&self, k: usize) -> (usize, usize) {
        let m = self.right.irr_count();
        (k / m, k % m)
    }

    /// The rectangle `a ⊕ b`.
    pub fn inject(&self, a: &FrameElement, b: &FrameElement) -> FrameElement {
        assert_eq!(*a.frame(), self.left, "left injection operand");
        assert_eq!(*b.frame(), self.right, "right injection operand");
        let mut set = IrrSet::EMPTY;
        for i in a.set().iter() {
            for j in b.set().iter() {
                set.insert(self.pair_index(i, j));
            }
        }
        debug_assert!(self.frame.poset().is_down_closed(set));
        self.frame.element_from_set(set)
    }

    pub fn try_inject(&self, a: &FrameElement, b: &FrameElement) -> Result<FrameElement> {
        if !self.left.contains(a) || !self.right.contains(b) {
            return Err(CoreError::FrameMismatch);
        }
        Ok(self.inject(a, b))
    }

    /// Frame map of the first projection: `a ↦ a ⊕ 1`.
    pub fn proj1_hom(&self) -> FrameHom {
        let top = self.right.top();
        FrameHom::try_new(
            &self.left,
            &self.frame,
            self.left
                .irreducibles()
                .map(|p| self.inject(&p, &top))
                .collect(),
        )
        .expect("projection is a frame hom")
    }

    /// Frame map of the second projection: `b ↦ 1 ⊕ b`.
    pub fn proj2_hom(&self) -> FrameHom {
        let top = self.left.top();
        FrameHom::try_new(
            &self.right,
            &self.frame,
            self.right
                .irreducibles()
                .map(|q| self.inject(&top, &q))
                .collect(),
        )
        .expect("projection is a frame hom")
    }

    /// Frame map of the diagonal `X → X × X`: `p ⊕ q ↦ p ∧ q`.
    pub fn diagonal_hom(&self) -> FrameHom {
        assert!(self.is_square(), "diagonal needs a square");
        let images = (0..self.frame.irr_count())
            .map(|k| {
                let (i, j) = self.unpair(k);
                self.left.irreducible(i).meet(&self.right.irreducible(j))
            })
            .collect();
        FrameHom::try_new(&self.frame, &self.left, images).expect("diagonal is a frame hom")
    }

    /// Pairs `(i, j)` of factor irreducibles in the element's downset.
    pub fn pairs_of(&self, e: &FrameElement) -> Vec<(usize, usize)> {
        assert_eq!(*e.frame(), self.frame);
        e.set().iter().map(|k| self.unpair(k)).collect()
    }
}

impl fmt::Debug for ProductFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProductFrame({:?} × {:?})", self.left, self.right)
    }
}

/// An open relation: an element of a square coproduct `O(X × X)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    square: ProductFrame,
    elem: FrameElement,
}

impl Relation {
    pub fn new(square: &ProductFrame, elem: FrameElement) -> Result<Relation> {
        if !square.is_square() {
            return Err(CoreError::Unsupported(
                "relations need equal factors".into(),
            ));
        }
        if !square.frame().contains(&elem) {
            return Err(CoreError::FrameMismatch);
        }
        Ok(Relation {
            square: square.clone(),
            elem,
        })
    }

    pub fn from_pairs(
        square: &ProductFrame,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Relation {
        let base = square.left();
        let mut elem = square.frame().bottom();
        for (i, j) in pairs {
            elem = elem.join(&square.inject(&base.irreducible(i), &base.irreducible(j)));
        }
        Relation {
            square: square.clone(),
            elem,
        }
    }

    /// Smallest reflexive relation: the down-closure of all `(p, p)`.
    pub fn diagonal(square: &ProductFrame) -> Relation {
        let n = square.left().irr_count();
        Relation::from_pairs(square, (0..n).map(|i| (i, i)))
    }

    pub fn top(square: &ProductFrame) -> Relation {
        Relation {
            square: square.clone(),
            elem: square.frame().top(),
        }
    }

    pub fn square(&self) -> &ProductFrame {
        &self.square
    }

    pub fn element(&self) -> &FrameElement {
        &self.elem
    }

    pub fn contains_pair(&self, i: usize, j: usize) -> bool {
        self.elem.set().contains(self.square.pair_index(i, j))
    }

    pub fn leq(&self, other: &Relation) -> bool {
        assert_eq!(self.square.frame(), other.square.frame());
        self.elem.leq(&other.elem)
    }

    pub fn meet(&self, other: &Relation) -> Relation {
        Relation {
            square: self.square.clone(),
            elem: self.elem.meet(&other.elem),
        }
    }

    pub fn join(&self, other: &Relation) -> Relation {
        Relation {
            square: self.square.clone(),
            elem: self.elem.join(&other.elem),
        }
    }

    pub fn is_bottom(&self) -> bool {
        self.elem.is_bottom()
    }

    /// Reflexivity `Δ ≤ E`, i.e. every `(p, p)` lies in the downset.
    pub fn is_reflexive(&self) -> bool {
        (0..self.square.left().irr_count()).all(|i| self.contains_pair(i, i))
    }

    pub fn reflexivity_certificate(&self, name: &str) -> Result<()> {
        for i in 0..self.square.left().irr_count() {
            if !self.contains_pair(i, i) {
                return Err(CoreError::NotReflexive {
                    entourage: name.to_string(),
                    witness: self.square.left().poset().name(i).to_string(),
                });
            }
        }
        Ok(())
    }

    /// Opposite relation: swap coordinates.
    pub fn opposite(&self) -> Relation {
        let pairs: Vec<(usize, usize)> = self
            .elem
            .set()
            .iter()
            .map(|k| {
                let (i, j) = self.square.unpair(k);
                (j, i)
            })
            .collect();
        let mut set = IrrSet::EMPTY;
        for (i, j) in pairs {
            set.insert(self.square.pair_index(i, j));
        }
        Relation {
            square: self.square.clone(),
            elem: self.square.frame().element_from_set(set),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.opposite() == *self
    }

    /// Composite `self ∘ other`: pairs `(x, z)` with a middle point `y`
    /// such that `(x, y) ∈ other` and `(y, z) ∈ self`.
    ///
    /// Expanding both relations into irreducible rectangles `p ⊕ q`, the
    /// composite is the join of `p ⊕ r` over rectangles `p ⊕ q ≤ other`,
    /// `q' ⊕ r ≤ self` with `↓q ∧ ↓q'` positive.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        if self.square.frame() != other.square.frame() {
            return Err(CoreError::FrameMismatch);
        }
        let base = self.square.left();
        let mut set = IrrSet::EMPTY;
        for k in other.elem.set().iter() {
            let (x, q) = self.square.unpair(k);
            for k2 in self.elem.set().iter() {
                let (q2, z) = self.square.unpair(k2);
                let meets = base.poset().below(q).inter(base.poset().below(q2));
                if !meets.is_empty() {
                    set.insert(self.square.pair_index(x, z));
                }
            }
        }
        debug_assert!(self.square.frame().poset().is_down_closed(set));
        Ok(Relation {
            square: self.square.clone(),
            elem: self.square.frame().element_from_set(set),
        })
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation⟨{}⟩", self.elem)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.elem, f)
    }
}

/// Coproduct of two frame maps: `(f ⊗ g)(p ⊕ q) = f(↓p) ⊕ g(↓q)`.
///
/// `f: O A → O X` and `g: O B → O Y` give `O(A × B) → O(X × Y)`.
pub fn coproduct_hom(
    f: &FrameHom,
    g: &FrameHom,
    source: &ProductFrame,
    target: &ProductFrame,
) -> FrameHom {
    assert_eq!(source.left(), f.source());
    assert_eq!(source.right(), g.source());
    assert_eq!(target.left(), f.target());
    assert_eq!(target.right(), g.target());
    let images = (0..source.frame().irr_count())
        .map(|k| {
            let (i, j) = source.unpair(k);
            target.inject(
                &f.apply(&source.left().irreducible(i)),
                &g.apply(&source.right().irreducible(j)),
            )
        })
        .collect();
    FrameHom::try_new(source.frame(), target.frame(), images)
        .expect("coproduct of frame homs is a frame hom")
}

/// Right adjoint of a product of locale maps, computed by the rectangle
/// formula `(f × g)_*(c) = ⋁{ f_*(a) ⊕ g_*(b) | a ⊕ b ≤ c }`.
///
/// `f: O A → O X`, `g: O B → O Y`; `c` lives in `O(X × Y)` and the result in
/// `O(A × B)`. Maximal rectangles are found by scanning elements of the
/// first factor, so the first factor must be enumerable.
pub fn product_right_adjoint(
    f: &FrameHom,
    g: &FrameHom,
    source: &ProductFrame,
    target: &ProductFrame,
    c: &FrameElement,
) -> Result<FrameElement> {
    assert_eq!(*c.frame(), *target.frame());
    let mut acc = source.frame().bottom();
    for a in f.target().elements()? {
        // largest b with a ⊕ b ≤ c
        let b_set = IrrSet::from_iter((0..g.target().irr_count()).filter(|&j| {
            a.set()
                .iter()
                .all(|i| c.set().contains(target.pair_index(i, j)))
        }));
        let b = g.target().element_from_set(b_set);
        acc = acc.join(&source.inject(&f.right_adjoint(&a), &g.right_adjoint(&b)));
    }
    Ok(acc)
}
