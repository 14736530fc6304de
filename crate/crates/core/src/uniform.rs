//! Pre-uniform locales: a finite frame with a covering and/or entourage
//! uniformity, the uniformly-below relation, admissibility, conversions
//! between the two presentations, morphism and embedding checks, and initial
//! structures.

use std::fmt;

use crate::cover::{CoverDownset, CoverUniformity};
use crate::entourage::EntourageUniformity;
use crate::error::{CoreError, Result};
use crate::frame::{FiniteFrame, FrameElement};
use crate::hom::FrameHom;
use crate::poset::IrrSet;
use crate::relation::{coproduct_hom, ProductFrame, Relation};

#[derive(Clone)]
pub struct PreUniformLocale {
    frame: FiniteFrame,
    square: ProductFrame,
    covers: Option<CoverUniformity>,
    entourages: Option<EntourageUniformity>,
    admissible: bool,
}

impl PreUniformLocale {
    pub fn from_cover_base(frame: &FiniteFrame, base: Vec<CoverDownset>) -> Result<Self> {
        let covers = CoverUniformity::validate(frame, base)?;
        let square = ProductFrame::square(frame)?;
        let mut s = PreUniformLocale {
            frame: frame.clone(),
            square,
            covers: Some(covers),
            entourages: None,
            admissible: false,
        };
        s.admissible = s.compute_admissible();
        Ok(s)
    }

    pub fn from_entourage_base(frame: &FiniteFrame, base: Vec<Relation>) -> Result<Self> {
        let square = ProductFrame::square(frame)?;
        let entourages = EntourageUniformity::validate(&square, base)?;
        let mut s = PreUniformLocale {
            frame: frame.clone(),
            square,
            covers: None,
            entourages: Some(entourages),
            admissible: false,
        };
        s.admissible = s.compute_admissible();
        Ok(s)
    }

    /// Builds a structure carrying both presentations and checks they are
    /// mutual images under the conversions.
    pub fn from_both(
        frame: &FiniteFrame,
        cover_base: Vec<CoverDownset>,
        entourage_base: Vec<Relation>,
    ) -> Result<Self> {
        let covers = CoverUniformity::validate(frame, cover_base)?;
        let square = ProductFrame::square(frame)?;
        let entourages = EntourageUniformity::validate(&square, entourage_base)?;
        if !covers_to_entourages(&covers)?.filter_equal(&entourages)
            || !entourages_to_covers(&entourages)?.filter_equal(&covers)
        {
            return Err(CoreError::Unsupported(
                "cover and entourage bases generate different uniformities".into(),
            ));
        }
        let mut s = PreUniformLocale {
            frame: frame.clone(),
            square,
            covers: Some(covers),
            entourages: Some(entourages),
            admissible: false,
        };
        s.admissible = s.compute_admissible();
        Ok(s)
    }

    /// The chaotic (indiscrete) structure, valid on every frame.
    pub fn chaotic(frame: &FiniteFrame) -> Self {
        let covers = CoverUniformity::validate(frame, vec![CoverDownset::chaotic(frame)])
            .expect("chaotic cover base validates");
        let square = ProductFrame::square(frame).expect("square of a small frame");
        let entourages = EntourageUniformity::validate(&square, vec![Relation::top(&square)])
            .expect("chaotic entourage base validates");
        let mut s = PreUniformLocale {
            frame: frame.clone(),
            square,
            covers: Some(covers),
            entourages: Some(entourages),
            admissible: false,
        };
        s.admissible = s.compute_admissible();
        s
    }

    /// The finest uniformity generated by the cover of irreducibles. Valid on
    /// discrete frames; on other frames validation may fail.
    pub fn discrete(frame: &FiniteFrame) -> Result<Self> {
        let atoms = CoverDownset::new(frame, frame.irreducibles().collect())?;
        Self::from_cover_base(frame, vec![atoms])
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn square(&self) -> &ProductFrame {
        &self.square
    }

    pub fn covers(&self) -> Option<&CoverUniformity> {
        self.covers.as_ref()
    }

    pub fn entourages(&self) -> Option<&EntourageUniformity> {
        self.entourages.as_ref()
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    /// Returns an equivalent structure with the covering presentation
    /// materialized.
    pub fn with_covers(&self) -> Result<Self> {
        if self.covers.is_some() {
            return Ok(self.clone());
        }
        let covers = entourages_to_covers(self.entourages.as_ref().expect("some form"))?;
        Ok(PreUniformLocale {
            covers: Some(covers),
            ..self.clone()
        })
    }

    /// Returns an equivalent structure with the entourage presentation
    /// materialized.
    pub fn with_entourages(&self) -> Result<Self> {
        if self.entourages.is_some() {
            return Ok(self.clone());
        }
        let entourages = covers_to_entourages(self.covers.as_ref().expect("some form"))?;
        Ok(PreUniformLocale {
            entourages: Some(entourages),
            ..self.clone()
        })
    }

    pub fn with_both(&self) -> Result<Self> {
        self.with_covers()?.with_entourages()
    }

    /// The uniformly-below relation `a ◁ b`.
    ///
    /// Entourage form `E ∘ (a ⊕ a) ≤ b ⊕ b` and cover form `st(a, U) ≤ b`
    /// are evaluated against the least base member; when both presentations
    /// are stored the verdicts coincide.
    pub fn uniformly_below(&self, a: &FrameElement, b: &FrameElement) -> bool {
        let ent = self.entourages.as_ref().map(|eu| {
            let aa = Relation::new(&self.square, self.square.inject(a, a)).expect("rectangle");
            let bb = self.square.inject(b, b);
            eu.min_member()
                .compose(&aa)
                .expect("same square")
                .element()
                .leq(&bb)
        });
        let cov = self
            .covers
            .as_ref()
            .map(|cu| cu.min_member().star(a).leq(b));
        match (ent, cov) {
            (Some(e), Some(c)) => {
                debug_assert_eq!(e, c, "uniformly-below forms disagree at {a} ◁ {b}");
                e
            }
            (Some(e), None) => e,
            (None, Some(c)) => c,
            (None, None) => unreachable!("structure carries at least one form"),
        }
    }

    /// `r(b) = ⋁{a | a ◁ b}`, computed over irreducibles; the uniformly-below
    /// relation is closed under joins and lower shrinking, so the irreducible
    /// join equals the full one.
    pub fn below_join(&self, b: &FrameElement) -> FrameElement {
        let set = IrrSet::from_iter(
            (0..self.frame.irr_count())
                .filter(|&i| self.uniformly_below(&self.frame.irreducible(i), b)),
        );
        debug_assert!(self.frame.poset().is_down_closed(set));
        self.frame.element_from_set(set)
    }

    fn compute_admissible(&self) -> bool {
        // b = ⋁{a ◁ b} for every b iff it holds at irreducibles
        self.frame.irreducibles().all(|p| self.below_join(&p) == p)
    }

    /// Filter equality with another structure on the same frame.
    pub fn filter_equal(&self, other: &PreUniformLocale) -> Result<bool> {
        if self.frame != other.frame {
            return Err(CoreError::FrameMismatch);
        }
        if let (Some(a), Some(b)) = (&self.entourages, &other.entourages) {
            return Ok(a.filter_equal(b));
        }
        if let (Some(a), Some(b)) = (&self.covers, &other.covers) {
            return Ok(a.filter_equal(b));
        }
        let a = self.with_entourages()?;
        let b = other.with_entourages()?;
        Ok(a.entourages()
            .unwrap()
            .filter_equal(b.entourages().unwrap()))
    }
}

impl fmt::Debug for PreUniformLocale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PreUniformLocale({:?}", self.frame)?;
        if let Some(c) = &self.covers {
            write!(f, ", covers {c}")?;
        }
        if let Some(e) = &self.entourages {
            write!(f, ", entourages {e}")?;
        }
        write!(f, ", admissible: {})", self.admissible)
    }
}

/// Entourage presentation of a covering uniformity: each strong base cover
/// `U` becomes `⋁{u ⊕ u | u ∈ U}`.
pub fn covers_to_entourages(cu: &CoverUniformity) -> Result<EntourageUniformity> {
    let frame = cu.frame();
    let square = ProductFrame::square(frame)?;
    let mut base = Vec::new();
    for u in cu.base() {
        let strong = u.strengthen()?;
        let mut elem = square.frame().bottom();
        for g in strong.generators() {
            elem = elem.join(&square.inject(g, g));
        }
        base.push(Relation::new(&square, elem)?);
    }
    EntourageUniformity::validate(&square, base)
}

/// Covering presentation of an entourage uniformity: each base entourage `E`
/// becomes `↓{u | u > 0, u ⊕ u ≤ E}`, generated by the maximal such `u`.
///
/// Needs to enumerate frame elements, so it is reserved for small frames.
pub fn entourages_to_covers(eu: &EntourageUniformity) -> Result<CoverUniformity> {
    let frame = eu.frame();
    let square = eu.square();
    let elems = frame.elements()?;
    let mut base = Vec::new();
    for e in eu.base() {
        let squares: Vec<FrameElement> = elems
            .iter()
            .filter(|u| u.is_positive() && square.inject(u, u).leq(e.element()))
            .cloned()
            .collect();
        let gens: Vec<FrameElement> = squares
            .iter()
            .filter(|u| !squares.iter().any(|v| u.leq(v) && *u != v))
            .cloned()
            .collect();
        base.push(CoverDownset::new(frame, gens)?);
    }
    CoverUniformity::validate(frame, base)
}

/// Uniform-morphism check for a frame map `f: O Y → O X`, i.e. a locale map
/// from the structure on `X` to the structure on `Y`.
///
/// Entourage test: pullbacks of base entourages are entourages. Cover test:
/// images of base covers are uniform covers. Both are evaluated when both
/// presentations are available, and must agree.
pub fn is_uniform_morphism(
    f: &FrameHom,
    source: &PreUniformLocale,
    target: &PreUniformLocale,
) -> Result<bool> {
    if f.source() != target.frame() || f.target() != source.frame() {
        return Err(CoreError::FrameMismatch);
    }
    let mut verdicts = Vec::new();
    if let (Some(se), Some(te)) = (source.entourages(), target.entourages()) {
        let ff = coproduct_hom(f, f, te.square(), se.square());
        verdicts.push(te.base().iter().all(|e| {
            let pulled = Relation::new(se.square(), ff.apply(e.element()))
                .expect("pullback lands in the source square");
            se.filter_member(&pulled)
        }));
    }
    if let (Some(sc), Some(tc)) = (source.covers(), target.covers()) {
        verdicts.push(tc.base().iter().all(|v| {
            let image = CoverDownset::from_gens(
                source.frame(),
                v.generators().iter().map(|g| f.apply(g)).collect(),
            );
            sc.filter_member(&image)
        }));
    }
    if verdicts.is_empty() {
        // mixed presentations: materialize entourages on both sides
        let s = source.with_entourages()?;
        let t = target.with_entourages()?;
        return is_uniform_morphism(f, &s, &t);
    }
    debug_assert!(
        verdicts.windows(2).all(|w| w[0] == w[1]),
        "entourage and cover morphism tests disagree"
    );
    Ok(verdicts[0])
}

pub fn uniform_morphism_certificate(
    f: &FrameHom,
    source: &PreUniformLocale,
    target: &PreUniformLocale,
) -> Result<()> {
    if is_uniform_morphism(f, source, target)? {
        Ok(())
    } else {
        Err(CoreError::NotUniformMorphism {
            reason: "a base uniformity fails to pull back".into(),
        })
    }
}

/// Initial (coarsest) uniformity on the common source of a family of maps
/// into uniform structures: finite meets of pullbacks of base entourages.
/// The empty family yields the chaotic structure.
pub fn initial_uniformity(
    frame: &FiniteFrame,
    family: &[(&FrameHom, &PreUniformLocale)],
) -> Result<PreUniformLocale> {
    let square = ProductFrame::square(frame)?;
    let mut pulled: Vec<Relation> = vec![Relation::top(&square)];
    for (f, structure) in family {
        if f.target() != frame || f.source() != structure.frame() {
            return Err(CoreError::FrameMismatch);
        }
        let s = structure.with_entourages()?;
        let eu = s.entourages().unwrap();
        let ff = coproduct_hom(f, f, eu.square(), &square);
        for e in eu.base() {
            pulled.push(Relation::new(&square, ff.apply(e.element()))?);
        }
    }
    // close under pairwise meets so the base is directed
    let mut base = pulled.clone();
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = base.clone();
        for (i, a) in snapshot.iter().enumerate() {
            for b in snapshot.iter().take(i) {
                let m = a.meet(b);
                if !base.contains(&m) {
                    base.push(m);
                    changed = true;
                }
            }
        }
    }
    PreUniformLocale::from_entourage_base(frame, base)
}

/// Uniform-embedding check: the frame map must be surjective (an extremal
/// monomorphism of overt locales at this scale) and the source uniformity
/// must equal the initial one along `f`.
pub fn is_uniform_embedding(
    f: &FrameHom,
    source: &PreUniformLocale,
    target: &PreUniformLocale,
) -> Result<bool> {
    if f.source() != target.frame() || f.target() != source.frame() {
        return Err(CoreError::FrameMismatch);
    }
    if !f.is_surjective() {
        return Ok(false);
    }
    let initial = initial_uniformity(source.frame(), &[(f, target)])?;
    source.filter_equal(&initial)
}

pub fn uniform_embedding_certificate(
    f: &FrameHom,
    source: &PreUniformLocale,
    target: &PreUniformLocale,
) -> Result<()> {
    if f.source() != target.frame() || f.target() != source.frame() {
        return Err(CoreError::FrameMismatch);
    }
    if !f.is_surjective() {
        return Err(CoreError::NotUniformEmbedding {
            reason: "frame map is not surjective".into(),
        });
    }
    let initial = initial_uniformity(source.frame(), &[(f, target)])?;
    if !source.filter_equal(&initial)? {
        return Err(CoreError::NotUniformEmbedding {
            reason: "source uniformity differs from the initial one".into(),
        });
    }
    Ok(())
}
