//! Classifying locales of (regular) Cauchy filters on a finite uniform
//! structure, presented by generators `[a ∈ F]` and the filter axioms, and
//! the identification of the regular variant with the uniform reflection of
//! the plain one.

use std::fmt;

use crate::cover::CoverDownset;
use crate::error::{CoreError, Result};
use crate::frame::{FiniteFrame, FrameElement};
use crate::hom::FrameHom;
use crate::present::{
    present_frame, FramePresentation, GenMask, Generator, PresRelation, PresentedFrame,
};
use crate::reflect::{uniform_reflection, Reflection};
use crate::uniform::PreUniformLocale;

/// The classifying locale of Cauchy filters (`regular = false`) or regular
/// Cauchy filters (`regular = true`).
pub struct CauchyLocale {
    source: PreUniformLocale,
    regular: bool,
    /// Source elements in generator order; generator `i` is `[elements[i] ∈ F]`.
    elements: Vec<FrameElement>,
    presented: PresentedFrame,
    /// Frame map of the canonical embedding: `[a ∈ F] ↦ a`.
    counit: FrameHom,
}

impl CauchyLocale {
    pub fn source(&self) -> &PreUniformLocale {
        &self.source
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn frame(&self) -> &FiniteFrame {
        self.presented.frame()
    }

    pub fn presented(&self) -> &PresentedFrame {
        &self.presented
    }

    pub fn counit(&self) -> &FrameHom {
        &self.counit
    }

    pub fn generator_elements(&self) -> &[FrameElement] {
        &self.elements
    }

    fn index_of(&self, a: &FrameElement) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == a)
            .ok_or(CoreError::FrameMismatch)
    }

    /// `[a ∈ F]` as an open of the classifying locale: the image of a source
    /// element, equal to the right adjoint of the counit.
    pub fn point(&self, a: &FrameElement) -> Result<FrameElement> {
        Ok(self.presented.generator_image(self.index_of(a)?))
    }

    /// Source element tagged on a semilattice class.
    pub fn class_element(&self, cls: usize) -> FrameElement {
        let mask: GenMask = self.presented.class_mask(cls);
        let mut acc = self.source.frame().top();
        for (i, e) in self.elements.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = acc.meet(e);
            }
        }
        acc
    }

    /// The induced uniformity: base covers `↓{[u ∈ F] | u ∈ U}` for each
    /// base cover `U` of the source.
    pub fn uniformity(&self) -> Result<PreUniformLocale> {
        let frame = self.frame().clone();
        let mut base = Vec::new();
        for u in self.source.covers().expect("cover form present").base() {
            let gens: Result<Vec<FrameElement>> =
                u.generators().iter().map(|g| self.point(g)).collect();
            base.push(CoverDownset::new(&frame, gens?)?);
        }
        PreUniformLocale::from_cover_base(&frame, base)
    }
}

impl fmt::Debug for CauchyLocale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CauchyLocale(regular: {}, {:?})",
            self.regular, self.presented
        )
    }
}

/// Builds the classifying locale of (regular) Cauchy filters on a finite
/// pre-uniform structure.
///
/// Generators are the source elements; relations say the filter is proper,
/// meet-closed, contains a member of every uniform cover, and (in the
/// regular case) refines each member from uniformly below.
pub fn cauchy_locale(structure: &PreUniformLocale, regular: bool) -> Result<CauchyLocale> {
    let structure = structure.with_covers()?;
    let frame = structure.frame().clone();
    let mut elements = frame.elements()?;
    elements.sort_by_key(|e| (e.set().len(), e.set().bits()));
    let index =
        |a: &FrameElement| -> usize { elements.iter().position(|e| e == a).expect("enumerated") };
    let gens: Vec<Generator> = elements
        .iter()
        .map(|e| Generator {
            name: format!("[{e}]"),
            tag: Some(e.clone()),
        })
        .collect();
    let mask = |i: usize| -> GenMask { 1 << i };

    let mut relations = Vec::new();
    // the filter contains top
    relations.push(PresRelation::MeetEq(mask(index(&frame.top())), 0));
    // closed under meets
    for i in 0..elements.len() {
        for j in 0..i {
            let m = elements[i].meet(&elements[j]);
            relations.push(PresRelation::MeetEq(mask(i) | mask(j), mask(index(&m))));
        }
    }
    // proper: only positive elements belong
    relations.push(PresRelation::Cover(mask(index(&frame.bottom())), vec![]));
    // contains a member of every uniform cover
    for u in structure.covers().expect("cover form").base() {
        relations.push(PresRelation::Cover(
            0,
            u.generators().iter().map(|g| mask(index(g))).collect(),
        ));
    }
    // regularity: every member is approximated from uniformly below
    if regular {
        for (i, a) in elements.iter().enumerate() {
            let approx: Vec<GenMask> = elements
                .iter()
                .enumerate()
                .filter(|(_, b)| structure.uniformly_below(b, a))
                .map(|(j, _)| mask(j))
                .collect();
            relations.push(PresRelation::Cover(mask(i), approx));
        }
    }

    let presented = present_frame(FramePresentation::new(gens, relations)?)?;
    let counit = presented.counit_hom(&frame)?;
    Ok(CauchyLocale {
        source: structure,
        regular,
        elements,
        presented,
        counit,
    })
}

/// The regular Cauchy locale exhibited as the uniform reflection of the
/// plain Cauchy locale, with the explicit adjoint pair between them.
pub struct CauchyReflection {
    pub plain: CauchyLocale,
    pub regular: CauchyLocale,
    /// Pre-uniform structure on the plain Cauchy locale.
    pub plain_structure: PreUniformLocale,
    pub reflection: Reflection,
    /// `[a ∈ F] ↦ ⋁{[b ∈ F] | b ◁ a}`, left adjoint to the quotient.
    pub retraction: FrameHom,
    /// The quotient `[a ∈ F] ↦ [a ∈ F]` from plain to regular generators.
    pub quotient: FrameHom,
    /// Mutually inverse frame maps between the regular Cauchy frame and the
    /// reflected subframe.
    pub forward: FrameHom,
    pub backward: FrameHom,
}

impl fmt::Debug for CauchyReflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CauchyReflection(plain: {:?}, regular: {:?})",
            self.plain, self.regular
        )
    }
}

/// Verifies that the uniform reflection of the Cauchy-filter locale is the
/// regular Cauchy-filter locale, returning the isomorphism witness.
pub fn reflect_cauchy(structure: &PreUniformLocale) -> Result<CauchyReflection> {
    if !structure.is_admissible() {
        return Err(CoreError::NotAdmissible);
    }
    let plain = cauchy_locale(structure, false)?;
    let regular = cauchy_locale(structure, true)?;
    let plain_structure = plain.uniformity()?;
    let reflection = uniform_reflection(&plain_structure)?;

    let bug = |what: &str| CoreError::Unsupported(format!("reflection mismatch: {what}"));

    // r: regular frame → plain frame on generators
    let source = plain.source().clone();
    let retraction = regular
        .presented()
        .hom_from_class_values(plain.frame(), |cls| {
            let a = regular.class_element(cls);
            let mut acc = plain.frame().bottom();
            for b in plain.generator_elements() {
                if source.uniformly_below(b, &a) {
                    acc = acc.join(&plain.point(b).expect("generator"));
                }
            }
            acc
        })?;
    // ρ*: plain frame → regular frame on generators
    let quotient = plain
        .presented()
        .hom_from_class_values(regular.frame(), |cls| {
            let a = plain.class_element(cls);
            regular.point(&a).expect("generator")
        })?;

    // adjunction r ⊣ ρ*, exhaustively
    let reg_elems = regular.frame().elements()?;
    let plain_elems = plain.frame().elements()?;
    for x in &reg_elems {
        for y in &plain_elems {
            if retraction.apply(x).leq(y) != x.leq(&quotient.apply(y)) {
                return Err(bug("retraction is not left adjoint to the quotient"));
            }
        }
    }
    if retraction.then(&quotient) != FrameHom::identity(regular.frame()) {
        return Err(bug("quotient does not retract the inclusion"));
    }

    // image of r = fixed subframe of the reflection
    let image: Vec<FrameElement> = {
        let mut v: Vec<FrameElement> = reg_elems.iter().map(|x| retraction.apply(x)).collect();
        v.sort_by_key(|e| e.set().bits());
        v.dedup();
        v
    };
    let mut fixed = reflection.fixed_points().to_vec();
    fixed.sort_by_key(|e| e.set().bits());
    if image != fixed {
        return Err(bug(
            "image of the retraction differs from the fixed subframe",
        ));
    }

    // the isomorphism between the regular frame and the reflected frame
    let forward = FrameHom::try_new(
        regular.frame(),
        reflection.frame(),
        regular
            .frame()
            .irreducibles()
            .map(|p| reflection.encode(&retraction.apply(&p)))
            .collect::<Result<Vec<FrameElement>>>()?,
    )?;
    let backward = reflection.include().then(&quotient);
    if forward.then(&backward) != FrameHom::identity(regular.frame())
        || backward.then(&forward) != FrameHom::identity(reflection.frame())
    {
        return Err(bug("comparison maps are not mutually inverse"));
    }

    Ok(CauchyReflection {
        plain,
        regular,
        plain_structure,
        reflection,
        retraction,
        quotient,
        forward,
        backward,
    })
}
