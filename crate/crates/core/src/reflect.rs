//! The uniform reflection: the conucleus `r(b) = ⋁{a | a ◁ b}`, its fixed
//! subframe materialized as a standalone frame, the induced uniformity, and
//! factorization of uniform morphisms through the unit.

use crate::cover::CoverDownset;
use crate::error::{CoreError, Result};
use crate::frame::{FiniteFrame, FrameElement};
use crate::hom::FrameHom;
use crate::poset::{IrrSet, Poset};
use crate::uniform::{is_uniform_morphism, PreUniformLocale};

/// `r(b) = ⋁{a | a ◁ b}`: monotone, deflationary, idempotent,
/// finite-meet-preserving.
pub fn conucleus(structure: &PreUniformLocale, b: &FrameElement) -> FrameElement {
    structure.below_join(b)
}

pub struct Reflection {
    source: PreUniformLocale,
    /// Fixed points of the conucleus, as source elements, sorted.
    fixed: Vec<FrameElement>,
    frame: FiniteFrame,
    /// Value of each reflected irreducible inside the source frame.
    irr_values: Vec<FrameElement>,
    /// The unit's frame map: reflected frame into the source frame.
    include: FrameHom,
    reflected: PreUniformLocale,
}

impl Reflection {
    pub fn source(&self) -> &PreUniformLocale {
        &self.source
    }

    /// The reflected frame (the fixed subframe, materialized).
    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn fixed_points(&self) -> &[FrameElement] {
        &self.fixed
    }

    /// Frame map of the unit: includes reflected elements into the source.
    pub fn include(&self) -> &FrameHom {
        &self.include
    }

    pub fn reflected(&self) -> &PreUniformLocale {
        &self.reflected
    }

    /// Encodes a fixed source element as a reflected element.
    pub fn encode(&self, x: &FrameElement) -> Result<FrameElement> {
        if !self.source.frame().contains(x) {
            return Err(CoreError::FrameMismatch);
        }
        let set =
            IrrSet::from_iter((0..self.irr_values.len()).filter(|&j| self.irr_values[j].leq(x)));
        let encoded = self.frame.element_from_set(set);
        if self.include.apply(&encoded) != *x {
            return Err(CoreError::Unsupported(format!(
                "{x} is not a fixed point of the conucleus"
            )));
        }
        Ok(encoded)
    }

    /// Is the unit an isomorphism (i.e. the input was already uniform)?
    pub fn unit_is_iso(&self) -> Result<bool> {
        self.include.is_isomorphism()
    }
}

/// Computes the reflection of a pre-uniform locale.
pub fn uniform_reflection(structure: &PreUniformLocale) -> Result<Reflection> {
    let structure = structure.with_covers()?;
    let frame = structure.frame().clone();
    let mut fixed: Vec<FrameElement> = frame
        .elements()?
        .into_iter()
        .filter(|b| conucleus(&structure, b) == *b)
        .collect();
    fixed.sort_by_key(|e| (e.set().len(), e.set().bits()));

    // join-irreducibles of the fixed-point lattice
    let mut irr_values: Vec<FrameElement> = Vec::new();
    for x in &fixed {
        if x.is_bottom() {
            continue;
        }
        let below_join = fixed
            .iter()
            .filter(|y| y.leq(x) && *y != x)
            .fold(frame.bottom(), |acc, y| acc.join(y));
        if below_join != *x {
            irr_values.push(x.clone());
        }
    }
    let names = (0..irr_values.len()).map(|j| format!("r{j}")).collect();
    let mut pairs = Vec::new();
    for (j, x) in irr_values.iter().enumerate() {
        for (k, y) in irr_values.iter().enumerate() {
            if x.leq(y) {
                pairs.push((j, k));
            }
        }
    }
    let reflected_frame = FiniteFrame::new(Poset::new(names, &pairs)?);
    let include = FrameHom::try_new(&reflected_frame, &frame, irr_values.clone())?;

    // the reflected uniformity: images of base covers under the conucleus
    let mut base = Vec::new();
    for u in structure.covers().expect("covers materialized").base() {
        let gens = u
            .generators()
            .iter()
            .map(|g| {
                let rg = conucleus(&structure, g);
                let set =
                    IrrSet::from_iter((0..irr_values.len()).filter(|&j| irr_values[j].leq(&rg)));
                reflected_frame.element_from_set(set)
            })
            .collect();
        base.push(CoverDownset::new(&reflected_frame, gens)?.strengthen()?);
    }
    let reflected = PreUniformLocale::from_cover_base(&reflected_frame, base)?;

    Ok(Reflection {
        source: structure,
        fixed,
        frame: reflected_frame,
        irr_values,
        include,
        reflected,
    })
}

/// Factors a uniform morphism `f` into an admissible target through the
/// unit of the reflection of its source: returns `f♭` with
/// `include ∘ f♭ = f` at the frame level. Uniqueness comes from the unit
/// being epic (it is strongly dense).
///
/// `f` is the frame map `O Y → O X`; the result maps `O Y` into the
/// reflected frame.
pub fn factor_through_unit(
    f: &FrameHom,
    reflection: &Reflection,
    target: &PreUniformLocale,
) -> Result<FrameHom> {
    if !target.is_admissible() {
        return Err(CoreError::NotAdmissible);
    }
    if f.source() != target.frame() || f.target() != reflection.source().frame() {
        return Err(CoreError::FrameMismatch);
    }
    if !is_uniform_morphism(f, reflection.source(), target)? {
        return Err(CoreError::NotUniformMorphism {
            reason: "cannot factor a non-uniform map through the unit".into(),
        });
    }
    let images: Result<Vec<FrameElement>> = target
        .frame()
        .irreducibles()
        .map(|q| reflection.encode(&f.apply(&q)))
        .collect();
    let flat = FrameHom::try_new(target.frame(), reflection.frame(), images?)?;
    debug_assert!(flat.then(reflection.include()) == *f);
    Ok(flat)
}
