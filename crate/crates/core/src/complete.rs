//! Completions of pre-uniform locales: reflect, then classify regular
//! Cauchy filters. Also: factoring strongly dense embeddings through the
//! completion, the lifting criterion for plain locale maps, and finite
//! product preservation.

use std::fmt;

use crate::cauchy::{cauchy_locale, CauchyLocale};
use crate::cover::CoverDownset;
use crate::error::{CoreError, Result};
use crate::frame::{FiniteFrame, FrameElement};
use crate::hom::FrameHom;
use crate::reflect::{factor_through_unit, uniform_reflection, Reflection};
use crate::relation::{coproduct_hom, product_right_adjoint, ProductFrame, Relation};
use crate::uniform::{
    initial_uniformity, is_uniform_embedding, is_uniform_morphism, PreUniformLocale,
};

pub struct Completion {
    source: PreUniformLocale,
    reflection: Reflection,
    cauchy: CauchyLocale,
    completed: PreUniformLocale,
    /// Frame map of the unit: completed frame → source frame.
    unit: FrameHom,
}

impl Completion {
    pub fn source(&self) -> &PreUniformLocale {
        &self.source
    }

    pub fn reflection(&self) -> &Reflection {
        &self.reflection
    }

    pub fn cauchy(&self) -> &CauchyLocale {
        &self.cauchy
    }

    /// The completed uniform locale.
    pub fn completed(&self) -> &PreUniformLocale {
        &self.completed
    }

    pub fn frame(&self) -> &FiniteFrame {
        self.completed.frame()
    }

    /// Frame map of the unit `X → 𝒞X` (through the reflection when the
    /// input was not yet uniform).
    pub fn unit(&self) -> &FrameHom {
        &self.unit
    }

    /// Right adjoint of the unit on a source element.
    pub fn unit_adjoint(&self, a: &FrameElement) -> FrameElement {
        self.unit.right_adjoint(a)
    }

    /// The unit is an isomorphism exactly when the input was already a
    /// complete uniform locale.
    pub fn unit_is_iso(&self) -> Result<bool> {
        self.unit.is_isomorphism()
    }
}

impl fmt::Debug for Completion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Completion({:?} → {:?})",
            self.source.frame(),
            self.completed.frame()
        )
    }
}

/// Completes a pre-uniform locale.
///
/// The returned structure is admissible; the map from the reflected part
/// into it is a strongly dense uniform embedding, and the composite unit is
/// strongly dense. All three facts are checked here rather than assumed.
pub fn completion(structure: &PreUniformLocale) -> Result<Completion> {
    let reflection = uniform_reflection(structure)?;
    let cauchy = cauchy_locale(reflection.reflected(), true)?;
    let completed = cauchy.uniformity()?;
    if !completed.is_admissible() {
        return Err(CoreError::Unsupported(
            "completed uniformity failed admissibility".into(),
        ));
    }
    cauchy.counit().strongly_dense_certificate()?;
    if !is_uniform_embedding(cauchy.counit(), reflection.reflected(), &completed)? {
        return Err(CoreError::NotUniformEmbedding {
            reason: "canonical embedding into the completion".into(),
        });
    }
    let unit = cauchy.counit().then(reflection.include());
    Ok(Completion {
        source: structure.clone(),
        reflection,
        cauchy,
        completed,
        unit,
    })
}

/// Factors the completion embedding through a strongly dense uniform
/// embedding `j: X ↪ Y`: produces `k: Y ↪ 𝒞X` with `k ∘ j = γ` at the
/// locale level, itself a strongly dense uniform embedding.
///
/// `j` is the frame map `O Y → O X`; the result maps the completed frame of
/// `X` into `O Y`.
pub fn factor_dense_embedding(
    j: &FrameHom,
    x: &PreUniformLocale,
    y: &PreUniformLocale,
    cx: &Completion,
) -> Result<FrameHom> {
    if j.source() != y.frame() || j.target() != x.frame() {
        return Err(CoreError::FrameMismatch);
    }
    j.strongly_dense_certificate()?;
    if !is_uniform_morphism(j, x, y)? {
        return Err(CoreError::NotUniformMorphism {
            reason: "dense factorization input".into(),
        });
    }
    if !is_uniform_embedding(j, x, y)? {
        return Err(CoreError::NotUniformEmbedding {
            reason: "dense factorization input".into(),
        });
    }
    // k sends the generator [a ∈ F] to j_*(a), extended over C-ideals
    let include = cx.reflection().include().clone();
    let k = cx
        .cauchy()
        .presented()
        .hom_from_class_values(y.frame(), |cls| {
            let a = include.apply(&cx.cauchy().class_element(cls));
            j.right_adjoint(&a)
        })?;
    // k ∘ j = γ at the frame level
    if k.then(j) != *cx.unit() {
        return Err(CoreError::Unsupported(
            "factorization does not restrict to the unit".into(),
        ));
    }
    k.strongly_dense_certificate()?;
    if !is_uniform_embedding(&k, y, cx.completed())? {
        return Err(CoreError::NotUniformEmbedding {
            reason: "factored map".into(),
        });
    }
    Ok(k)
}

/// Outcome of the lifting criterion for a plain locale map between
/// pre-uniform locales.
pub enum LiftOutcome {
    /// The lift exists; `map` is its frame map, from the completed frame of
    /// the target to the completed frame of the source.
    Lifted { map: FrameHom },
    /// The criterion fails at the named base cover or entourage.
    Failed { witness: String },
}

impl LiftOutcome {
    pub fn lifted(&self) -> Option<&FrameHom> {
        match self {
            LiftOutcome::Lifted { map } => Some(map),
            LiftOutcome::Failed { .. } => None,
        }
    }
}

impl fmt::Debug for LiftOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftOutcome::Lifted { .. } => write!(f, "Lifted"),
            LiftOutcome::Failed { witness } => write!(f, "Failed at {witness}"),
        }
    }
}

/// Decides whether a locale map `f: X → Y` (frame map `O Y → O X`) lifts to
/// the completions, by the cover criterion (the composite of `f` with the
/// unit's right adjoint sends uniform covers to covers) and the entourage
/// criterion (entourages pull back to reflexive relations); the two verdicts
/// must agree. On success the lift is returned with its commuting square
/// checked.
pub fn lift_map(f: &FrameHom, cx: &Completion, cy: &Completion) -> Result<LiftOutcome> {
    let x = cx.source();
    let y = cy.source();
    if f.source() != y.frame() || f.target() != x.frame() {
        return Err(CoreError::FrameMismatch);
    }
    let y_covers = y.with_covers()?;

    // cover criterion
    let mut cover_witness = None;
    for u in y_covers.covers().unwrap().base() {
        let mut join = cx.frame().bottom();
        for g in u.generators() {
            join = join.join(&cx.unit_adjoint(&f.apply(g)));
        }
        if !join.is_top() {
            cover_witness = Some(u.to_string());
            break;
        }
    }

    // entourage criterion
    let y_ent = y.with_entourages()?;
    let x_square = cx.source().square();
    let c_square = ProductFrame::square(cx.frame())?;
    let ff = coproduct_hom(f, f, y_ent.entourages().unwrap().square(), x_square);
    let mut entourage_witness = None;
    for e in y_ent.entourages().unwrap().base() {
        let pulled = ff.apply(e.element());
        let adj = product_right_adjoint(cx.unit(), cx.unit(), &c_square, x_square, &pulled)?;
        let rel = Relation::new(&c_square, adj)?;
        if !rel.is_reflexive() {
            entourage_witness = Some(e.to_string());
            break;
        }
    }

    debug_assert_eq!(
        cover_witness.is_none(),
        entourage_witness.is_none(),
        "cover and entourage lifting criteria disagree"
    );
    if let Some(w) = cover_witness.or(entourage_witness) {
        return Ok(LiftOutcome::Failed { witness: w });
    }

    // build the lift on generators: [b ∈ F] ↦ ⋁{unit_*(f(c)) | c ◁ b}
    let include_y = cy.reflection().include().clone();
    let y_elems = y.frame().elements()?;
    let map = cy
        .cauchy()
        .presented()
        .hom_from_class_values(cx.frame(), |cls| {
            let b = include_y.apply(&cy.cauchy().class_element(cls));
            let mut acc = cx.frame().bottom();
            for c in &y_elems {
                if y_covers.uniformly_below(c, &b) {
                    acc = acc.join(&cx.unit_adjoint(&f.apply(c)));
                }
            }
            acc
        })?;
    // commuting square through the units
    if map.then(cx.unit()) != cy.unit().then(f) {
        return Err(CoreError::Unsupported(
            "lift does not commute with the units".into(),
        ));
    }
    Ok(LiftOutcome::Lifted { map })
}

/// The functorial lift of a uniform morphism: `[b ∈ F] ↦ [f♭(b) ∈ F]`.
pub fn functorial_lift(f: &FrameHom, cx: &Completion, cy: &Completion) -> Result<FrameHom> {
    if !is_uniform_morphism(f, cx.source(), cy.source())? {
        return Err(CoreError::NotUniformMorphism {
            reason: "functorial lift needs a uniform morphism".into(),
        });
    }
    // factor f through the reflection of X, landing in the reflected Y
    let include_y = cy.reflection().include().clone();
    let flat = factor_through_unit(
        &include_y.then(f),
        cx.reflection(),
        cy.reflection().reflected(),
    )?;
    cy.cauchy()
        .presented()
        .hom_from_class_values(cx.frame(), |cls| {
            let b = cy.cauchy().class_element(cls);
            cx.cauchy()
                .point(&flat.apply(&b))
                .expect("reflected element is a generator")
        })
}

/// Product-preservation witness: the canonical comparison between the
/// completion of a product and the product of the completions.
pub struct ProductPreservation {
    pub product: Completion,
    pub left: Completion,
    pub right: Completion,
    pub product_of_completions: PreUniformLocale,
    /// Frame map from the product-of-completions frame to the completed
    /// product frame.
    pub comparison: FrameHom,
    pub is_iso: bool,
}

/// Completes `X × Y` (with the initial uniformity along the projections)
/// and compares it with the product of the completions.
pub fn check_product_preservation(
    x: &PreUniformLocale,
    y: &PreUniformLocale,
) -> Result<ProductPreservation> {
    let xy = ProductFrame::new(x.frame(), y.frame())?;
    let p1 = xy.proj1_hom();
    let p2 = xy.proj2_hom();
    let xy_structure = initial_uniformity(xy.frame(), &[(&p1, x), (&p2, y)])?;

    let product = completion(&xy_structure)?;
    let left = completion(x)?;
    let right = completion(y)?;

    let cc = ProductFrame::new(left.frame(), right.frame())?;
    let c1 = cc.proj1_hom();
    let c2 = cc.proj2_hom();
    let product_of_completions = initial_uniformity(
        cc.frame(),
        &[(&c1, left.completed()), (&c2, right.completed())],
    )?;

    // lift the projections and pair them
    let lift1 = match lift_map(&p1, &product, &left)? {
        LiftOutcome::Lifted { map } => map,
        LiftOutcome::Failed { witness } => {
            return Err(CoreError::Unsupported(format!(
                "projection fails to lift at {witness}"
            )))
        }
    };
    let lift2 = match lift_map(&p2, &product, &right)? {
        LiftOutcome::Lifted { map } => map,
        LiftOutcome::Failed { witness } => {
            return Err(CoreError::Unsupported(format!(
                "projection fails to lift at {witness}"
            )))
        }
    };
    let images = (0..cc.frame().irr_count())
        .map(|k| {
            let (i, j) = cc.unpair(k);
            lift1
                .apply(&left.frame().irreducible(i))
                .meet(&lift2.apply(&right.frame().irreducible(j)))
        })
        .collect();
    let comparison = FrameHom::try_new(cc.frame(), product.frame(), images)?;
    let is_iso = comparison.is_isomorphism()?
        && is_uniform_morphism(&comparison, product.completed(), &product_of_completions)?
        && is_uniform_morphism(
            &comparison.inverse()?,
            &product_of_completions,
            product.completed(),
        )?;
    Ok(ProductPreservation {
        product,
        left,
        right,
        product_of_completions,
        comparison,
        is_iso,
    })
}

/// The completed uniformity expressed as covers `↓γ_*[U]`; used by reports.
pub fn completed_base_covers(c: &Completion) -> Result<Vec<CoverDownset>> {
    Ok(c.completed()
        .covers()
        .expect("completion carries covers")
        .base()
        .to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(names: &[&str]) -> PreUniformLocale {
        PreUniformLocale::discrete(&FiniteFrame::discrete(names)).unwrap()
    }

    fn chaotic2() -> PreUniformLocale {
        PreUniformLocale::chaotic(&FiniteFrame::discrete(&["a", "b"]))
    }

    #[test]
    fn complete_discrete_two_unit_is_iso() {
        let c = completion(&disc(&["a", "b"])).unwrap();
        assert!(c.unit_is_iso().unwrap());
        assert!(c.completed().is_admissible());
    }

    #[test]
    fn complete_chaotic_two_is_a_point() {
        let c = completion(&chaotic2()).unwrap();
        assert_eq!(c.frame().elements().unwrap().len(), 2);
        assert!(c.unit().is_strongly_dense());
    }

    #[test]
    fn complete_terminal_is_terminal() {
        let pt = PreUniformLocale::chaotic(&FiniteFrame::discrete(&["pt"]));
        let c = completion(&pt).unwrap();
        assert!(c.unit_is_iso().unwrap());
    }

    #[test]
    fn completion_is_idempotent() {
        for s in [disc(&["a", "b"]), chaotic2(), disc(&["a", "b", "c"])] {
            let c1 = completion(&s).unwrap();
            let c2 = completion(c1.completed()).unwrap();
            assert!(c2.unit_is_iso().unwrap());
        }
    }

    #[test]
    fn factor_identity_embedding_reproduces_unit() {
        let s = disc(&["a", "b"]);
        let c = completion(&s).unwrap();
        let id = FrameHom::identity(s.frame());
        let k = factor_dense_embedding(&id, &s, &s, &c).unwrap();
        assert_eq!(&k, c.unit());
    }

    #[test]
    fn factor_unit_embedding_gives_isomorphism() {
        let s = disc(&["a", "b"]);
        let c = completion(&s).unwrap();
        let k = factor_dense_embedding(c.unit(), &s, c.completed(), &c).unwrap();
        assert!(k.is_isomorphism().unwrap());
    }

    #[test]
    fn lift_of_identity_is_identity() {
        let s = disc(&["a", "b"]);
        let c = completion(&s).unwrap();
        let id = FrameHom::identity(s.frame());
        let out = lift_map(&id, &c, &completion(&s).unwrap()).unwrap();
        let map = out.lifted().expect("identity lifts");
        assert!(map.is_isomorphism().unwrap());
    }

    #[test]
    fn uniform_morphisms_lift_and_match_the_functorial_lift() {
        let s = disc(&["a", "b"]);
        let chaotic = PreUniformLocale::chaotic(s.frame());
        let cx = completion(&s).unwrap();
        let cy = completion(&chaotic).unwrap();
        let id = FrameHom::identity(s.frame());
        // the identity is uniform from discrete to chaotic
        let out = lift_map(&id, &cx, &cy).unwrap();
        let map = out.lifted().expect("uniform morphisms lift").clone();
        let func = functorial_lift(&id, &cx, &cy).unwrap();
        assert_eq!(map, func);
    }

    #[test]
    fn non_uniform_map_with_failing_criterion() {
        // from the chaotic structure to the discrete one the identity is not
        // uniform, and the criterion fails on the atom cover
        let s = disc(&["a", "b"]);
        let chaotic = PreUniformLocale::chaotic(s.frame());
        let cx = completion(&chaotic).unwrap();
        let cy = completion(&s).unwrap();
        let id = FrameHom::identity(s.frame());
        let out = lift_map(&id, &cx, &cy).unwrap();
        assert!(matches!(out, LiftOutcome::Failed { .. }));
    }

    #[test]
    fn product_preservation_discrete_pair() {
        let s = disc(&["a", "b"]);
        let t = disc(&["x", "y"]);
        let w = check_product_preservation(&s, &t).unwrap();
        assert!(w.is_iso);
        assert_eq!(w.product.frame().elements().unwrap().len(), 16);
    }

    #[test]
    fn product_preservation_with_a_point_factor() {
        let s = chaotic2();
        let t = disc(&["x", "y"]);
        let w = check_product_preservation(&s, &t).unwrap();
        assert!(w.is_iso);
        // ΥS is a point, so both sides are the completion of T
        assert_eq!(w.product.frame().elements().unwrap().len(), 4);
    }

    #[test]
    fn product_preservation_terminal_pair() {
        let pt = PreUniformLocale::chaotic(&FiniteFrame::discrete(&["p"]));
        let w = check_product_preservation(&pt, &pt).unwrap();
        assert!(w.is_iso);
    }
}
