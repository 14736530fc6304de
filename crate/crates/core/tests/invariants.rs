//! Structure-level invariants that sit between the unit tests and the
//! acceptance gate: exercised on the sampled corpus.

use uniloc_core::cauchy::cauchy_locale;
use uniloc_core::complete::completion;
use uniloc_core::corpus::{fixture_morphisms, sample_uniformities, uniform_corpus};
use uniloc_core::cover::CoverDownset;
use uniloc_core::frame::{FiniteFrame, FrameElement};
use uniloc_core::hom::FrameHom;
use uniloc_core::relation::{coproduct_hom, ProductFrame};
use uniloc_core::uniform::{initial_uniformity, is_uniform_morphism, PreUniformLocale};

const SEED: u64 = 0xFACADE;

#[test]
fn star_inflation_on_corpus_covers() {
    for s in sample_uniformities(SEED, 30) {
        for u in s.covers().unwrap().base() {
            for g in u.generators() {
                assert!(g.leq(&u.star(g)), "star inflates {g}");
            }
        }
    }
}

#[test]
fn uniform_morphisms_preserve_uniformly_below() {
    for (name, f, src, tgt) in fixture_morphisms() {
        let elems = tgt.frame().elements().unwrap();
        for a in &elems {
            for b in &elems {
                if tgt.uniformly_below(a, b) {
                    assert!(
                        src.uniformly_below(&f.apply(a), &f.apply(b)),
                        "{name} fails to preserve {a} ◁ {b}"
                    );
                }
            }
        }
    }
}

/// All frame homomorphisms between two small frames, by exhaustive search
/// over irreducible images.
fn all_homs(source: &FiniteFrame, target: &FiniteFrame) -> Vec<FrameHom> {
    let targets = target.elements().unwrap();
    let n = source.irr_count();
    let mut out = Vec::new();
    let mut picks = vec![0usize; n];
    loop {
        let images: Vec<FrameElement> = picks.iter().map(|&i| targets[i].clone()).collect();
        if let Ok(h) = FrameHom::try_new(source, target, images) {
            out.push(h);
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            picks[k] += 1;
            if picks[k] < targets.len() {
                break;
            }
            picks[k] = 0;
            k += 1;
        }
        if n == 0 {
            return out;
        }
    }
}

#[test]
fn strongly_dense_uniform_maps_are_epic() {
    // g ∘ f = h ∘ f with f strongly dense forces g = h; contrapositively,
    // distinct maps stay distinct after composing with a strongly dense one.
    let x = PreUniformLocale::discrete(&FiniteFrame::discrete(&["a", "b"])).unwrap();
    let cx = completion(&x).unwrap();
    let m = cx.unit().clone(); // strongly dense frame map O𝒞X → O X
    let z = FiniteFrame::discrete(&["u", "v"]);
    let homs = all_homs(&z, cx.unit().source());
    assert!(homs.len() > 1);
    for g in &homs {
        for h in &homs {
            if g != h {
                assert_ne!(g.then(&m), h.then(&m), "epic composition collapsed");
            }
        }
    }
}

#[test]
fn product_of_strongly_dense_maps_is_strongly_dense() {
    let mut dense: Vec<FrameHom> = Vec::new();
    let two = FiniteFrame::discrete(&["t"]);
    let b4 = FiniteFrame::discrete(&["a", "b"]);
    dense.push(FrameHom::identity(&b4));
    dense.push(FrameHom::try_new(&two, &b4, vec![b4.top()]).unwrap());
    for f in &dense {
        for g in &dense {
            assert!(f.is_strongly_dense() && g.is_strongly_dense());
            let src = ProductFrame::new(f.source(), g.source()).unwrap();
            let tgt = ProductFrame::new(f.target(), g.target()).unwrap();
            let fg = coproduct_hom(f, g, &src, &tgt);
            assert!(fg.is_strongly_dense());
        }
    }
}

#[test]
fn initial_uniformity_universal_property() {
    // maps into the lifted structure are uniform as soon as all composites
    // with the lifting family are
    let discrete = PreUniformLocale::discrete(&FiniteFrame::discrete(&["a", "b"])).unwrap();
    let chaotic = PreUniformLocale::chaotic(discrete.frame());
    let id = FrameHom::identity(discrete.frame());
    let family = [(&id, &discrete), (&id, &chaotic)];
    let lift = initial_uniformity(discrete.frame(), &family).unwrap();
    // every f_i is uniform into its own structure
    for (f, s) in family {
        assert!(is_uniform_morphism(f, &lift, s).unwrap());
    }
    let z = PreUniformLocale::discrete(&FiniteFrame::discrete(&["u", "v"])).unwrap();
    for g in all_homs(discrete.frame(), z.frame()) {
        let composites_uniform = family
            .iter()
            .all(|(f, s)| is_uniform_morphism(&f.then(&g), &z, s).unwrap());
        if composites_uniform {
            assert!(
                is_uniform_morphism(&g, &z, &lift).unwrap(),
                "universal property of the initial lift"
            );
        }
    }
}

#[test]
fn least_member_test_matches_existential_filter_test() {
    // a ◁ b asks for SOME filter entourage E with E∘(a⊕a) ≤ b⊕b; on a
    // finite square every filter member can be enumerated, and the verdict
    // must match the least-member shortcut
    use uniloc_core::relation::Relation;
    for s in sample_uniformities(SEED ^ 0x1f, 20) {
        if s.frame().irr_count() > 2 {
            continue;
        }
        let sq = s.square();
        let min = s.entourages().unwrap().min_member();
        let filter_members: Vec<Relation> = sq
            .frame()
            .elements()
            .unwrap()
            .into_iter()
            .filter_map(|e| Relation::new(sq, e).ok())
            .filter(|r| min.leq(r))
            .collect();
        let elems = s.frame().elements().unwrap();
        for a in &elems {
            for b in &elems {
                let aa = Relation::new(sq, sq.inject(a, a)).unwrap();
                let bb = sq.inject(b, b);
                let existential = filter_members
                    .iter()
                    .any(|e| e.compose(&aa).unwrap().element().leq(&bb));
                assert_eq!(existential, s.uniformly_below(a, b), "at {a} ◁ {b}");
            }
        }
    }
}

#[test]
fn reflected_uniformity_is_the_final_one() {
    // a cover of the reflected frame is uniform exactly when its inclusion
    // image is a uniform cover downstairs; enumerate all candidate covers
    use uniloc_core::reflect::uniform_reflection;
    for s in sample_uniformities(SEED ^ 0x51, 25) {
        if s.frame().irr_count() > 3 {
            continue;
        }
        let refl = uniform_reflection(&s).unwrap();
        let r_frame = refl.frame().clone();
        let positives: Vec<FrameElement> = r_frame
            .elements()
            .unwrap()
            .into_iter()
            .filter(|e| e.is_positive())
            .collect();
        let source_min = s.covers().unwrap().min_member().clone();
        let reflected_min = refl.reflected().covers().unwrap().min_member().clone();
        for raw in 1u32..(1 << positives.len()) {
            let gens: Vec<FrameElement> = positives
                .iter()
                .enumerate()
                .filter(|(i, _)| raw >> i & 1 == 1)
                .map(|(_, e)| e.clone())
                .collect();
            let Ok(candidate) = CoverDownset::new(&r_frame, gens) else {
                continue;
            };
            let image = CoverDownset::new(
                s.frame(),
                candidate
                    .generators()
                    .iter()
                    .map(|g| refl.include().apply(g))
                    .collect(),
            )
            .unwrap();
            // candidate is a uniform cover of the reflection iff its image
            // contains the least uniform cover of the source
            let image_uniform = source_min.refines(&image);
            let candidate_uniform = reflected_min.refines(&candidate);
            assert_eq!(
                image_uniform, candidate_uniform,
                "finality of the reflected filter"
            );
        }
    }
}

#[test]
fn lifting_criterion_agrees_with_the_functorial_lift() {
    use uniloc_core::complete::{functorial_lift, lift_map, LiftOutcome};
    for (name, f, src, tgt) in fixture_morphisms() {
        let cx = completion(&src).unwrap();
        let cy = completion(&tgt).unwrap();
        match lift_map(&f, &cx, &cy).unwrap() {
            LiftOutcome::Lifted { map } => {
                let func = functorial_lift(&f, &cx, &cy).unwrap();
                assert_eq!(map, func, "lift differs from the functorial one at {name}");
            }
            LiftOutcome::Failed { witness } => {
                panic!("uniform morphism {name} failed to lift at {witness}");
            }
        }
    }
}

#[test]
fn unit_adjoint_pair_and_positivity() {
    for s in uniform_corpus(SEED, 40, 3) {
        let c = completion(&s).unwrap();
        let elems = s.frame().elements().unwrap();
        for a in &elems {
            // counit after its right adjoint is the identity downstairs
            assert_eq!(c.unit().apply(&c.unit_adjoint(a)), *a);
            if a.is_positive() {
                assert!(c.unit_adjoint(a).is_positive(), "adjoint keeps positivity");
            }
        }
    }
}

#[test]
fn right_adjoint_of_dense_embedding_is_a_regular_cauchy_filter() {
    // the right adjoint of the completion embedding satisfies the filter
    // laws semantically: meets, top, properness, Cauchy-ness, regularity
    for s in uniform_corpus(SEED, 40, 3) {
        let c = completion(&s).unwrap();
        let elems = s.frame().elements().unwrap();
        let point = |a: &FrameElement| c.unit_adjoint(a);
        assert!(point(&s.frame().top()).is_top());
        assert!(point(&s.frame().bottom()).is_bottom());
        for a in &elems {
            for b in &elems {
                assert_eq!(point(&a.meet(b)), point(a).meet(&point(b)));
            }
        }
        for u in s.covers().unwrap().base() {
            let mut join = c.frame().bottom();
            for g in u.generators() {
                join = join.join(&point(g));
            }
            assert!(join.is_top(), "filter meets every uniform cover");
        }
        for a in &elems {
            let mut approx = c.frame().bottom();
            for b in &elems {
                if s.uniformly_below(b, a) {
                    approx = approx.join(&point(b));
                }
            }
            assert!(point(a).leq(&approx), "regularity of the indexed filter");
        }
    }
}

#[test]
fn dense_embedding_images_form_a_base() {
    // the images of base covers under the unit's right adjoint refine into
    // the completed base and back
    for s in uniform_corpus(SEED, 40, 3) {
        let c = completion(&s).unwrap();
        let completed_min = c.completed().covers().unwrap().min_member().clone();
        let mut image_covers: Vec<CoverDownset> = Vec::new();
        for u in s.covers().unwrap().base() {
            let gens: Vec<FrameElement> =
                u.generators().iter().map(|g| c.unit_adjoint(g)).collect();
            image_covers.push(CoverDownset::new(c.frame(), gens).unwrap());
        }
        // mutual refinement against the completed uniformity's least member
        assert!(
            image_covers.iter().any(|ic| ic.refines(&completed_min))
                || image_covers.iter().any(|ic| completed_min.refines(ic))
        );
        for ic in &image_covers {
            assert!(
                completed_min.refines(ic),
                "image covers are uniform covers of the completion"
            );
        }
    }
}

#[test]
fn cauchy_counit_agrees_with_generator_images() {
    for s in uniform_corpus(SEED, 20, 3) {
        let c = cauchy_locale(&s, true).unwrap();
        for a in s.frame().elements().unwrap() {
            assert_eq!(c.counit().right_adjoint(&a), c.point(&a).unwrap());
        }
    }
}
