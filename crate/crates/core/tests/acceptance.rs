//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::HashSet;

use num::{BigRational, One};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use uniloc_core::cauchy::reflect_cauchy;
use uniloc_core::complete::{check_product_preservation, completion, factor_dense_embedding};
use uniloc_core::corpus::{
    fixture_morphisms, sample_metric_spaces, sample_uniformities, uniform_corpus,
};
use uniloc_core::frame::{FiniteFrame, FrameElement};
use uniloc_core::group::{group_entourage, group_uniformity, FiniteGroup, GroupHom, GroupSide};
use uniloc_core::hom::FrameHom;
use uniloc_core::metric::{is_nonexpansive, metric_uniformity, point_map_hom, MetricSpace};
use uniloc_core::poset::IrrSet;
use uniloc_core::present::{present_frame, FramePresentation, GenMask, Generator, PresRelation};
use uniloc_core::realnum::{embed_rational, real_add, real_mul};
use uniloc_core::realopen::{
    covered_by_width, cut_to_open, interval_to_cuts, real_uniformly_below, RealOpen,
};
use uniloc_core::reflect::{conucleus, factor_through_unit, uniform_reflection};
use uniloc_core::relation::{ProductFrame, Relation};
use uniloc_core::uniform::{
    covers_to_entourages, entourages_to_covers, is_uniform_morphism, PreUniformLocale,
};

const SEED: u64 = 0xC0FFEE;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Uniformly-below in the cover presentation only.
fn below_via_covers(s: &PreUniformLocale, a: &FrameElement, b: &FrameElement) -> bool {
    s.covers().unwrap().min_member().star(a).leq(b)
}

/// Uniformly-below in the entourage presentation only.
fn below_via_entourages(s: &PreUniformLocale, a: &FrameElement, b: &FrameElement) -> bool {
    let sq = s.square();
    let aa = Relation::new(sq, sq.inject(a, a)).unwrap();
    let e = s.entourages().unwrap().min_member();
    e.compose(&aa).unwrap().element().leq(&sq.inject(b, b))
}

#[test]
fn criterion_1_conversion_round_trips() {
    let corpus = sample_uniformities(SEED, 50);
    assert!(corpus.len() >= 50, "corpus too small: {}", corpus.len());
    for s in &corpus {
        assert!(s.frame().irr_count() <= 4);
        let cov = s.covers().unwrap();
        let ent = covers_to_entourages(cov).unwrap();
        let back = entourages_to_covers(&ent).unwrap();
        assert!(back.filter_equal(cov), "cover round trip at {s:?}");

        let ent0 = s.entourages().unwrap();
        let cov0 = entourages_to_covers(ent0).unwrap();
        let ent_back = covers_to_entourages(&cov0).unwrap();
        assert!(ent_back.filter_equal(ent0), "entourage round trip at {s:?}");
    }
    println!(
        "criterion 1 (conversion round trips, {} structures): pass",
        corpus.len()
    );
}

#[test]
fn criterion_2_uniformly_below_coincidence_and_laws() {
    let corpus = sample_uniformities(SEED, 50);
    let mut pairs_checked = 0usize;
    for s in &corpus {
        let elems = s.frame().elements().unwrap();
        // coincidence of the two forms on every element pair
        for a in &elems {
            for b in &elems {
                assert_eq!(
                    below_via_covers(s, a, b),
                    below_via_entourages(s, a, b),
                    "forms disagree at {a} ◁ {b} in {s:?}"
                );
                pairs_checked += 1;
            }
        }
        // index the elements and precompute the ◁ matrix once
        let n = elems.len();
        let idx = |e: &FrameElement| -> usize { elems.iter().position(|x| x == e).unwrap() };
        let mut below = vec![vec![false; n]; n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                below[i][j] = s.uniformly_below(a, b);
            }
        }
        // ≤ ∘ ◁ ∘ ≤ ⊆ ◁ ⊆ ≤ and interpolation
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                if !below[i][j] {
                    continue;
                }
                assert!(a.leq(b), "◁ ⊆ ≤");
                assert!(
                    (0..n).any(|k| below[i][k] && below[k][j]),
                    "interpolation fails at {a} ◁ {b}"
                );
                for (i2, a2) in elems.iter().enumerate() {
                    for (j2, b2) in elems.iter().enumerate() {
                        if a2.leq(a) && b.leq(b2) {
                            assert!(below[i2][j2], "≤∘◁∘≤ ⊆ ◁");
                        }
                    }
                }
            }
        }
        // sublattice: endpoints and closure under meets and joins
        assert!(below[idx(&s.frame().bottom())][idx(&s.frame().bottom())]);
        assert!(below[idx(&s.frame().top())][idx(&s.frame().top())]);
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                if !below[i][j] {
                    continue;
                }
                for (k, c) in elems.iter().enumerate() {
                    for (l, d) in elems.iter().enumerate() {
                        if below[k][l] {
                            assert!(below[idx(&a.meet(c))][idx(&b.meet(d))], "meet closure");
                            assert!(below[idx(&a.join(c))][idx(&b.join(d))], "join closure");
                        }
                    }
                }
            }
        }
    }
    println!("criterion 2 (uniformly-below coincidence and laws, {pairs_checked} pairs): pass");
}

#[test]
fn criterion_3_reflection() {
    let corpus = sample_uniformities(SEED, 50);
    for s in &corpus {
        let elems = s.frame().elements().unwrap();
        // conucleus laws, exhaustively
        for b in &elems {
            let rb = conucleus(s, b);
            assert!(rb.leq(b), "deflationary");
            assert_eq!(conucleus(s, &rb), rb, "idempotent");
            for b2 in &elems {
                if b.leq(b2) {
                    assert!(rb.leq(&conucleus(s, b2)), "monotone");
                }
                assert_eq!(
                    conucleus(s, &b.meet(b2)),
                    rb.meet(&conucleus(s, b2)),
                    "meet preservation"
                );
            }
        }
        assert!(conucleus(s, &s.frame().top()).is_top(), "r(1) = 1");

        let refl = uniform_reflection(s).unwrap();
        assert!(refl.reflected().is_admissible(), "reflected admissibility");
        let again = uniform_reflection(refl.reflected()).unwrap();
        assert!(again.unit_is_iso().unwrap(), "idempotence of reflection");
    }
    // factorization through the unit, with uniqueness from injectivity of
    // the inclusion
    for (name, f, src, tgt) in fixture_morphisms() {
        let refl = uniform_reflection(&src).unwrap();
        let flat = factor_through_unit(&f, &refl, &tgt).unwrap();
        assert_eq!(flat.then(refl.include()), f, "factorization at {name}");
        assert!(
            refl.include().is_injective().unwrap(),
            "unit inclusion injective (uniqueness) at {name}"
        );
        assert!(
            is_uniform_morphism(&flat, refl.reflected(), &tgt).unwrap(),
            "factored map uniform at {name}"
        );
    }
    println!("criterion 3 (reflection laws, admissibility, idempotence, factorization): pass");
}

#[test]
fn criterion_4_completion_suite() {
    let corpus = uniform_corpus(SEED, 60, 3);
    assert!(
        corpus.len() >= 10,
        "uniform corpus too small: {}",
        corpus.len()
    );
    // whether every finite uniform locale is already complete is recorded
    // empirically, not assumed
    let mut unit_iso_count = 0usize;
    for s in &corpus {
        let c = completion(s).unwrap();
        if c.unit_is_iso().unwrap() {
            unit_iso_count += 1;
        }
        // the completion constructor certifies: admissibility of the result,
        // strong density of the embedding, and the uniform-embedding property
        assert!(c.completed().is_admissible());
        assert!(c.unit().is_strongly_dense());

        // the regular Cauchy locale is the uniform reflection of the plain
        // one, through the stated adjoint pair
        let w = reflect_cauchy(s).unwrap();
        assert!(w.forward.is_isomorphism().unwrap());
        assert!(w.backward.is_isomorphism().unwrap());

        // idempotence
        let c2 = completion(c.completed()).unwrap();
        assert!(c2.unit_is_iso().unwrap(), "second unit is an isomorphism");

        // factoring dense embeddings reproduces the unit
        let id = FrameHom::identity(s.frame());
        let k = factor_dense_embedding(&id, s, s, &c).unwrap();
        assert_eq!(&k, c.unit(), "identity embedding reproduces the unit");
        let k2 = factor_dense_embedding(c.unit(), s, c.completed(), &c).unwrap();
        assert!(
            k2.is_isomorphism().unwrap(),
            "unit embedding factors to an isomorphism"
        );
    }
    // product preservation on five pairs
    let pairs = [(0usize, 1usize), (0, 0), (1, 2), (2, 3), (3, 4)];
    let pool: Vec<PreUniformLocale> = vec![
        PreUniformLocale::discrete(&FiniteFrame::discrete(&["a", "b"])).unwrap(),
        PreUniformLocale::chaotic(&FiniteFrame::discrete(&["a", "b"])),
        PreUniformLocale::chaotic(&FiniteFrame::discrete(&["p"])),
        PreUniformLocale::discrete(&FiniteFrame::discrete(&["x", "y"])).unwrap(),
        PreUniformLocale::discrete(&FiniteFrame::discrete(&["u"])).unwrap(),
    ];
    for (i, j) in pairs {
        let w = check_product_preservation(&pool[i], &pool[j]).unwrap();
        assert!(w.is_iso, "product preservation at pair ({i}, {j})");
    }
    println!(
        "criterion 4 (completion suite, {} structures + 5 product pairs; unit iso on {}/{}): pass",
        corpus.len(),
        unit_iso_count,
        corpus.len()
    );
}

fn oracle_matches(p: &FramePresentation) {
    let pf = present_frame(p.clone()).unwrap();
    let (fdl, classes, count) = common::congruence_classes(p);
    let n_elems = pf.frame().elements().unwrap().len();
    assert_eq!(count, n_elems, "element counts differ");
    // evaluate every free-lattice element into the presented frame; the
    // induced map must be constant on classes and injective across them
    let cells = 1usize << p.generators.len();
    let cell_values: Vec<FrameElement> = (0..cells).map(|s| pf.meet_image(s as GenMask)).collect();
    let mut class_value: Vec<Option<IrrSet>> = vec![None; count];
    for (i, &family) in fdl.elements.iter().enumerate() {
        let mut acc = pf.frame().bottom();
        for (s, v) in cell_values.iter().enumerate() {
            if family >> s & 1 == 1 {
                acc = acc.join(v);
            }
        }
        match &class_value[classes[i]] {
            None => class_value[classes[i]] = Some(acc.set()),
            Some(v) => assert_eq!(*v, acc.set(), "class not constant"),
        }
    }
    let distinct: HashSet<u64> = class_value
        .iter()
        .map(|v| v.expect("class inhabited").bits())
        .collect();
    assert_eq!(distinct.len(), count, "classes collapse in the frame");
}

#[test]
fn criterion_5_presentation_oracle_equivalence() {
    let gens = |n: usize| -> Vec<Generator> {
        (0..n)
            .map(|i| Generator {
                name: format!("g{i}"),
                tag: None,
            })
            .collect()
    };
    let fixtures: Vec<FramePresentation> = vec![
        FramePresentation::new(gens(0), vec![]).unwrap(),
        FramePresentation::new(gens(1), vec![]).unwrap(),
        FramePresentation::new(gens(1), vec![PresRelation::MeetEq(0b1, 0)]).unwrap(),
        FramePresentation::new(
            gens(1),
            vec![
                PresRelation::Cover(0b1, vec![]),
                PresRelation::MeetEq(0b1, 0),
            ],
        )
        .unwrap(),
        // complementary pair: Boolean 4
        FramePresentation::new(
            gens(2),
            vec![
                PresRelation::Cover(0b11, vec![]),
                PresRelation::Cover(0, vec![0b01, 0b10]),
            ],
        )
        .unwrap(),
        // a ≤ b chain
        FramePresentation::new(gens(2), vec![PresRelation::MeetEq(0b11, 0b01)]).unwrap(),
        // three exclusive atoms covering: Boolean 8
        FramePresentation::new(
            gens(3),
            vec![
                PresRelation::Cover(0, vec![0b001, 0b010, 0b100]),
                PresRelation::Cover(0b011, vec![]),
                PresRelation::Cover(0b101, vec![]),
                PresRelation::Cover(0b110, vec![]),
            ],
        )
        .unwrap(),
        // Cauchy-style presentation of the discrete pair, by hand:
        // generators g0 ga gb g1
        FramePresentation::new(
            gens(4),
            vec![
                PresRelation::MeetEq(0b1000, 0),      // g1 = 1
                PresRelation::MeetEq(0b0110, 0b0001), // ga ∧ gb = g0
                PresRelation::MeetEq(0b0011, 0b0001),
                PresRelation::MeetEq(0b0101, 0b0001),
                PresRelation::MeetEq(0b1010, 0b0010),
                PresRelation::MeetEq(0b1100, 0b0100),
                PresRelation::Cover(0b0001, vec![]), // g0 = 0
                PresRelation::Cover(0, vec![0b0010, 0b0100]), // ga ∨ gb = 1
            ],
        )
        .unwrap(),
        // five generators: a ∧ b = c, c ≤ d ∨ e, d ∧ e = 0
        FramePresentation::new(
            gens(5),
            vec![
                PresRelation::MeetEq(0b00011, 0b00100),
                PresRelation::Cover(0b00100, vec![0b01000, 0b10000]),
                PresRelation::Cover(0b11000, vec![]),
            ],
        )
        .unwrap(),
    ];
    let count = fixtures.len();
    for p in &fixtures {
        oracle_matches(p);
    }
    println!("criterion 5 (presentation vs congruence-closure oracle, {count} fixtures): pass");
}

#[test]
fn criterion_6_group_uniformities() {
    let groups = [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(4),
        FiniteGroup::symmetric3(),
    ];
    for g in &groups {
        for side in [GroupSide::Left, GroupSide::Right, GroupSide::TwoSided] {
            let gu = group_uniformity(g, side).unwrap();
            assert!(
                gu.structure.is_admissible(),
                "{side:?} uniformity admissible on {g:?}"
            );
            if g.is_abelian() {
                // entrywise L_u = R_{u⁻¹}; symmetric neighbourhoods give
                // literal equality
                let sq = ProductFrame::square(&gu.frame).unwrap();
                for (u, _) in &gu.entries {
                    let l = group_entourage(g, GroupSide::Left, *u, &sq).unwrap();
                    let u_inv = IrrSet::from_iter(u.iter().map(|x| g.inv(x)));
                    let r = group_entourage(g, GroupSide::Right, u_inv, &sq).unwrap();
                    assert_eq!(l, r, "L_u = R_(u⁻¹) on an abelian group");
                    if *u == u_inv {
                        let r_same = group_entourage(g, GroupSide::Right, *u, &sq).unwrap();
                        assert_eq!(l, r_same, "L_u = R_u for symmetric u");
                    }
                }
                assert!(uniloc_core::group::is_translation_invariant(&gu));
            }
        }
        if g.is_abelian() {
            let l = group_uniformity(g, GroupSide::Left).unwrap();
            let r = group_uniformity(g, GroupSide::Right).unwrap();
            assert!(l.structure.filter_equal(&r.structure).unwrap());
        }
    }
    // homomorphism fixtures are uniform for every side
    let z2 = FiniteGroup::cyclic(2);
    let z4 = FiniteGroup::cyclic(4);
    let s3 = FiniteGroup::symmetric3();
    let sign_table: Vec<usize> = vec![0, 1, 1, 1, 0, 0];
    let homs: Vec<(&FiniteGroup, &FiniteGroup, Vec<usize>, &str)> = vec![
        (&z4, &z2, vec![0, 1, 0, 1], "mod 2"),
        (&z2, &z4, vec![0, 2], "doubling"),
        (&z2, &s3, vec![0, 1], "transposition section"),
        (&s3, &z2, sign_table, "sign"),
        (&s3, &s3, vec![0, 1, 2, 3, 4, 5], "identity"),
    ];
    for (src_g, tgt_g, table, name) in homs {
        let hom = GroupHom::new(src_g, tgt_g, table).unwrap();
        for side in [GroupSide::Left, GroupSide::Right, GroupSide::TwoSided] {
            let src = group_uniformity(src_g, side).unwrap();
            let tgt = group_uniformity(tgt_g, side).unwrap();
            let f = hom.frame_hom(&src.frame, &tgt.frame).unwrap();
            assert!(
                is_uniform_morphism(&f, &src.structure, &tgt.structure).unwrap(),
                "{name} uniform for {side:?}"
            );
        }
    }
    println!("criterion 6 (group uniformities on Z2, Z4, S3): pass");
}

#[test]
fn criterion_7_metric_uniformities() {
    let spaces = sample_metric_spaces(SEED ^ 0x77, 10, 6);
    let two = rat(2, 1);
    for space in &spaces {
        let m = metric_uniformity(space).unwrap();
        for q in &m.thresholds {
            let half = m.entourage_at(&(q / &two));
            assert!(
                half.compose(&half).unwrap().leq(&m.entourage_at(q)),
                "half-composition law at q = {q}"
            );
        }
    }
    // nonexpansive fixtures: constant maps and a collapse
    let src = metric_uniformity(&spaces[0]).unwrap();
    for space in spaces.iter().take(4) {
        let tgt = metric_uniformity(space).unwrap();
        let constant = vec![0usize; src.space.len()];
        assert!(is_nonexpansive(&src.space, &tgt.space, &constant));
        let f = point_map_hom(&src, &tgt, &constant).unwrap();
        assert!(is_uniform_morphism(&f, &src.structure, &tgt.structure).unwrap());
    }
    // a map that expands a zero distance must fail the pullback test
    let glued = MetricSpace::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1), rat(0, 1)],
        ],
    )
    .unwrap();
    let pair = MetricSpace::new(
        vec!["x".into(), "y".into()],
        vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]],
    )
    .unwrap();
    let gsrc = metric_uniformity(&glued).unwrap();
    let gtgt = metric_uniformity(&pair).unwrap();
    let separate = [0usize, 1, 0];
    assert!(!is_nonexpansive(&glued, &pair, &separate));
    let f = point_map_hom(&gsrc, &gtgt, &separate).unwrap();
    assert!(!is_uniform_morphism(&f, &gsrc.structure, &gtgt.structure).unwrap());
    println!(
        "criterion 7 (metric uniformities, {} spaces): pass",
        spaces.len()
    );
}

#[test]
fn criterion_8_reals() {
    // Dedekind round trip on the grid |r|, |s| ≤ 10, denominators ≤ 8
    let mut grid: Vec<BigRational> = Vec::new();
    for den in 1..=8i64 {
        for num in (-10 * den)..=(10 * den) {
            let q = rat(num, den);
            if !grid.contains(&q) {
                grid.push(q);
            }
        }
    }
    grid.sort();
    let mut round_trips = 0usize;
    for (i, r) in grid.iter().enumerate() {
        for s in grid[i + 1..].iter() {
            let (l, u) = interval_to_cuts(r, s);
            let back = cut_to_open(&l).meet(&cut_to_open(&u));
            assert_eq!(back, RealOpen::interval(r.clone(), s.clone()));
            round_trips += 1;
        }
    }

    // presentation relations on 1000 random generator instances
    let mut rng = StdRng::seed_from_u64(SEED ^ 0x8e);
    let rand_rat = |rng: &mut StdRng| -> BigRational {
        let den = rng.gen_range(1..=12i64);
        rat(rng.gen_range(-60 * den..=60 * den), den)
    };
    for _ in 0..1000 {
        let mut ends: Vec<BigRational> = (0..4).map(|_| rand_rat(&mut rng)).collect();
        ends.sort();
        let (r, r2, s2, s) = (
            ends[0].clone(),
            ends[1].clone(),
            ends[2].clone(),
            ends[3].clone(),
        );
        if r == r2 || r2 == s2 || s2 == s {
            continue;
        }
        let outer = RealOpen::interval(r.clone(), s.clone());
        let inner = RealOpen::interval(r2.clone(), s2.clone());
        // meet rule, overlapping case
        assert_eq!(outer.meet(&inner), inner);
        let shifted = RealOpen::interval(r2.clone(), &s + (&s - &r));
        assert_eq!(
            outer.meet(&shifted),
            RealOpen::interval(r2.clone(), s.clone())
        );
        // meet rule, disjoint case
        let far = RealOpen::interval(&s + BigRational::one(), &s + rat(2, 1));
        assert!(outer.meet(&far).is_bottom());
        // localized coverage at a random width
        let q = rat(rng.gen_range(1..=9), rng.gen_range(1..=6));
        let ladder = covered_by_width(&outer, &q).unwrap();
        assert!(!ladder.is_empty());
        // regularity: interior approximants are uniformly below, and the
        // outer interval is their least upper bound
        let w = real_uniformly_below(&inner, &outer).unwrap();
        assert!(inner.inflate(&w).leq(&outer));
        // any canonical open missing part of the outer interval also misses
        // an interior approximant
        let bad = RealOpen::interval(r.clone(), (&r + &s) / rat(2, 1))
            .join(&RealOpen::interval((&r + &s) / rat(2, 1), s.clone()));
        if !outer.leq(&bad) {
            let witness = outer.witness_not_leq(&bad).unwrap();
            let lo = (&r + &witness) / rat(2, 1);
            let hi = (&witness + &s) / rat(2, 1);
            let approx = RealOpen::interval(lo, hi);
            assert!(real_uniformly_below(&approx, &outer).is_some());
            assert!(!approx.leq(&bad), "approximant escapes the pinched open");
        }
    }

    // interval arithmetic: exact containment at three precisions
    let epsilons = [rat(1, 1), rat(1, 1000), rat(1, 1_000_000_000)];
    for _ in 0..1000 {
        let a = rand_rat(&mut rng);
        let b = rand_rat(&mut rng);
        let x = embed_rational(a.clone());
        let y = embed_rational(b.clone());
        for eps in &epsilons {
            let sum = real_add(&x, &y, eps).unwrap();
            assert!(sum.width() <= *eps);
            assert!(sum.contains(&(&a + &b)));
            let prod = real_mul(&x, &y, eps).unwrap();
            assert!(prod.width() <= *eps);
            assert!(prod.contains(&(&a * &b)));
        }
    }
    println!(
        "criterion 8 (reals: {round_trips} Dedekind round trips, 1000 relation and 1000 arithmetic instances): pass"
    );
}

#[test]
fn criterion_9_padics() {
    use uniloc_core::padic::{p_power, padic_arith, PAdicBall, RingOp};
    let mut rng = StdRng::seed_from_u64(SEED ^ 0x9a);
    let mut checked = 0usize;
    for p in [2u64, 3, 5] {
        for _ in 0..1000 {
            let ka = rng.gen_range(-2..=6i64);
            let kb = rng.gen_range(-2..=6i64);
            let center = |rng: &mut StdRng| -> BigRational {
                let num = rng.gen_range(-200..=200i64);
                // denominator coprime to p
                let mut den = rng.gen_range(1..=40i64);
                while den % p as i64 == 0 {
                    den += 1;
                }
                rat(num, den) / p_power(p, rng.gen_range(0..=2))
            };
            let a = PAdicBall::new(p, center(&mut rng), ka).unwrap();
            let b = PAdicBall::new(p, center(&mut rng), kb).unwrap();
            // sample members c + p^k·t with p-integral t
            let member = |ball: &PAdicBall, rng: &mut StdRng| -> BigRational {
                let num = rng.gen_range(-50..=50i64);
                let mut den = rng.gen_range(1..=20i64);
                while den % p as i64 == 0 {
                    den += 1;
                }
                ball.center() + p_power(p, ball.precision()) * rat(num, den)
            };
            let x = member(&a, &mut rng);
            let y = member(&b, &mut rng);
            assert!(a.contains(&x).unwrap());
            assert!(b.contains(&y).unwrap());
            let sum = padic_arith(RingOp::Add, &a, &b).unwrap();
            assert!(sum.contains(&(&x + &y)).unwrap(), "addition soundness");
            let prod = padic_arith(RingOp::Mul, &a, &b).unwrap();
            assert!(
                prod.contains(&(&x * &y)).unwrap(),
                "multiplication soundness"
            );
            let negd = padic_arith(RingOp::Neg, &a, &a).unwrap();
            assert!(negd.contains(&-x.clone()).unwrap(), "negation soundness");
            checked += 1;
        }
    }
    println!("criterion 9 (p-adic ball soundness, {checked} ball pairs): pass");
}
