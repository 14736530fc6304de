//! Deterministic fixture generators: small frames, valid uniformities,
//! metric spaces and morphisms. Used by the test suites; seeds make every
//! run reproducible.

use num::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::cover::CoverDownset;
use crate::frame::{FiniteFrame, FrameElement};
use crate::group::{group_uniformity, FiniteGroup, GroupSide};
use crate::hom::FrameHom;
use crate::metric::{metric_uniformity, MetricSpace};
use crate::poset::Poset;
use crate::regularity::strong_regularity_uniformity;
use crate::uniform::{initial_uniformity, PreUniformLocale};

fn named(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// A spread of frames with at most four irreducibles.
pub fn small_frames() -> Vec<FiniteFrame> {
    vec![
        FiniteFrame::new(Poset::discrete(vec![])),
        FiniteFrame::discrete(&["p"]),
        FiniteFrame::discrete(&["a", "b"]),
        FiniteFrame::new(Poset::new(named(&["p", "q"]), &[(0, 1)]).unwrap()),
        FiniteFrame::discrete(&["a", "b", "c"]),
        // pinched square: one point below two incomparable ones
        FiniteFrame::new(Poset::new(named(&["r", "x", "y"]), &[(0, 1), (0, 2)]).unwrap()),
        FiniteFrame::discrete(&["a", "b", "c", "d"]),
        // two disjoint chains
        FiniteFrame::new(Poset::new(named(&["p", "q", "u", "v"]), &[(0, 1), (2, 3)]).unwrap()),
        // diamond without top: two minimal points below two maximal ones
        FiniteFrame::new(
            Poset::new(
                named(&["m", "n", "x", "y"]),
                &[(0, 2), (0, 3), (1, 2), (1, 3)],
            )
            .unwrap(),
        ),
    ]
}

fn rational(rng: &mut StdRng, max_num: i64, max_den: i64) -> BigRational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(0..=max_num * den);
    BigRational::new(num.into(), den.into())
}

/// Random rational pre-metric spaces, triangle-repaired by shortest paths.
/// Occasionally glues two points at distance zero.
#[allow(clippy::needless_range_loop)] // triple-index shortest-path relaxation
pub fn sample_metric_spaces(seed: u64, count: usize, max_points: usize) -> Vec<MetricSpace> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=max_points);
        let mut d = vec![vec![BigRational::from_integer(0.into()); n]; n];
        for i in 0..n {
            for j in 0..i {
                let glue = rng.gen_ratio(1, 8);
                let v = if glue {
                    BigRational::from_integer(0.into())
                } else {
                    rational(&mut rng, 8, 4) + BigRational::new(1.into(), 4.into())
                };
                d[i][j] = v.clone();
                d[j][i] = v;
            }
        }
        // shortest-path repair enforces the triangle inequality exactly
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = &d[i][k] + &d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        let points = (0..n).map(|i| format!("p{i}")).collect();
        out.push(MetricSpace::new(points, d).expect("repaired table is a metric"));
    }
    out
}

fn random_cover_structure(frame: &FiniteFrame, rng: &mut StdRng) -> Option<PreUniformLocale> {
    let elems = frame.elements().ok()?;
    let positive: Vec<&FrameElement> = elems.iter().filter(|e| e.is_positive()).collect();
    if positive.is_empty() {
        return Some(PreUniformLocale::chaotic(frame));
    }
    let mut base = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let mut gens: Vec<FrameElement> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            gens.push((*positive[rng.gen_range(0..positive.len())]).clone());
        }
        base.push(CoverDownset::new(frame, gens).ok()?);
    }
    // close under pairwise intersections so the base is directed
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = base.clone();
        for (i, u) in snapshot.iter().enumerate() {
            for v in snapshot.iter().take(i) {
                let w = u.intersect(v);
                if !w.is_covering() {
                    return None;
                }
                if !base.contains(&w) {
                    base.push(w);
                    changed = true;
                }
            }
        }
        if base.len() > 12 {
            return None;
        }
    }
    PreUniformLocale::from_cover_base(frame, base).ok()
}

/// At least `target` validated uniformities over frames with ≤ 4
/// irreducibles, carrying both presentations. Mixes canonical structures,
/// metric and group uniformities, strong-regularity ones, initial lifts and
/// random filtered bases.
pub fn sample_uniformities(seed: u64, target: usize) -> Vec<PreUniformLocale> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out: Vec<PreUniformLocale> = Vec::new();
    let push = |s: PreUniformLocale, out: &mut Vec<PreUniformLocale>| {
        if let Ok(both) = s.with_both() {
            out.push(both);
        }
    };

    for frame in small_frames() {
        push(PreUniformLocale::chaotic(&frame), &mut out);
        if let Ok(d) = PreUniformLocale::discrete(&frame) {
            push(d, &mut out);
        }
    }
    // partition uniformities on the discrete frames
    for (names, blocks) in [
        (vec!["a", "b", "c"], vec![vec![0usize, 1], vec![2]]),
        (vec!["a", "b", "c", "d"], vec![vec![0, 1], vec![2, 3]]),
        (vec!["a", "b", "c", "d"], vec![vec![0, 1, 2], vec![3]]),
    ] {
        let frame = FiniteFrame::discrete(&names);
        let gens = blocks
            .iter()
            .map(|block| frame.element(block.iter().copied()))
            .collect();
        if let Ok(c) = CoverDownset::new(&frame, gens) {
            if let Ok(s) = PreUniformLocale::from_cover_base(&frame, vec![c]) {
                push(s, &mut out);
            }
        }
    }
    // metric uniformities on up to 4 points
    for space in sample_metric_spaces(seed ^ 0x6d65, 8, 4) {
        if let Ok(m) = metric_uniformity(&space) {
            push(m.structure, &mut out);
        }
    }
    // group uniformities
    for group in [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::klein4(),
    ] {
        for side in [GroupSide::Left, GroupSide::TwoSided] {
            if let Ok(gu) = group_uniformity(&group, side) {
                push(gu.structure, &mut out);
            }
        }
    }
    // strong-regularity uniformiser with the full order relation on the
    // Boolean frames (interpolative there)
    for frame in [
        FiniteFrame::discrete(&["a", "b"]),
        FiniteFrame::discrete(&["a", "b", "c"]),
    ] {
        let elems = frame.elements().expect("small");
        let rel: Vec<(FrameElement, FrameElement)> = elems
            .iter()
            .flat_map(|x| {
                elems
                    .iter()
                    .filter(move |y| x.leq(y))
                    .map(move |y| (x.clone(), y.clone()))
            })
            .collect();
        if let Ok(s) = strong_regularity_uniformity(&frame, &rel) {
            push(s, &mut out);
        }
    }
    // initial structures along the unique point-collapse maps
    let snapshot: Vec<PreUniformLocale> = out.clone();
    for s in snapshot.iter().take(6) {
        if s.frame().is_degenerate() {
            continue;
        }
        let pt = FiniteFrame::discrete(&["w"]);
        let collapse = FrameHom::try_new(s.frame(), &pt, vec![pt.top(); s.frame().irr_count()]);
        if let Ok(h) = collapse {
            // h: O X → O pt presents pt → X; the initial structure lives on pt
            if let Ok(init) = initial_uniformity(&pt, &[(&h, s)]) {
                push(init, &mut out);
            }
        }
    }
    // random covering bases until the target count is reached
    let frames = small_frames();
    let mut spins = 0;
    while out.len() < target && spins < 10_000 {
        spins += 1;
        let frame = &frames[rng.gen_range(0..frames.len())];
        if let Some(s) = random_cover_structure(frame, &mut rng) {
            push(s, &mut out);
        }
    }
    out.truncate(target.max(out.len()));
    out
}

/// The admissible members of the sampled corpus, optionally capped by
/// irreducible count.
pub fn uniform_corpus(seed: u64, target: usize, max_irr: usize) -> Vec<PreUniformLocale> {
    sample_uniformities(seed, target)
        .into_iter()
        .filter(|s| s.is_admissible() && s.frame().irr_count() <= max_irr)
        .collect()
}

/// Named uniform morphisms with admissible targets, for factorization
/// tests: (name, frame map, source structure, target structure).
pub fn fixture_morphisms() -> Vec<(String, FrameHom, PreUniformLocale, PreUniformLocale)> {
    let mut out = Vec::new();

    let disc2 = PreUniformLocale::discrete(&FiniteFrame::discrete(&["a", "b"])).unwrap();
    let disc3 = PreUniformLocale::discrete(&FiniteFrame::discrete(&["a", "b", "c"])).unwrap();
    out.push((
        "identity on the discrete pair".to_string(),
        FrameHom::identity(disc2.frame()),
        disc2.clone(),
        disc2.clone(),
    ));

    // surjection of points {a,b,c} → {a,b} collapsing c to b
    let quot = FrameHom::try_new(
        disc2.frame(),
        disc3.frame(),
        vec![disc3.frame().element([0]), disc3.frame().element([1, 2])],
    )
    .unwrap();
    out.push((
        "point collapse of three onto two".to_string(),
        quot,
        disc3.clone(),
        disc2.clone(),
    ));

    // inclusion of points {a,b} → {a,b,c}
    let incl = FrameHom::try_new(
        disc3.frame(),
        disc2.frame(),
        vec![
            disc2.frame().element([0]),
            disc2.frame().element([1]),
            disc2.frame().bottom(),
        ],
    )
    .unwrap();
    out.push((
        "point inclusion of two into three".to_string(),
        incl,
        disc2.clone(),
        disc3.clone(),
    ));

    // chaotic source maps uniformly to its reflection target (a point)
    let chaotic = PreUniformLocale::chaotic(&FiniteFrame::discrete(&["a", "b"]));
    let pt = PreUniformLocale::chaotic(&FiniteFrame::discrete(&["w"]));
    let bang = FrameHom::try_new(pt.frame(), chaotic.frame(), vec![chaotic.frame().top()]).unwrap();
    out.push((
        "collapse of the chaotic pair to the point".to_string(),
        bang,
        chaotic,
        pt,
    ));

    // a group quotient
    let z4 = group_uniformity(&FiniteGroup::cyclic(4), GroupSide::TwoSided).unwrap();
    let z2 = group_uniformity(&FiniteGroup::cyclic(2), GroupSide::TwoSided).unwrap();
    let hom = crate::group::GroupHom::new(
        &FiniteGroup::cyclic(4),
        &FiniteGroup::cyclic(2),
        vec![0, 1, 0, 1],
    )
    .unwrap();
    let f = hom.frame_hom(&z4.frame, &z2.frame).unwrap();
    out.push((
        "mod-2 quotient of the cyclic four-group".to_string(),
        f,
        z4.structure,
        z2.structure,
    ));

    out
}
