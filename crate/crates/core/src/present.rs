//! Finitely presented frames.
//!
//! A presentation has generators (optionally tagged with elements of a
//! source frame), equations between finite meets of generators, and cover
//! rules `meet ≤ ⋁ meets`. The presented frame is computed in three stages:
//!
//! 1. the free meet-semilattice on the generators is the lattice of masks
//!    under union; equations induce a congruence whose classes each have a
//!    largest mask, computed by a saturation loop;
//! 2. cover rules, stabilized by meets, generate a coverage on the quotient
//!    semilattice; saturated downsets (C-ideals) are computed by least
//!    fixpoint from the generated elements rather than by enumerating all
//!    downsets;
//! 3. the C-ideals form a finite frame; its join-irreducibles are extracted
//!    and the result is returned as an ordinary `FiniteFrame`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{CoreError, Result};
use crate::frame::{FiniteFrame, FrameElement};
use crate::hom::FrameHom;
use crate::poset::{IrrSet, Poset};

pub const MAX_GENERATORS: usize = 128;
const MAX_CLASSES: usize = 1024;
const MAX_ELEMENTS: usize = 1 << 16;

/// A meet of generators, as a bitmask; the empty mask is top.
pub type GenMask = u128;

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub tag: Option<FrameElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresRelation {
    /// `⋀ lhs = ⋀ rhs`.
    MeetEq(GenMask, GenMask),
    /// `⋀ lhs ≤ ⋁ rhs`; an empty right side forces the left to bottom.
    Cover(GenMask, Vec<GenMask>),
}

#[derive(Clone, Debug)]
pub struct FramePresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<PresRelation>,
}

impl FramePresentation {
    pub fn new(generators: Vec<Generator>, relations: Vec<PresRelation>) -> Result<Self> {
        let n = generators.len();
        if n > MAX_GENERATORS {
            return Err(CoreError::TooManyIrreducibles {
                found: n,
                limit: MAX_GENERATORS,
            });
        }
        let in_range = |m: GenMask| -> Result<()> {
            let stray = m >> n;
            if stray != 0 {
                return Err(CoreError::UnknownGenerator {
                    index: (128 - stray.leading_zeros()) as usize + n - 1,
                });
            }
            Ok(())
        };
        for r in &relations {
            match r {
                PresRelation::MeetEq(a, b) => {
                    in_range(*a)?;
                    in_range(*b)?;
                }
                PresRelation::Cover(l, rs) => {
                    in_range(*l)?;
                    for r in rs {
                        in_range(*r)?;
                    }
                }
            }
        }
        Ok(FramePresentation {
            generators,
            relations,
        })
    }
}

/// Set of semilattice classes, used for C-ideals.
#[derive(Clone, PartialEq, Eq, Hash)]
struct ClsSet {
    words: Vec<u64>,
}

impl ClsSet {
    fn empty(n: usize) -> ClsSet {
        ClsSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn union_with(&mut self, other: &ClsSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn is_subset(&self, other: &ClsSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(w, o)| w & !o == 0)
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter<'a>(&'a self, n: usize) -> impl Iterator<Item = usize> + 'a {
        (0..n).filter(move |&i| self.contains(i))
    }
}

/// The frame presented by generators, equations and cover rules, together
/// with the quotient data needed to evaluate formal expressions.
pub struct PresentedFrame {
    presentation: FramePresentation,
    frame: FiniteFrame,
    collapsed: bool,
    /// Canonical (largest) mask of each semilattice class; class 0 is top.
    classes: Vec<GenMask>,
    class_index: HashMap<GenMask, usize>,
    /// Image of each class in the presented frame.
    class_elems: Vec<FrameElement>,
    /// For each frame irreducible, the classes of its C-ideal.
    irr_ideals: Vec<Vec<usize>>,
}

impl PresentedFrame {
    pub fn presentation(&self) -> &FramePresentation {
        &self.presentation
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    /// True when the relations force `0 = 1`.
    pub fn is_collapsed(&self) -> bool {
        self.collapsed
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_mask(&self, cls: usize) -> GenMask {
        self.classes[cls]
    }

    fn saturate_mask(&self, m: GenMask) -> GenMask {
        saturate(&self.presentation.relations, m)
    }

    pub fn class_of_mask(&self, m: GenMask) -> usize {
        self.class_index[&self.saturate_mask(m)]
    }

    /// Image of a formal meet of generators.
    pub fn meet_image(&self, m: GenMask) -> FrameElement {
        self.class_elems[self.class_of_mask(m)].clone()
    }

    /// Image of a single generator.
    pub fn generator_image(&self, g: usize) -> FrameElement {
        self.meet_image(1 << g)
    }

    /// Classes making up an element of the presented frame.
    pub fn element_classes(&self, e: &FrameElement) -> Vec<usize> {
        assert_eq!(*e.frame(), self.frame);
        let mut out = Vec::new();
        for j in e.set().iter() {
            for &c in &self.irr_ideals[j] {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Builds the frame map determined by a value for each class, checking
    /// it is a frame homomorphism.
    pub fn hom_from_class_values(
        &self,
        target: &FiniteFrame,
        value: impl Fn(usize) -> FrameElement,
    ) -> Result<FrameHom> {
        let images = (0..self.frame.irr_count())
            .map(|j| {
                let mut acc = target.bottom();
                for &c in &self.irr_ideals[j] {
                    acc = acc.join(&value(c));
                }
                acc
            })
            .collect();
        FrameHom::try_new(&self.frame, target, images)
    }

    /// The canonical map onto a frame of tagged values: each class goes to
    /// the meet of its generators' tags. Fails if generators are untagged or
    /// the assignment is not a frame homomorphism.
    pub fn counit_hom(&self, target: &FiniteFrame) -> Result<FrameHom> {
        let tag_meet = |cls: usize| -> FrameElement {
            let mut acc = target.top();
            let mask = self.classes[cls];
            for (g, gen) in self.presentation.generators.iter().enumerate() {
                if mask >> g & 1 == 1 {
                    let t = gen.tag.as_ref().expect("tagged generators");
                    acc = acc.meet(t);
                }
            }
            acc
        };
        self.hom_from_class_values(target, tag_meet)
    }
}

impl fmt::Debug for PresentedFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PresentedFrame({} generators, {} classes, {} irreducibles)",
            self.presentation.generators.len(),
            self.classes.len(),
            self.frame.irr_count()
        )
    }
}

fn saturate(relations: &[PresRelation], mut m: GenMask) -> GenMask {
    loop {
        let before = m;
        for r in relations {
            if let PresRelation::MeetEq(a, b) = r {
                if a & !m == 0 {
                    m |= b;
                }
                if b & !m == 0 {
                    m |= a;
                }
            }
        }
        if m == before {
            return m;
        }
    }
}

/// Computes the presented frame by coverage-closure fixpoint.
pub fn present_frame(presentation: FramePresentation) -> Result<PresentedFrame> {
    let n = presentation.generators.len();
    let relations = presentation.relations.clone();

    // quotient meet-semilattice: classes are canonical saturated masks,
    // generated from top and the single generators under meet
    let mut classes: Vec<GenMask> = Vec::new();
    let mut class_index: HashMap<GenMask, usize> = HashMap::new();
    let add_class = |m: GenMask,
                     classes: &mut Vec<GenMask>,
                     class_index: &mut HashMap<GenMask, usize>|
     -> Result<usize> {
        if let Some(&i) = class_index.get(&m) {
            return Ok(i);
        }
        if classes.len() >= MAX_CLASSES {
            return Err(CoreError::TooLarge {
                what: "presented-frame meet semilattice".into(),
            });
        }
        classes.push(m);
        class_index.insert(m, classes.len() - 1);
        Ok(classes.len() - 1)
    };
    add_class(saturate(&relations, 0), &mut classes, &mut class_index)?;
    for g in 0..n {
        add_class(saturate(&relations, 1 << g), &mut classes, &mut class_index)?;
    }
    let mut next = 0;
    while next < classes.len() {
        let m = classes[next];
        for i in 0..classes.len() {
            let joined = saturate(&relations, m | classes[i]);
            add_class(joined, &mut classes, &mut class_index)?;
        }
        next += 1;
    }
    let k = classes.len();
    let meets: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| class_index[&saturate(&relations, classes[i] | classes[j])])
                .collect()
        })
        .collect();
    // class order: c ≤ d iff canonical mask of d is contained in c's
    let cls_leq = |c: usize, d: usize| classes[d] & !classes[c] == 0;

    // stabilized cover rules at class level
    let mut rules: Vec<(usize, Vec<usize>)> = Vec::new();
    for r in &relations {
        if let PresRelation::Cover(l, rs) = r {
            rules.push((
                class_index[&saturate(&relations, *l)],
                rs.iter()
                    .map(|m| class_index[&saturate(&relations, *m)])
                    .collect(),
            ));
        }
    }

    let saturate_ideal = |mut d: ClsSet| -> ClsSet {
        loop {
            let mut changed = false;
            for c in 0..k {
                if d.contains(c) {
                    continue;
                }
                let mut add = (0..k).any(|e| d.contains(e) && cls_leq(c, e));
                if !add {
                    'rules: for (l, rs) in &rules {
                        // stabilized instance at cofactor c2: lhs∧c2 = c
                        for (c2, lhs_meet) in meets[*l].iter().enumerate() {
                            if *lhs_meet != c {
                                continue;
                            }
                            if rs.iter().all(|r| d.contains(meets[*r][c2])) {
                                add = true;
                                break 'rules;
                            }
                        }
                    }
                }
                if add {
                    d.insert(c);
                    changed = true;
                }
            }
            if !changed {
                return d;
            }
        }
    };

    // elements: C-ideals generated from bottom and principal ideals, closed
    // under join
    let mut elements: Vec<ClsSet> = Vec::new();
    let mut elem_index: HashMap<ClsSet, usize> = HashMap::new();
    let push_elem = |d: ClsSet,
                     elements: &mut Vec<ClsSet>,
                     elem_index: &mut HashMap<ClsSet, usize>|
     -> Result<usize> {
        if let Some(&i) = elem_index.get(&d) {
            return Ok(i);
        }
        if elements.len() >= MAX_ELEMENTS {
            return Err(CoreError::TooLarge {
                what: "presented-frame element lattice".into(),
            });
        }
        elements.push(d.clone());
        elem_index.insert(d, elements.len() - 1);
        Ok(elements.len() - 1)
    };
    push_elem(
        saturate_ideal(ClsSet::empty(k)),
        &mut elements,
        &mut elem_index,
    )?;
    for c in 0..k {
        let mut d = ClsSet::empty(k);
        d.insert(c);
        push_elem(saturate_ideal(d), &mut elements, &mut elem_index)?;
    }
    let mut next = 0;
    while next < elements.len() {
        let d = elements[next].clone();
        for i in 0..elements.len() {
            let mut u = d.clone();
            u.union_with(&elements[i].clone());
            let joined = saturate_ideal(u);
            push_elem(joined, &mut elements, &mut elem_index)?;
        }
        next += 1;
    }
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by_key(|&i| (elements[i].len(), elements[i].words.clone()));
    let elements: Vec<ClsSet> = order.into_iter().map(|i| elements[i].clone()).collect();
    let collapsed = elements.len() == 1;

    // join-irreducibles of the C-ideal lattice
    let mut irr: Vec<usize> = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        if x.len() == elements[0].len() {
            continue; // bottom
        }
        let mut below = ClsSet::empty(k);
        for y in &elements {
            if y.is_subset(x) && y != x {
                below.union_with(y);
            }
        }
        if saturate_ideal(below) != *x {
            irr.push(i);
        }
    }
    if irr.len() > 64 {
        return Err(CoreError::TooLarge {
            what: format!("presented frame with {} join-irreducibles", irr.len()),
        });
    }
    let names = (0..irr.len()).map(|j| format!("c{j}")).collect();
    let mut pairs = Vec::new();
    for (a, &i) in irr.iter().enumerate() {
        for (b, &j) in irr.iter().enumerate() {
            if elements[i].is_subset(&elements[j]) {
                pairs.push((a, b));
            }
        }
    }
    let frame = FiniteFrame::new(Poset::new(names, &pairs)?);

    // encode every C-ideal as a frame element and check the counts agree
    let encode = |x: &ClsSet| -> FrameElement {
        let set = IrrSet::from_iter((0..irr.len()).filter(|&j| elements[irr[j]].is_subset(x)));
        frame.element_from_set(set)
    };
    let mut seen = std::collections::HashSet::new();
    for x in &elements {
        seen.insert(encode(x).set());
    }
    debug_assert_eq!(seen.len(), elements.len(), "Birkhoff encoding collapsed");

    let class_elems: Vec<FrameElement> = (0..k)
        .map(|c| {
            let mut d = ClsSet::empty(k);
            d.insert(c);
            encode(&saturate_ideal(d))
        })
        .collect();
    let irr_ideals: Vec<Vec<usize>> = irr.iter().map(|&i| elements[i].iter(k).collect()).collect();

    Ok(PresentedFrame {
        presentation,
        frame,
        collapsed,
        classes,
        class_index,
        class_elems,
        irr_ideals,
    })
}
