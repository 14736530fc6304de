//! Finite groups on discrete frames and their left, right and two-sided
//! uniformities.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{CoreError, Result};
use crate::frame::FiniteFrame;
use crate::hom::FrameHom;
use crate::poset::IrrSet;
use crate::relation::{ProductFrame, Relation};
use crate::uniform::PreUniformLocale;

#[derive(Clone)]
pub struct FiniteGroup {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    /// One discrete frame per group value, so uniformities built from the
    /// same group share it.
    frame: OnceLock<FiniteFrame>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.mul == other.mul
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = names.len();
        assert!(n > 0, "empty group");
        assert_eq!(mul.len(), n, "multiplication table shape");
        for row in &mul {
            assert_eq!(row.len(), n, "multiplication table shape");
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| CoreError::Unsupported("no identity element".into()))?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                        return Err(CoreError::Unsupported(format!(
                            "multiplication not associative at ({}, {}, {})",
                            names[x], names[y], names[z]
                        )));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| mul[x][y] == identity && mul[y][x] == identity)
                .ok_or_else(|| CoreError::Unsupported(format!("{} has no inverse", names[x])))?;
        }
        Ok(FiniteGroup {
            names,
            mul,
            inv,
            identity,
            frame: OnceLock::new(),
        })
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let mul = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::new(names, mul).expect("cyclic tables are groups")
    }

    /// Direct product of two cyclic groups of order two.
    pub fn klein4() -> FiniteGroup {
        let names = vec!["e", "a", "b", "ab"]
            .into_iter()
            .map(String::from)
            .collect();
        // xor on the two-bit labels
        let mul = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        FiniteGroup::new(names, mul).expect("xor table is a group")
    }

    /// Symmetric group on three letters, as permutations of `{0,1,2}`.
    pub fn symmetric3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2], // e
            [1, 0, 2], // (01)
            [0, 2, 1], // (12)
            [2, 1, 0], // (02)
            [1, 2, 0], // (012)
            [2, 0, 1], // (021)
        ];
        let names = vec!["e", "s01", "s12", "s02", "r1", "r2"]
            .into_iter()
            .map(String::from)
            .collect();
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            // (p·q)(i) = p(q(i))
            [p[q[0]], p[q[1]], p[q[2]]]
        };
        let mul = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let r = compose(p, q);
                        perms.iter().position(|s| *s == r).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(names, mul).expect("permutation tables are groups")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.mul[x][y] == self.mul[y][x]))
    }

    /// Discrete frame on the underlying set.
    pub fn frame(&self) -> FiniteFrame {
        self.frame
            .get_or_init(|| {
                let names: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
                FiniteFrame::discrete(&names)
            })
            .clone()
    }

    /// Identity neighbourhoods: all subsets containing the identity, as
    /// irreducible masks in a fixed order.
    pub fn identity_neighbourhoods(&self) -> Vec<IrrSet> {
        let n = self.len();
        let mut out = Vec::new();
        for raw in 0..(1u64 << n) {
            if raw >> self.identity & 1 == 1 {
                out.push(IrrSet::from_iter((0..n).filter(|&i| raw >> i & 1 == 1)));
            }
        }
        out
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup[{}]", self.names.join(", "))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupSide {
    Left,
    Right,
    TwoSided,
}

/// Basic entourage for a single identity neighbourhood `u`:
/// `L_u = {(x,y) | x⁻¹y ∈ u}`, `R_u = {(x,y) | xy⁻¹ ∈ u}`,
/// `T_u = L_u ∧ R_u`.
pub fn group_entourage(
    group: &FiniteGroup,
    side: GroupSide,
    u: IrrSet,
    square: &ProductFrame,
) -> Result<Relation> {
    if !u.contains(group.identity()) {
        return Err(CoreError::MissingIdentity);
    }
    let n = group.len();
    let in_left = |x: usize, y: usize| u.contains(group.mul(group.inv(x), y));
    let in_right = |x: usize, y: usize| u.contains(group.mul(x, group.inv(y)));
    let pairs = (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    let filtered: Vec<(usize, usize)> = match side {
        GroupSide::Left => pairs.filter(|&(x, y)| in_left(x, y)).collect(),
        GroupSide::Right => pairs.filter(|&(x, y)| in_right(x, y)).collect(),
        GroupSide::TwoSided => pairs
            .filter(|&(x, y)| in_left(x, y) && in_right(x, y))
            .collect(),
    };
    Ok(Relation::from_pairs(square, filtered))
}

/// The full group uniformity: one basic entourage per identity
/// neighbourhood.
pub struct GroupUniformity {
    pub group: FiniteGroup,
    pub side: GroupSide,
    pub frame: FiniteFrame,
    pub entries: Vec<(IrrSet, Relation)>,
    pub structure: PreUniformLocale,
}

pub fn group_uniformity(group: &FiniteGroup, side: GroupSide) -> Result<GroupUniformity> {
    let frame = group.frame();
    let square = ProductFrame::square(&frame)?;
    let mut entries = Vec::new();
    for u in group.identity_neighbourhoods() {
        entries.push((u, group_entourage(group, side, u, &square)?));
    }
    let base = entries.iter().map(|(_, e)| e.clone()).collect();
    let structure = PreUniformLocale::from_entourage_base(&frame, base)?;
    Ok(GroupUniformity {
        group: group.clone(),
        side,
        frame,
        entries,
        structure,
    })
}

/// Rectangle-level translation-invariance check for abelian groups: shifting
/// both coordinates by any group element permutes each basic two-sided
/// entourage onto itself.
pub fn is_translation_invariant(gu: &GroupUniformity) -> bool {
    let g = &gu.group;
    let n = g.len();
    gu.entries.iter().all(|(_, e)| {
        (0..n).all(|z| {
            let shifted = Relation::from_pairs(
                e.square(),
                e.square()
                    .pairs_of(e.element())
                    .into_iter()
                    .map(|(x, y)| (g.mul(x, z), g.mul(y, z))),
            );
            shifted == *e
        })
    })
}

/// A group homomorphism given by its value table, together with the frame
/// map of the induced locale map.
pub struct GroupHom {
    pub table: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, table: Vec<usize>) -> Result<GroupHom> {
        assert_eq!(table.len(), source.len());
        for x in 0..source.len() {
            for y in 0..source.len() {
                if table[source.mul(x, y)] != target.mul(table[x], table[y]) {
                    return Err(CoreError::Unsupported(format!(
                        "not a homomorphism at ({}, {})",
                        source.names()[x],
                        source.names()[y]
                    )));
                }
            }
        }
        Ok(GroupHom { table })
    }

    /// Frame map `O H → O G` of the locale map `G → H`: each point of the
    /// target pulls back to its fibre.
    pub fn frame_hom(
        &self,
        source_frame: &FiniteFrame,
        target_frame: &FiniteFrame,
    ) -> Result<FrameHom> {
        let images = (0..target_frame.irr_count())
            .map(|j| source_frame.element((0..self.table.len()).filter(|&i| self.table[i] == j)))
            .collect();
        FrameHom::try_new(target_frame, source_frame, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uniform::is_uniform_morphism;

    #[test]
    fn z2_with_identity_only_neighbourhood_gives_diagonal() {
        // oracle: x⁻¹y = e iff x = y
        let g = FiniteGroup::cyclic(2);
        let frame = g.frame();
        let sq = ProductFrame::square(&frame).unwrap();
        let u = IrrSet::singleton(g.identity());
        let l = group_entourage(&g, GroupSide::Left, u, &sq).unwrap();
        assert_eq!(l, Relation::diagonal(&sq));
    }

    #[test]
    fn full_group_neighbourhood_gives_top() {
        let g = FiniteGroup::cyclic(3);
        let frame = g.frame();
        let sq = ProductFrame::square(&frame).unwrap();
        let u = IrrSet::full(g.len());
        let l = group_entourage(&g, GroupSide::Left, u, &sq).unwrap();
        assert_eq!(l, Relation::top(&sq));
    }

    #[test]
    fn missing_identity_is_rejected() {
        let g = FiniteGroup::cyclic(2);
        let frame = g.frame();
        let sq = ProductFrame::square(&frame).unwrap();
        let u = IrrSet::singleton(1);
        assert_eq!(
            group_entourage(&g, GroupSide::Left, u, &sq).unwrap_err(),
            CoreError::MissingIdentity
        );
    }

    #[test]
    fn s3_left_and_right_differ_and_two_sided_is_their_meet() {
        // oracle: enumerate all 36 pairs for u = {e, (01)}
        let g = FiniteGroup::symmetric3();
        let frame = g.frame();
        let sq = ProductFrame::square(&frame).unwrap();
        let u = IrrSet::from_iter([g.identity(), 1]);
        let l = group_entourage(&g, GroupSide::Left, u, &sq).unwrap();
        let r = group_entourage(&g, GroupSide::Right, u, &sq).unwrap();
        let t = group_entourage(&g, GroupSide::TwoSided, u, &sq).unwrap();
        assert_ne!(l, r);
        assert_eq!(t, l.meet(&r));
        assert!(Relation::diagonal(&sq).leq(&t));

        // brute-force oracle for the two-sided condition
        for x in 0..6 {
            for y in 0..6 {
                let expected = u.contains(g.mul(g.inv(x), y)) && u.contains(g.mul(x, g.inv(y)));
                assert_eq!(t.contains_pair(x, y), expected);
            }
        }
    }

    #[test]
    fn opposite_of_left_entourage_inverts_the_neighbourhood() {
        let g = FiniteGroup::symmetric3();
        let frame = g.frame();
        let sq = ProductFrame::square(&frame).unwrap();
        let u = IrrSet::from_iter([g.identity(), 4]); // {e, (012)}
        let u_inv = IrrSet::from_iter(u.iter().map(|x| g.inv(x)));
        let l = group_entourage(&g, GroupSide::Left, u, &sq).unwrap();
        let l_inv = group_entourage(&g, GroupSide::Left, u_inv, &sq).unwrap();
        assert_eq!(l.opposite(), l_inv);
    }

    #[test]
    fn group_uniformities_validate_and_are_admissible() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4)] {
            for side in [GroupSide::Left, GroupSide::Right, GroupSide::TwoSided] {
                let gu = group_uniformity(&g, side).unwrap();
                assert!(gu.structure.is_admissible());
            }
        }
    }

    #[test]
    fn abelian_left_equals_right() {
        // entrywise R_u = L_{u⁻¹}, so the two uniformities coincide
        let g = FiniteGroup::cyclic(4);
        let l = group_uniformity(&g, GroupSide::Left).unwrap();
        let r = group_uniformity(&g, GroupSide::Right).unwrap();
        for (u, e_r) in &r.entries {
            let u_inv = IrrSet::from_iter(u.iter().map(|x| g.inv(x)));
            let e_l = l
                .entries
                .iter()
                .find(|(v, _)| *v == u_inv)
                .map(|(_, e)| e)
                .unwrap();
            assert_eq!(e_r, e_l);
        }
        assert!(l.structure.filter_equal(&r.structure).unwrap());
    }

    #[test]
    fn two_sided_uniformity_is_translation_invariant_for_abelian() {
        let g = FiniteGroup::cyclic(4);
        let gu = group_uniformity(&g, GroupSide::TwoSided).unwrap();
        assert!(g.is_abelian());
        assert!(is_translation_invariant(&gu));
    }

    #[test]
    fn quotient_hom_is_uniform() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let hom = GroupHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let src = group_uniformity(&z4, GroupSide::TwoSided).unwrap();
        let tgt = group_uniformity(&z2, GroupSide::TwoSided).unwrap();
        let f = hom.frame_hom(&src.frame, &tgt.frame).unwrap();
        assert!(is_uniform_morphism(&f, &src.structure, &tgt.structure).unwrap());
    }
}
