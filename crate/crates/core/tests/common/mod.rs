//! Shared oracles for the integration suites.
//!
//! The presentation oracle works in the free bounded distributive lattice on
//! `n ≤ 5` generators, realized as upward-closed families of subsets of the
//! generator set (a `u32` mask over the 2^n cube, so meet is AND and join is
//! OR), and quotients it by the congruence generated by the relations. This
//! path never touches the coverage-fixpoint machinery it checks.

use std::collections::HashMap;

use uniloc_core::present::{FramePresentation, PresRelation};

pub struct FreeDistLattice {
    pub n: usize,
    /// Upward-closed families, sorted.
    pub elements: Vec<u32>,
    index: HashMap<u32, usize>,
}

impl FreeDistLattice {
    pub fn new(n: usize) -> FreeDistLattice {
        assert!(n <= 5, "oracle supports at most 5 generators");
        let cells = 1usize << n;
        // subsets in descending cardinality, so supersets are decided first
        let mut order: Vec<u32> = (0..cells as u32).collect();
        order.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
        let mut elements = Vec::new();
        let mut family = 0u32;
        enumerate(&order, 0, &mut family, n, &mut elements);
        elements.sort_unstable();
        let index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        FreeDistLattice { n, elements, index }
    }

    pub fn index_of(&self, family: u32) -> usize {
        self.index[&family]
    }

    /// The generator `g_i`: all subsets containing `i`.
    pub fn generator(&self, i: usize) -> u32 {
        let cells = 1u32 << self.n;
        (0..cells)
            .filter(|s| s >> i & 1 == 1)
            .fold(0, |acc, s| acc | (1 << s))
    }

    pub fn top(&self) -> u32 {
        if self.n == 5 {
            u32::MAX
        } else {
            (1u32 << (1 << self.n)) - 1
        }
    }

    /// Meet of generators given by a mask; the empty mask is top.
    pub fn eval_meet(&self, mask: u128) -> u32 {
        let mut acc = self.top();
        for i in 0..self.n {
            if mask >> i & 1 == 1 {
                acc &= self.generator(i);
            }
        }
        acc
    }

    pub fn eval_join_of_meets(&self, meets: &[u128]) -> u32 {
        meets.iter().fold(0, |acc, &m| acc | self.eval_meet(m))
    }
}

fn enumerate(order: &[u32], pos: usize, family: &mut u32, n: usize, out: &mut Vec<u32>) {
    if pos == order.len() {
        out.push(*family);
        return;
    }
    let s = order[pos];
    // excluding is always allowed
    enumerate(order, pos + 1, family, n, out);
    // including needs all immediate supersets present
    let ok = (0..n).all(|i| s >> i & 1 == 1 || *family >> (s | 1 << i) & 1 == 1);
    if ok {
        *family |= 1 << s;
        enumerate(order, pos + 1, family, n, out);
        *family &= !(1u32 << s);
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra] = rb;
            true
        }
    }
}

/// Number of congruence classes of the free lattice modulo the presentation's
/// relations, together with the class of every element.
pub fn congruence_classes(p: &FramePresentation) -> (FreeDistLattice, Vec<usize>, usize) {
    let fdl = FreeDistLattice::new(p.generators.len());
    let n = fdl.elements.len();
    let mut uf = UnionFind::new(n);
    let mut worklist: Vec<(usize, usize)> = Vec::new();
    let push_pair = |a: u32, b: u32, uf: &mut UnionFind, worklist: &mut Vec<(usize, usize)>| {
        let (ia, ib) = (fdl.index_of(a), fdl.index_of(b));
        if uf.union(ia, ib) {
            worklist.push((ia, ib));
        }
    };
    for r in &p.relations {
        match r {
            PresRelation::MeetEq(a, b) => {
                push_pair(fdl.eval_meet(*a), fdl.eval_meet(*b), &mut uf, &mut worklist);
            }
            PresRelation::Cover(l, rs) => {
                // l ≤ ⋁rs becomes l = l ∧ ⋁rs
                let lv = fdl.eval_meet(*l);
                let rv = fdl.eval_join_of_meets(rs);
                push_pair(lv, lv & rv, &mut uf, &mut worklist);
            }
        }
    }
    // lattice congruence closure: merged pairs propagate through meets and
    // joins with every element
    while let Some((a, b)) = worklist.pop() {
        let (ea, eb) = (fdl.elements[a], fdl.elements[b]);
        for c in 0..n {
            let ec = fdl.elements[c];
            push_pair(ea & ec, eb & ec, &mut uf, &mut worklist);
            push_pair(ea | ec, eb | ec, &mut uf, &mut worklist);
        }
    }
    let mut reps: HashMap<usize, usize> = HashMap::new();
    let mut classes = vec![0usize; n];
    for (i, slot) in classes.iter_mut().enumerate() {
        let r = uf.find(i);
        let next = reps.len();
        *slot = *reps.entry(r).or_insert(next);
    }
    let count = reps.len();
    (fdl, classes, count)
}
