//! Finite posets of join-irreducibles and bitmask sets over them.
//!
//! Every frame in this crate is the lattice of downsets of such a poset, so
//! the poset type is deliberately small: names, a reflexive-transitive order
//! matrix, and set utilities on 64-bit masks.

use std::fmt;

use crate::error::{CoreError, Result};

/// Hard cap on irreducibles so element sets fit in one machine word.
pub const MAX_IRREDUCIBLES: usize = 64;

/// A set of irreducibles, represented as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IrrSet(u64);

impl IrrSet {
    pub const EMPTY: IrrSet = IrrSet(0);

    pub fn singleton(i: usize) -> IrrSet {
        debug_assert!(i < MAX_IRREDUCIBLES);
        IrrSet(1 << i)
    }

    pub fn full(n: usize) -> IrrSet {
        debug_assert!(n <= MAX_IRREDUCIBLES);
        if n == MAX_IRREDUCIBLES {
            IrrSet(!0)
        } else {
            IrrSet((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < MAX_IRREDUCIBLES);
        self.0 |= 1 << i;
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_IRREDUCIBLES && self.0 >> i & 1 == 1
    }

    pub fn union(self, other: IrrSet) -> IrrSet {
        IrrSet(self.0 | other.0)
    }

    pub fn inter(self, other: IrrSet) -> IrrSet {
        IrrSet(self.0 & other.0)
    }

    pub fn minus(self, other: IrrSet) -> IrrSet {
        IrrSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: IrrSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for IrrSet {
    fn from_iter<T: IntoIterator<Item = usize>>(items: T) -> IrrSet {
        let mut s = IrrSet::EMPTY;
        for i in items {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for IrrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite poset given by element names and a reflexive-transitive order.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    /// `below[i]` is the set of elements `j` with `j ≤ i` (including `i`).
    below: Vec<IrrSet>,
}

impl Poset {
    /// Builds a poset from cover pairs `(i, j)` meaning `i ≤ j`.
    ///
    /// The relation is closed reflexively and transitively; a cycle between
    /// distinct elements is rejected with the offending chain.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        if n > MAX_IRREDUCIBLES {
            return Err(CoreError::TooManyIrreducibles {
                found: n,
                limit: MAX_IRREDUCIBLES,
            });
        }
        let mut below = vec![IrrSet::EMPTY; n];
        for (i, b) in below.iter_mut().enumerate() {
            b.insert(i);
        }
        for &(lo, hi) in pairs {
            assert!(lo < n && hi < n, "order pair out of range");
            below[hi].insert(lo);
        }
        // transitive closure
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                let mut acc = below[i];
                for j in below[i].iter() {
                    acc = acc.union(below[j]);
                }
                if acc != below[i] {
                    below[i] = acc;
                    changed = true;
                }
            }
        }
        // antisymmetry
        for i in 0..n {
            for j in 0..i {
                if below[i].contains(j) && below[j].contains(i) {
                    return Err(CoreError::OrderCycle {
                        cycle: vec![names[j].clone(), names[i].clone(), names[j].clone()],
                    });
                }
            }
        }
        Ok(Poset { names, below })
    }

    /// Antichain on `n` anonymous points.
    pub fn discrete(names: Vec<String>) -> Poset {
        Poset::new(names, &[]).expect("antichain is always a poset")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `j ≤ i` in the poset order.
    pub fn leq(&self, j: usize, i: usize) -> bool {
        self.below[i].contains(j)
    }

    pub fn below(&self, i: usize) -> IrrSet {
        self.below[i]
    }

    pub fn down_closure(&self, set: IrrSet) -> IrrSet {
        let mut acc = IrrSet::EMPTY;
        for i in set.iter() {
            acc = acc.union(self.below[i]);
        }
        acc
    }

    pub fn is_down_closed(&self, set: IrrSet) -> bool {
        self.down_closure(set) == set
    }

    /// Maximal elements of `set` under the poset order.
    pub fn maximal(&self, set: IrrSet) -> IrrSet {
        IrrSet::from_iter(
            set.iter()
                .filter(|&i| set.iter().all(|j| j == i || !self.below[j].contains(i))),
        )
    }

    /// Componentwise-ordered product; pair `(i, j)` becomes index `i * other.len() + j`.
    pub fn product(&self, other: &Poset) -> Result<Poset> {
        let n = self.len() * other.len();
        if n > MAX_IRREDUCIBLES {
            return Err(CoreError::TooManyIrreducibles {
                found: n,
                limit: MAX_IRREDUCIBLES,
            });
        }
        let mut names = Vec::with_capacity(n);
        for i in 0..self.len() {
            for j in 0..other.len() {
                names.push(format!("{}.{}", self.names[i], other.names[j]));
            }
        }
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            for j in 0..other.len() {
                for i2 in 0..self.len() {
                    for j2 in 0..other.len() {
                        if self.leq(i, i2) && other.leq(j, j2) {
                            pairs.push((i * other.len() + j, i2 * other.len() + j2));
                        }
                    }
                }
            }
        }
        Poset::new(names, &pairs)
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset[{}]", self.names.join(", "))
    }
}
