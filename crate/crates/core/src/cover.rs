//! Covering downsets and validated covering uniformities.
//!
//! A covering downset is stored by a canonical antichain of generators; the
//! downset it denotes is everything below some generator. Downsets are
//! exponentially large, so all comparisons run on generators: refinement of
//! `C` into `D` means every generator of `C` lies below a generator of `D`,
//! which is exactly containment of the denoted downsets.

use std::fmt;

use crate::error::{CoreError, Result};
use crate::frame::{join_all, FiniteFrame, FrameElement};

#[derive(Clone, PartialEq, Eq)]
pub struct CoverDownset {
    frame: FiniteFrame,
    /// Canonical antichain, sorted for determinism.
    gens: Vec<FrameElement>,
}

impl CoverDownset {
    /// Covering downset generated by `gens`; rejects families whose join is
    /// not top.
    pub fn new(frame: &FiniteFrame, gens: Vec<FrameElement>) -> Result<CoverDownset> {
        for g in &gens {
            if !frame.contains(g) {
                return Err(CoreError::FrameMismatch);
            }
        }
        if !join_all(frame, gens.iter()).is_top() {
            return Err(CoreError::NotCovering {
                cover: format_gens(&gens),
            });
        }
        Ok(Self::from_gens(frame, gens))
    }

    /// Canonicalizes without the covering check; used by internal operations
    /// that preserve covering (stars, intersections, images).
    pub(crate) fn from_gens(frame: &FiniteFrame, gens: Vec<FrameElement>) -> CoverDownset {
        let mut canon: Vec<FrameElement> = Vec::new();
        if frame.is_degenerate() {
            // the degenerate frame identifies 0 with 1; keep the single
            // representative so covers there compare equal
            return CoverDownset {
                frame: frame.clone(),
                gens: vec![frame.top()],
            };
        }
        for g in gens {
            if g.is_bottom() {
                continue;
            }
            if canon.iter().any(|h| g.leq(h)) {
                continue;
            }
            canon.retain(|h| !h.leq(&g));
            canon.push(g);
        }
        canon.sort_by_key(|e| e.set().bits());
        CoverDownset {
            frame: frame.clone(),
            gens: canon,
        }
    }

    /// The chaotic cover `↓{1}`.
    pub fn chaotic(frame: &FiniteFrame) -> CoverDownset {
        CoverDownset::from_gens(frame, vec![frame.top()])
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn generators(&self) -> &[FrameElement] {
        &self.gens
    }

    pub fn join(&self) -> FrameElement {
        join_all(&self.frame, self.gens.iter())
    }

    pub fn is_covering(&self) -> bool {
        self.join().is_top()
    }

    /// Membership in the denoted downset.
    pub fn member(&self, u: &FrameElement) -> bool {
        u.is_bottom() || self.gens.iter().any(|g| u.leq(g))
    }

    /// Containment of denoted downsets: `self ⊆ other`.
    pub fn refines(&self, other: &CoverDownset) -> bool {
        self.gens.iter().all(|g| other.member(g))
    }

    /// Downset intersection, computed on generators by pairwise meets.
    pub fn intersect(&self, other: &CoverDownset) -> CoverDownset {
        let mut gens = Vec::new();
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.meet(h));
            }
        }
        CoverDownset::from_gens(&self.frame, gens)
    }

    /// Star `st(a, U) = ⋁{u ∈ U | a ≬ u}`, computed over generators.
    pub fn star(&self, a: &FrameElement) -> FrameElement {
        assert_eq!(*a.frame(), self.frame, "star operand frame");
        join_all(&self.frame, self.gens.iter().filter(|g| a.overlaps(g)))
    }

    /// `U★ = ↓{st(u, U) | u ∈ U}`; generators suffice because stars of
    /// smaller members are smaller.
    pub fn star_set(&self) -> CoverDownset {
        let gens = self.gens.iter().map(|g| self.star(g)).collect();
        CoverDownset::from_gens(&self.frame, gens)
    }

    /// Restricts generators to positive elements, the strength repair.
    ///
    /// Classically this only drops bottom generators (canonicalization has
    /// already done so), except on the degenerate frame where `0 = 1` and the
    /// canonical representative is kept to avoid the spurious extra
    /// uniformity on the trivial locale.
    pub fn strengthen(&self) -> Result<CoverDownset> {
        let gens: Vec<FrameElement> = self
            .gens
            .iter()
            .filter(|g| g.is_positive())
            .cloned()
            .collect();
        if self.frame.is_degenerate() {
            return Ok(CoverDownset::from_gens(&self.frame, gens));
        }
        if !join_all(&self.frame, gens.iter()).is_top() {
            return Err(CoreError::NotCovering {
                cover: format_gens(&gens),
            });
        }
        Ok(CoverDownset::from_gens(&self.frame, gens))
    }
}

fn format_gens(gens: &[FrameElement]) -> String {
    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    parts.join(", ")
}

impl fmt::Display for CoverDownset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "↓{{{}}}", format_gens(&self.gens))
    }
}

impl fmt::Debug for CoverDownset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A validated covering uniformity: a finite, directed base of covering
/// downsets, each admitting a strong star refinement inside the base filter.
///
/// Finite directed bases have a least member, so the generated filter is
/// principal; filter membership and equality reduce to comparisons against
/// the least member.
#[derive(Clone, PartialEq, Eq)]
pub struct CoverUniformity {
    frame: FiniteFrame,
    base: Vec<CoverDownset>,
    min: usize,
}

impl CoverUniformity {
    pub fn validate(frame: &FiniteFrame, base: Vec<CoverDownset>) -> Result<CoverUniformity> {
        if base.is_empty() {
            return Err(CoreError::EmptyBase);
        }
        let mut canon: Vec<CoverDownset> = Vec::new();
        for c in base {
            if *c.frame() != *frame {
                return Err(CoreError::FrameMismatch);
            }
            if !c.is_covering() {
                return Err(CoreError::NotCovering {
                    cover: format_gens(c.generators()),
                });
            }
            if !canon.contains(&c) {
                canon.push(c);
            }
        }
        canon.sort_by_key(cover_sort_key);

        // directedness: every pair of base members has a base member inside
        // the intersection
        for i in 0..canon.len() {
            for j in 0..canon.len() {
                let inter = canon[i].intersect(&canon[j]);
                if !canon.iter().any(|c| c.refines(&inter)) {
                    return Err(CoreError::NotDirected {
                        left: canon[i].to_string(),
                        right: canon[j].to_string(),
                    });
                }
            }
        }
        let min = (0..canon.len())
            .find(|&k| canon.iter().all(|c| canon[k].refines(c)))
            .expect("finite directed base has a least member");

        // star refinement: candidates are base members and one round of
        // pairwise intersections
        let mut candidates = canon.clone();
        for i in 0..canon.len() {
            for j in 0..i {
                candidates.push(canon[i].intersect(&canon[j]));
            }
        }
        for u in &canon {
            let found = candidates.iter().any(|w| match w.strengthen() {
                Ok(v) => v.star_set().refines(u),
                Err(_) => false,
            });
            if !found {
                return Err(CoreError::NoStarRefinement {
                    cover: u.to_string(),
                });
            }
        }
        Ok(CoverUniformity {
            frame: frame.clone(),
            base: canon,
            min,
        })
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn base(&self) -> &[CoverDownset] {
        &self.base
    }

    /// Least base member; the generated filter is exactly `↑ min`.
    pub fn min_member(&self) -> &CoverDownset {
        &self.base[self.min]
    }

    /// Filter membership: `c` contains the least base member.
    pub fn filter_member(&self, c: &CoverDownset) -> bool {
        self.min_member().refines(c)
    }

    pub fn filter_equal(&self, other: &CoverUniformity) -> bool {
        self.frame == other.frame
            && self.min_member().refines(other.min_member())
            && other.min_member().refines(self.min_member())
    }
}

fn cover_sort_key(c: &CoverDownset) -> Vec<u64> {
    c.generators().iter().map(|e| e.set().bits()).collect()
}

impl fmt::Display for CoverUniformity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, c) in self.base.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "⟩")
    }
}

impl fmt::Debug for CoverUniformity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
