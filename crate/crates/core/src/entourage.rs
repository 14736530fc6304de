//! Validated entourage uniformities.

use std::fmt;

use crate::error::{CoreError, Result};
use crate::frame::FiniteFrame;
use crate::relation::{ProductFrame, Relation};

/// A finite, directed base of entourages: reflexive relations whose
/// opposites and composition witnesses stay inside the generated filter.
///
/// As with covers, a finite directed base has a least member and the filter
/// it generates is principal.
#[derive(Clone, PartialEq, Eq)]
pub struct EntourageUniformity {
    square: ProductFrame,
    base: Vec<Relation>,
    min: usize,
}

impl EntourageUniformity {
    pub fn validate(square: &ProductFrame, base: Vec<Relation>) -> Result<EntourageUniformity> {
        if base.is_empty() {
            return Err(CoreError::EmptyBase);
        }
        let mut canon: Vec<Relation> = Vec::new();
        for e in base {
            if e.square().frame() != square.frame() {
                return Err(CoreError::FrameMismatch);
            }
            if !canon.contains(&e) {
                canon.push(e);
            }
        }
        canon.sort_by_key(|e| e.element().set().bits());

        for e in &canon {
            e.reflexivity_certificate(&e.to_string())?;
        }
        // directedness
        for i in 0..canon.len() {
            for j in 0..canon.len() {
                let meet = canon[i].meet(&canon[j]);
                if !canon.iter().any(|e| e.leq(&meet)) {
                    return Err(CoreError::NotDirected {
                        left: canon[i].to_string(),
                        right: canon[j].to_string(),
                    });
                }
            }
        }
        let min = (0..canon.len())
            .find(|&k| canon.iter().all(|e| canon[k].leq(e)))
            .expect("finite directed base has a least member");

        // symmetric companion: the opposite must lie in the filter
        for e in &canon {
            if !canon[min].leq(&e.opposite()) {
                return Err(CoreError::NoSymmetricCompanion {
                    entourage: e.to_string(),
                });
            }
        }
        // transitivity witness among base members and one round of meets
        let mut candidates = canon.clone();
        for i in 0..canon.len() {
            for j in 0..i {
                candidates.push(canon[i].meet(&canon[j]));
            }
        }
        for e in &canon {
            let found = candidates
                .iter()
                .any(|f| f.compose(f).map(|ff| ff.leq(e)).unwrap_or(false));
            if !found {
                return Err(CoreError::NoTransitivityWitness {
                    entourage: e.to_string(),
                });
            }
        }
        Ok(EntourageUniformity {
            square: square.clone(),
            base: canon,
            min,
        })
    }

    /// Base `{⊤}`: the chaotic uniformity.
    pub fn chaotic(frame: &FiniteFrame) -> Result<EntourageUniformity> {
        let square = ProductFrame::square(frame)?;
        let top = Relation::top(&square);
        EntourageUniformity::validate(&square, vec![top])
    }

    pub fn square(&self) -> &ProductFrame {
        &self.square
    }

    pub fn frame(&self) -> &FiniteFrame {
        self.square.left()
    }

    pub fn base(&self) -> &[Relation] {
        &self.base
    }

    pub fn min_member(&self) -> &Relation {
        &self.base[self.min]
    }

    pub fn filter_member(&self, e: &Relation) -> bool {
        self.min_member().leq(e)
    }

    pub fn filter_equal(&self, other: &EntourageUniformity) -> bool {
        self.square.frame() == other.square.frame()
            && self.min_member().element() == other.min_member().element()
    }
}

impl fmt::Display for EntourageUniformity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, e) in self.base.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "⟩")
    }
}

impl fmt::Debug for EntourageUniformity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
