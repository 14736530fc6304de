//! The uniformiser for strongly regular frames: given an interpolative
//! relation contained in rather-below, the subbasic covers `↓{a*, b}` for
//! related pairs `(a, b)` generate a covering uniformity.

use crate::cover::CoverDownset;
use crate::error::{CoreError, Result};
use crate::frame::{FiniteFrame, FrameElement};
use crate::uniform::PreUniformLocale;

const MAX_BASE: usize = 512;

/// `a ≺ b`: the pseudocomplement of `a` joins with `b` to top.
pub fn rather_below(a: &FrameElement, b: &FrameElement) -> bool {
    a.pseudocomplement().join(b).is_top()
}

/// Builds the covering uniformity generated by `↓{a*, b}` for each pair
/// `(a, b)` of the supplied relation.
///
/// The relation must interpolate within itself and be contained in
/// rather-below; the base is the closure of the subbasic covers under
/// pairwise intersection, strengthened.
pub fn strong_regularity_uniformity(
    frame: &FiniteFrame,
    relation: &[(FrameElement, FrameElement)],
) -> Result<PreUniformLocale> {
    for (a, b) in relation {
        if !frame.contains(a) || !frame.contains(b) {
            return Err(CoreError::FrameMismatch);
        }
        if !rather_below(a, b) {
            return Err(CoreError::NotRatherBelow {
                left: a.to_string(),
                right: b.to_string(),
            });
        }
        let interpolates = relation
            .iter()
            .any(|(x, c)| x == a && relation.iter().any(|(c2, y)| c2 == c && y == b));
        if !interpolates {
            return Err(CoreError::NotInterpolative {
                left: a.to_string(),
                right: b.to_string(),
            });
        }
    }
    let mut base: Vec<CoverDownset> = vec![CoverDownset::chaotic(frame)];
    for (a, b) in relation {
        let sub = CoverDownset::new(frame, vec![a.pseudocomplement(), b.clone()])?;
        let sub = sub.strengthen()?;
        if !base.contains(&sub) {
            base.push(sub);
        }
    }
    // close under pairwise intersection so the base is directed
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = base.clone();
        for (i, u) in snapshot.iter().enumerate() {
            for v in snapshot.iter().take(i) {
                let w = u.intersect(v).strengthen()?;
                if !base.contains(&w) {
                    if base.len() >= MAX_BASE {
                        return Err(CoreError::TooLarge {
                            what: "strong-regularity cover base".into(),
                        });
                    }
                    base.push(w);
                    changed = true;
                }
            }
        }
    }
    PreUniformLocale::from_cover_base(frame, base)
}
