//! Points of the completed line as interval-refinement oracles.
//!
//! A `CauchyReal` answers, for every positive rational `ε`, with an interval
//! of width at most `ε` containing the number; answers at different
//! precisions overlap. Oracles must be pure: the same `ε` always returns the
//! same interval, so evaluation is safe to share between threads.

use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Signed};

use crate::error::{CoreError, Result};

/// A bounded open interval with exact rational endpoints, `lo < hi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<RationalInterval> {
        if lo >= hi {
            return Err(CoreError::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lo < *q && *q < self.hi
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    /// Largest absolute value over the closed hull.
    pub fn magnitude(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

type Oracle = dyn Fn(&BigRational) -> RationalInterval + Send + Sync;

/// A point of the completion of the rationals: an interval-refinement
/// oracle.
#[derive(Clone)]
pub struct CauchyReal {
    oracle: Arc<Oracle>,
}

impl CauchyReal {
    /// Wraps a refinement function. The function must return intervals of
    /// width ≤ ε that pairwise intersect across precisions.
    pub fn from_oracle(
        oracle: impl Fn(&BigRational) -> RationalInterval + Send + Sync + 'static,
    ) -> CauchyReal {
        CauchyReal {
            oracle: Arc::new(oracle),
        }
    }

    /// Queries the oracle at precision `eps > 0`.
    pub fn approximate(&self, eps: &BigRational) -> Result<RationalInterval> {
        if !eps.is_positive() {
            return Err(CoreError::NonpositivePrecision(eps.to_string()));
        }
        let iv = (self.oracle)(eps);
        debug_assert!(iv.width() <= *eps, "oracle width contract");
        Ok(iv)
    }
}

impl fmt::Debug for CauchyReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let probe = BigRational::new(1.into(), 1000.into());
        match self.approximate(&probe) {
            Ok(iv) => write!(f, "CauchyReal≈{iv}"),
            Err(_) => write!(f, "CauchyReal"),
        }
    }
}

fn half(q: &BigRational) -> BigRational {
    q / BigRational::from_integer(2.into())
}

/// Embeds a rational exactly: the ε-interval is `(q - ε/2, q + ε/2)`.
pub fn embed_rational(q: BigRational) -> CauchyReal {
    CauchyReal::from_oracle(move |eps| {
        let h = half(eps);
        RationalInterval::new(&q - &h, &q + &h).expect("positive width")
    })
}

/// Interval sum at precision `eps`: query both points at `eps/2` and add
/// endpoints.
pub fn real_add(x: &CauchyReal, y: &CauchyReal, eps: &BigRational) -> Result<RationalInterval> {
    if !eps.is_positive() {
        return Err(CoreError::NonpositivePrecision(eps.to_string()));
    }
    let h = half(eps);
    let a = x.approximate(&h)?;
    let b = y.approximate(&h)?;
    RationalInterval::new(a.lo() + b.lo(), a.hi() + b.hi())
}

/// Interval negation.
pub fn real_neg(x: &CauchyReal, eps: &BigRational) -> Result<RationalInterval> {
    let a = x.approximate(eps)?;
    RationalInterval::new(-a.hi().clone(), -a.lo().clone())
}

/// Interval product at precision `eps`.
///
/// One probe at precision 1 bounds the magnitudes by some `M`; the operands
/// are then re-queried at `δ = min(ε, 1) / (2(M + 1))`, which keeps the
/// endpoint-product spread below `ε`.
pub fn real_mul(x: &CauchyReal, y: &CauchyReal, eps: &BigRational) -> Result<RationalInterval> {
    if !eps.is_positive() {
        return Err(CoreError::NonpositivePrecision(eps.to_string()));
    }
    let one = BigRational::one();
    let probe_x = x.approximate(&one)?;
    let probe_y = y.approximate(&one)?;
    let magnitude = probe_x.magnitude().max(probe_y.magnitude());
    let delta =
        eps.clone().min(one.clone()) / ((&magnitude + &one) * BigRational::from_integer(2.into()));
    let a = x.approximate(&delta)?;
    let b = y.approximate(&delta)?;
    let products = [
        a.lo() * b.lo(),
        a.lo() * b.hi(),
        a.hi() * b.lo(),
        a.hi() * b.hi(),
    ];
    let lo = products.iter().min().unwrap().clone();
    let hi = products.iter().max().unwrap().clone();
    // nondegenerate operand intervals keep lo < hi, and the saddle shape of
    // the product surface keeps the exact value strictly inside
    RationalInterval::new(lo, hi)
}

/// Composed sum: a new oracle whose answers are `real_add` at each ε.
pub fn add(x: &CauchyReal, y: &CauchyReal) -> CauchyReal {
    let (x, y) = (x.clone(), y.clone());
    CauchyReal::from_oracle(move |eps| real_add(&x, &y, eps).expect("positive eps"))
}

pub fn neg(x: &CauchyReal) -> CauchyReal {
    let x = x.clone();
    CauchyReal::from_oracle(move |eps| real_neg(&x, eps).expect("positive eps"))
}

pub fn sub(x: &CauchyReal, y: &CauchyReal) -> CauchyReal {
    add(x, &neg(y))
}

/// Composed product: a new oracle whose answers are `real_mul` at each ε.
pub fn mul(x: &CauchyReal, y: &CauchyReal) -> CauchyReal {
    let (x, y) = (x.clone(), y.clone());
    CauchyReal::from_oracle(move |eps| real_mul(&x, &y, eps).expect("positive eps"))
}
