//! p-adic valuations and exact ball arithmetic.
//!
//! A ball `c + O(p^k)` has a rational center and an integer precision `k`,
//! and denotes `{x | v_p(x - c) ≥ k}`. Centers are kept exact; precision
//! bookkeeping uses the valuation of the centers, so the ball image of a
//! ring operation always contains the exact image of its members.

use std::fmt;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

use crate::error::{CoreError, Result};

/// Valuation of a rational: the exponent of `p`, or infinity at zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn at_least(self, k: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }

    fn plus(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    fn min(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Infinite, v) | (v, Valuation::Infinite) => v,
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a.min(b)),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = (n.clone() / &p, n.clone() % &p);
        if r.is_zero() {
            v += 1;
            n = q;
        } else {
            return v;
        }
    }
}

/// `v_p` of a rational: valuation of the numerator minus that of the
/// denominator.
pub fn padic_valuation(q: &BigRational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(CoreError::NotPrime(p));
    }
    if q.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(
        int_valuation(q.numer(), p) - int_valuation(q.denom(), p),
    ))
}

fn pow_p(p: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    let p = BigInt::from(p);
    for _ in 0..k {
        acc *= &p;
    }
    acc
}

/// `p^k` as an exact rational, for any integer `k`.
pub fn p_power(p: u64, k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from_integer(pow_p(p, k as u64))
    } else {
        BigRational::new(BigInt::one(), pow_p(p, (-k) as u64))
    }
}

/// The ball `center + O(p^k)`.
#[derive(Clone)]
pub struct PAdicBall {
    prime: u64,
    center: BigRational,
    precision: i64,
}

impl PAdicBall {
    pub fn new(prime: u64, center: BigRational, precision: i64) -> Result<PAdicBall> {
        if !is_prime(prime) {
            return Err(CoreError::NotPrime(prime));
        }
        let mut ball = PAdicBall {
            prime,
            center,
            precision,
        };
        ball.canonicalize();
        Ok(ball)
    }

    /// Reduces the center modulo `p^k`. Writing `c = p^v · a/b` with `a, b`
    /// coprime to `p`, the canonical center is `p^v · (a·b⁻¹ mod p^{k-v})`;
    /// a center of valuation ≥ k becomes zero.
    fn canonicalize(&mut self) {
        if self.center.is_zero() {
            return;
        }
        let v = int_valuation(self.center.numer(), self.prime)
            - int_valuation(self.center.denom(), self.prime);
        if v >= self.precision {
            self.center = BigRational::zero();
            return;
        }
        let scale = p_power(self.prime, v);
        let unit = &self.center / &scale;
        let modulus = pow_p(self.prime, (self.precision - v) as u64);
        // invert the denominator mod p^{k-v}
        let denom = unit.denom().mod_floor_big(&modulus);
        let inv = mod_inverse(&denom, &modulus).expect("denominator coprime to p");
        let reduced = (unit.numer() * inv).mod_floor_big(&modulus);
        self.center = scale * BigRational::from_integer(reduced);
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn center(&self) -> &BigRational {
        &self.center
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// Membership: `v_p(x - c) ≥ k`.
    pub fn contains(&self, x: &BigRational) -> Result<bool> {
        Ok(padic_valuation(&(x - &self.center), self.prime)?.at_least(self.precision))
    }

    /// Ball equality: same precision and centers within `p^k`.
    pub fn same_ball(&self, other: &PAdicBall) -> Result<bool> {
        if self.prime != other.prime {
            return Err(CoreError::PrimeMismatch(self.prime, other.prime));
        }
        Ok(self.precision == other.precision
            && padic_valuation(&(&self.center - &other.center), self.prime)?
                .at_least(self.precision))
    }
}

impl PartialEq for PAdicBall {
    fn eq(&self, other: &Self) -> bool {
        self.same_ball(other).unwrap_or(false)
    }
}
impl Eq for PAdicBall {}

impl fmt::Display for PAdicBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.center, self.prime, self.precision)
    }
}

impl fmt::Debug for PAdicBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    // extended Euclid
    let (mut old_r, mut r) = (a.clone(), m.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    while !r.is_zero() {
        let q = &old_r / &r;
        let tmp = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, tmp);
        let tmp = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, tmp);
    }
    if old_r == BigInt::one() {
        Some(old_s.mod_floor_big(m))
    } else {
        None
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingOp {
    Add,
    Neg,
    Mul,
}

/// Lifted ring operations on balls. Addition keeps the coarser precision;
/// negation keeps its operand's; multiplication tracks how the centers'
/// valuations damp the error terms:
/// `k = min(k_a + v_p(c_b), k_b + v_p(c_a), k_a + k_b)`.
pub fn padic_arith(op: RingOp, a: &PAdicBall, b: &PAdicBall) -> Result<PAdicBall> {
    if a.prime != b.prime {
        return Err(CoreError::PrimeMismatch(a.prime, b.prime));
    }
    let p = a.prime;
    match op {
        RingOp::Add => PAdicBall::new(p, &a.center + &b.center, a.precision.min(b.precision)),
        RingOp::Neg => PAdicBall::new(p, -a.center.clone(), a.precision),
        RingOp::Mul => {
            let va = padic_valuation(&a.center, p)?;
            let vb = padic_valuation(&b.center, p)?;
            let k = Valuation::Finite(a.precision + b.precision)
                .min(vb.plus(a.precision))
                .min(va.plus(b.precision));
            let k = k.finite().expect("sum of finite precisions is finite");
            PAdicBall::new(p, &a.center * &b.center, k)
        }
    }
}
