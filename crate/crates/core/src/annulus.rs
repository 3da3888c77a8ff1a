//! Rational model of the map on the annulus `[0,1] × S¹` glued in along the
//! cut curve.
//!
//! Angles are fractions of a full turn. The level circle at height `t` is
//! rotated by
//!
//! ```text
//! θ(t) = −(δ⁰/n)(1 − t) + (δ¹/n) t
//! ```
//!
//! which matches the boundary rotations `−δ⁰/n` at `t = 0` and `+δ¹/n` at
//! `t = 1`. The `n`-th power rotates level `t` by `(n − 1)t − δ⁰`, i.e. by
//! `n − 1` full twists across the annulus relative to the boundary.
//!
//! The rotation amount is affine in `t` and added to `x`. Scaling `x` by it
//! instead would not give circle homeomorphisms agreeing with the boundary
//! rotations.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnulusError {
    #[error("annulus map needs n ≥ 3, got {0}")]
    DegreeTooSmall(i64),
    #[error("δ = {delta} must be a unit in [1, n-2] for n = {n}")]
    BadDelta { n: i64, delta: i64 },
    #[error("δ⁰ + δ¹ = {0} but must equal n − 1 = {1}")]
    BadDeltaSum(i64, i64),
    #[error("height t = {0} lies outside [0, 1]")]
    HeightOutOfRange(Rational),
    #[error("twist coefficient {0} is not an integer")]
    NonIntegralTwist(Rational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnnulusMap {
    n: i64,
    delta0: i64,
    delta1: i64,
}

impl AnnulusMap {
    pub fn new(n: i64, delta0: i64, delta1: i64) -> Result<Self, AnnulusError> {
        if n < 3 {
            return Err(AnnulusError::DegreeTooSmall(n));
        }
        for delta in [delta0, delta1] {
            if !(1..=n - 2).contains(&delta) || gcd(delta, n) != 1 {
                return Err(AnnulusError::BadDelta { n, delta });
            }
        }
        if delta0 + delta1 != n - 1 {
            return Err(AnnulusError::BadDeltaSum(delta0 + delta1, n - 1));
        }
        Ok(AnnulusMap { n, delta0, delta1 })
    }

    /// Every valid map of degree `n`.
    pub fn all(n: i64) -> Vec<AnnulusMap> {
        (1..=n - 2).filter_map(|d0| AnnulusMap::new(n, d0, n - 1 - d0).ok()).collect()
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn deltas(&self) -> (i64, i64) {
        (self.delta0, self.delta1)
    }

    /// Rotation `θ(t)` of the level circle, as an unreduced lift in ℚ.
    pub fn rotation_at(&self, t: Rational) -> Rational {
        let n = self.n;
        let left = Rational::new(-self.delta0, n).unwrap() * (Rational::one() - t);
        let right = Rational::new(self.delta1, n).unwrap() * t;
        left + right
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnnulusPoint {
    t: Rational,
    x: Rational,
}

impl AnnulusPoint {
    /// `x` is reduced into `[0, 1)`.
    pub fn new(t: Rational, x: Rational) -> Result<Self, AnnulusError> {
        if t < Rational::zero() || t > Rational::one() {
            return Err(AnnulusError::HeightOutOfRange(t));
        }
        Ok(AnnulusPoint { t, x: x.fract_mod1() })
    }

    pub fn t(&self) -> Rational {
        self.t
    }

    pub fn x(&self) -> Rational {
        self.x
    }
}

pub fn apply(m: &AnnulusMap, p: AnnulusPoint) -> AnnulusPoint {
    AnnulusPoint { t: p.t, x: (p.x + m.rotation_at(p.t)).fract_mod1() }
}

pub fn power(m: &AnnulusMap, k: u32, p: AnnulusPoint) -> AnnulusPoint {
    (0..k).fold(p, |q, _| apply(m, q))
}

/// Lifted displacement of `x` after `k` steps at height `t`, summed step by
/// step without reducing mod 1.
pub fn lifted_displacement(m: &AnnulusMap, k: u32, t: Rational) -> Rational {
    (0..k).fold(Rational::zero(), |acc, _| acc + m.rotation_at(t))
}

/// Number of full twists the `n`-th power makes across the annulus: the
/// difference of lifted displacements between `t = 1` and `t = 0`. Equals
/// `n − 1`.
pub fn twist_defect(m: &AnnulusMap) -> Result<i64, AnnulusError> {
    let k = u32::try_from(m.n).expect("degree fits in u32");
    let span = lifted_displacement(m, k, Rational::one()) - lifted_displacement(m, k, Rational::zero());
    span.to_integer().ok_or(AnnulusError::NonIntegralTwist(span))
}

/// Expected `x`-displacement of the `n`-th power at height `t`:
/// `(n − 1)t − δ⁰`, unreduced.
pub fn expected_nth_power_shift(m: &AnnulusMap, t: Rational) -> Rational {
    t * (m.n - 1) - Rational::from_integer(m.delta0)
}

/// Whether `power(m, n, p).x − p.x ≡ (n − 1)t − δ⁰ (mod 1)`.
pub fn gluing_identity_holds(m: &AnnulusMap, p: AnnulusPoint) -> bool {
    let k = u32::try_from(m.n).expect("degree fits in u32");
    let moved = power(m, k, p).x() - p.x();
    (moved - expected_nth_power_shift(m, p.t())).fract_mod1().is_zero()
}

/// Distinct rationals `a/b` in `[0, 1]` with `1 ≤ b ≤ max_denom`, ascending.
pub fn unit_grid(max_denom: i64) -> Vec<Rational> {
    assert!(max_denom >= 1, "grid needs a positive denominator bound");
    let mut out: Vec<Rational> = (1..=max_denom)
        .flat_map(|b| (0..=b).map(move |a| Rational::new(a, b).unwrap()))
        .collect();
    out.sort();
    out.dedup();
    out
}
