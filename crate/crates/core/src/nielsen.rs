//! Valency calculus and the data set of a root.
//!
//! A root `h` of degree `n` of the twist about a nonseparating curve `C` on a
//! closed surface of genus `g + 1` restricts to a periodic map of order `n` on
//! the genus-`g` surface with two boundary curves obtained by cutting along
//! `C`. Its conjugacy class is recorded by
//!
//! ```text
//! [n, g', (σ⁰, σ¹); (σ₁, λ₁), …, (σ_k, λ_k)]
//! ```
//!
//! where `g'` is the genus of the quotient orbifold, `σ⁰, σ¹` are the
//! valency residues of the two boundary curves and each `(σ_j, λ_j)` is the
//! residue and isotropy order of a cone point. Three conditions single out the
//! data sets that actually occur:
//!
//! 1. `2g = 2g'n + Σ (n/λ_j)(λ_j − 1)` (Riemann–Hurwitz, integer form),
//! 2. `Σ σ_j·n/λ_j + σ⁰ + σ¹ ≡ 0 (mod n)`,
//! 3. `σ⁰ + σ¹ + σ⁰σ¹ ≡ 0 (mod n)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NielsenError {
    #[error("invalid valency (m={m}, λ={lambda}, σ={sigma}): {reason}")]
    InvalidValency { m: i64, lambda: i64, sigma: i64, reason: &'static str },
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(i64),
    #[error("quotient genus must be nonnegative, got {0}")]
    NegativeQuotientGenus(i64),
    #[error("boundary residue {sigma} is not a unit in [1, {}]", .n - 1)]
    BadBoundaryResidue { n: i64, sigma: i64 },
    #[error("cone point ({sigma}, {lambda}) is invalid for degree {n}: {reason}")]
    BadOrbit { n: i64, sigma: i64, lambda: i64, reason: &'static str },
    #[error("2g = {0} is odd, so no integral genus exists")]
    NonIntegralGenus(i64),
    #[error("screw data inconsistent: s + δ⁰/n + δ¹/n = {0} is not an integer")]
    ScrewInconsistent(Rational),
    #[error("unknown boundary convention {0:?} (expected `unordered` or `ordered`)")]
    UnknownConvention(String),
}

/// How the two boundary residues are compared when counting classes.
///
/// An orientation-preserving conjugation may flip `C` and swap the two sides
/// of its annulus, so the pair is unordered by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryConvention {
    #[default]
    Unordered,
    Ordered,
}

impl FromStr for BoundaryConvention {
    type Err = NielsenError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unordered" => Ok(Self::Unordered),
            "ordered" => Ok(Self::Ordered),
            other => Err(NielsenError::UnknownConvention(other.to_string())),
        }
    }
}

impl fmt::Display for BoundaryConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Unordered => "unordered",
            Self::Ordered => "ordered",
        })
    }
}

/// Valency `(m, λ, σ)` of an oriented curve or a multiple point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Valency {
    pub m: i64,
    pub lambda: i64,
    pub sigma: i64,
}

/// Second valency `(m, λ, δ)` with `σδ ≡ 1 (mod λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SecondValency {
    pub m: i64,
    pub lambda: i64,
    pub delta: i64,
}

fn check_residue_triple(m: i64, lambda: i64, r: i64) -> Result<(), &'static str> {
    if m < 1 {
        return Err("m must be positive");
    }
    if lambda < 1 {
        return Err("λ must be positive");
    }
    if !(0..lambda).contains(&r) {
        return Err("residue out of [0, λ-1]");
    }
    if (r == 0) != (lambda == 1) {
        return Err("residue is 0 exactly when λ = 1");
    }
    if gcd(r, lambda) != 1 {
        return Err("residue not coprime to λ");
    }
    Ok(())
}

impl Valency {
    pub fn new(m: i64, lambda: i64, sigma: i64) -> Result<Self, NielsenError> {
        check_residue_triple(m, lambda, sigma)
            .map_err(|reason| NielsenError::InvalidValency { m, lambda, sigma, reason })?;
        Ok(Valency { m, lambda, sigma })
    }
}

impl SecondValency {
    pub fn new(m: i64, lambda: i64, delta: i64) -> Result<Self, NielsenError> {
        check_residue_triple(m, lambda, delta)
            .map_err(|reason| NielsenError::InvalidValency { m, lambda, sigma: delta, reason })?;
        Ok(SecondValency { m, lambda, delta })
    }
}

/// Pairs a valency with its second valency through the modular inverse.
pub fn second_valency(v: Valency) -> Result<SecondValency, NielsenError> {
    let v = Valency::new(v.m, v.lambda, v.sigma)?;
    let delta = if v.lambda == 1 {
        0
    } else {
        mod_inverse(v.sigma, v.lambda).expect("σ is a unit mod λ")
    };
    Ok(SecondValency { m: v.m, lambda: v.lambda, delta })
}

/// Inverse of [`second_valency`].
pub fn first_valency(v: SecondValency) -> Result<Valency, NielsenError> {
    let v = SecondValency::new(v.m, v.lambda, v.delta)?;
    let sigma = if v.lambda == 1 {
        0
    } else {
        mod_inverse(v.delta, v.lambda).expect("δ is a unit mod λ")
    };
    Ok(Valency { m: v.m, lambda: v.lambda, sigma })
}

/// Screw data of the cut curve under a root. For a root of degree `n` the
/// screw number is `1/n`, the curve is non-amphidrome and `α = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScrewData {
    pub s: Rational,
    pub amphidrome: bool,
    pub alpha: i64,
}

impl ScrewData {
    pub fn for_root(n: i64) -> Self {
        ScrewData {
            s: Rational::new(1, n).expect("n >= 2"),
            amphidrome: false,
            alpha: 1,
        }
    }
}

/// Boundary valency residues `(σ⁰, σ¹)` of the two sides of the cut curve.
///
/// Construction only checks that both residues are units mod `n`; whether the
/// pair satisfies the boundary condition is [`BoundaryPair::satisfies_condition3`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundaryPair {
    n: i64,
    sigma0: i64,
    sigma1: i64,
}

impl BoundaryPair {
    pub fn new(n: i64, sigma0: i64, sigma1: i64) -> Result<Self, NielsenError> {
        if n < 2 {
            return Err(NielsenError::DegreeTooSmall(n));
        }
        for sigma in [sigma0, sigma1] {
            if !(1..n).contains(&sigma) || gcd(sigma, n) != 1 {
                return Err(NielsenError::BadBoundaryResidue { n, sigma });
            }
        }
        Ok(BoundaryPair { n, sigma0, sigma1 })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn sigmas(&self) -> (i64, i64) {
        (self.sigma0, self.sigma1)
    }

    /// Rotation numerators `(δ⁰, δ¹)`, with `σ^ν δ^ν ≡ 1 (mod n)`.
    pub fn deltas(&self) -> (i64, i64) {
        let inv = |s| mod_inverse(s, self.n).expect("boundary residue is a unit");
        (inv(self.sigma0), inv(self.sigma1))
    }

    pub fn swapped(&self) -> Self {
        BoundaryPair { n: self.n, sigma0: self.sigma1, sigma1: self.sigma0 }
    }

    pub fn sorted(&self) -> Self {
        if self.sigma0 <= self.sigma1 {
            *self
        } else {
            self.swapped()
        }
    }

    /// `σ⁰ + σ¹ + σ⁰σ¹ ≡ 0 (mod n)`, checked literally and in the factored
    /// form `(1 + σ⁰)(1 + σ¹) ≡ 1 (mod n)`. The two must agree.
    pub fn satisfies_condition3(&self) -> bool {
        let (a, b, n) = (self.sigma0, self.sigma1, self.n);
        let literal = (a + b + a * b).rem_euclid(n) == 0;
        let factored = ((1 + a) * (1 + b)).rem_euclid(n) == 1 % n;
        assert_eq!(literal, factored, "condition (3) forms disagree for ({a},{b}) mod {n}");
        literal
    }

    /// `δ⁰ + δ¹ = n − 1` with `1 ≤ δ^ν ≤ n − 2`.
    pub fn deltas_sum_to_n_minus_one(&self) -> bool {
        let (d0, d1) = self.deltas();
        let range = 1..=self.n - 2;
        range.contains(&d0) && range.contains(&d1) && d0 + d1 == self.n - 1
    }
}

/// All boundary pairs of degree `n` satisfying condition (3), ordered
/// lexicographically by `(σ⁰, σ¹)`. Empty for every even `n`.
pub fn boundary_pairs(n: i64) -> Vec<BoundaryPair> {
    assert!(n >= 2, "degree must be at least 2");
    let units = crate::arith::units(n);
    let mut out = Vec::new();
    for &a in &units {
        for &b in &units {
            let pair = BoundaryPair { n, sigma0: a, sigma1: b };
            if pair.satisfies_condition3() {
                out.push(pair);
            }
        }
    }
    out
}

/// A cone point `(σ, λ)` of the quotient orbifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrbitPoint {
    pub sigma: i64,
    pub lambda: i64,
}

impl Ord for OrbitPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.lambda, self.sigma).cmp(&(other.lambda, other.sigma))
    }
}

impl PartialOrd for OrbitPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized form of a [`DataSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSetRecord {
    pub n: i64,
    pub g_prime: i64,
    pub sigma_boundary: [i64; 2],
    pub orbits: Vec<[i64; 2]>,
}

/// The data set `[n, g', (σ⁰, σ¹); (σ₁, λ₁), …]`.
///
/// Only structural ranges are enforced at construction; the three
/// conditions are checked by [`validate_dataset`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DataSetRecord", into = "DataSetRecord")]
pub struct DataSet {
    g_prime: i64,
    boundary: BoundaryPair,
    orbits: Vec<OrbitPoint>,
}

impl DataSet {
    pub fn new(
        n: i64,
        g_prime: i64,
        sigma_boundary: (i64, i64),
        orbits: &[(i64, i64)],
    ) -> Result<Self, NielsenError> {
        if n < 2 {
            return Err(NielsenError::DegreeTooSmall(n));
        }
        if g_prime < 0 {
            return Err(NielsenError::NegativeQuotientGenus(g_prime));
        }
        let boundary = BoundaryPair::new(n, sigma_boundary.0, sigma_boundary.1)?;
        let orbits = orbits
            .iter()
            .map(|&(sigma, lambda)| {
                let bad = |reason| NielsenError::BadOrbit { n, sigma, lambda, reason };
                if lambda <= 1 {
                    return Err(bad("λ must exceed 1"));
                }
                if n % lambda != 0 {
                    return Err(bad("λ must divide n"));
                }
                if !(1..lambda).contains(&sigma) || gcd(sigma, lambda) != 1 {
                    return Err(bad("σ must be a unit in [1, λ-1]"));
                }
                Ok(OrbitPoint { sigma, lambda })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DataSet { g_prime, boundary, orbits })
    }

    pub(crate) fn from_parts(g_prime: i64, boundary: BoundaryPair, orbits: Vec<OrbitPoint>) -> Self {
        DataSet { g_prime, boundary, orbits }
    }

    pub fn n(&self) -> i64 {
        self.boundary.n
    }

    pub fn g_prime(&self) -> i64 {
        self.g_prime
    }

    pub fn boundary(&self) -> BoundaryPair {
        self.boundary
    }

    pub fn orbits(&self) -> &[OrbitPoint] {
        &self.orbits
    }

    pub fn to_record(&self) -> DataSetRecord {
        self.clone().into()
    }
}

impl From<DataSet> for DataSetRecord {
    fn from(d: DataSet) -> Self {
        DataSetRecord {
            n: d.n(),
            g_prime: d.g_prime,
            sigma_boundary: [d.boundary.sigma0, d.boundary.sigma1],
            orbits: d.orbits.iter().map(|o| [o.sigma, o.lambda]).collect(),
        }
    }
}

impl TryFrom<DataSetRecord> for DataSet {
    type Error = NielsenError;
    fn try_from(r: DataSetRecord) -> Result<Self, Self::Error> {
        let orbits: Vec<(i64, i64)> = r.orbits.iter().map(|o| (o[0], o[1])).collect();
        DataSet::new(r.n, r.g_prime, (r.sigma_boundary[0], r.sigma_boundary[1]), &orbits)
    }
}

impl Ord for DataSet {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n(), self.g_prime, self.boundary.sigmas(), &self.orbits).cmp(&(
            other.n(),
            other.g_prime,
            other.boundary.sigmas(),
            &other.orbits,
        ))
    }
}

impl PartialOrd for DataSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s0, s1) = self.boundary.sigmas();
        write!(f, "[{}, {}, ({},{});", self.n(), self.g_prime, s0, s1)?;
        if self.orbits.is_empty() {
            write!(f, " -")?;
        }
        for (i, o) in self.orbits.iter().enumerate() {
            let sep = if i == 0 { " " } else { "," };
            write!(f, "{sep}({},{})", o.sigma, o.lambda)?;
        }
        write!(f, "]")
    }
}

/// `2g` computed from the integer form of the Riemann–Hurwitz condition.
pub fn twice_genus(d: &DataSet) -> i64 {
    let n = d.n();
    2 * d.g_prime * n + d.orbits.iter().map(|o| (n / o.lambda) * (o.lambda - 1)).sum::<i64>()
}

/// Genus `g` of the cut surface (the closed surface has genus `g + 1`).
pub fn genus_of(d: &DataSet) -> Result<i64, NielsenError> {
    let twice = twice_genus(d);
    if twice % 2 != 0 {
        return Err(NielsenError::NonIntegralGenus(twice));
    }
    Ok(twice / 2)
}

/// One of the three defining conditions of a data set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// Riemann–Hurwitz equality for the requested genus.
    RiemannHurwitz,
    /// Rotation-sum congruence over cone points and boundary.
    RotationSum,
    /// Boundary product congruence `σ⁰ + σ¹ + σ⁰σ¹ ≡ 0`.
    BoundaryProduct,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::RiemannHurwitz => "(1) Riemann-Hurwitz",
            Condition::RotationSum => "(2) rotation sum",
            Condition::BoundaryProduct => "(3) boundary product",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Condition>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Residue of `Σ σ_j·n/λ_j + σ⁰ + σ¹` modulo `n`.
pub fn rotation_sum_residue(d: &DataSet) -> i64 {
    let n = d.n();
    let (s0, s1) = d.boundary.sigmas();
    let cone: i64 = d.orbits.iter().map(|o| o.sigma * (n / o.lambda)).sum();
    (cone + s0 + s1).rem_euclid(n)
}

/// Checks conditions (1)–(3) for a closed surface of genus `g + 1`.
pub fn validate_dataset(d: &DataSet, g: i64) -> Verdict {
    let mut violations = Vec::new();
    if twice_genus(d) != 2 * g {
        violations.push(Condition::RiemannHurwitz);
    }
    if rotation_sum_residue(d) != 0 {
        violations.push(Condition::RotationSum);
    }
    if !d.boundary.satisfies_condition3() {
        violations.push(Condition::BoundaryProduct);
    }
    Verdict { violations }
}

/// Validates a raw record: structural errors come back as `Err`, condition
/// failures as a [`Verdict`].
pub fn validate_record(r: &DataSetRecord, g: i64) -> Result<Verdict, NielsenError> {
    let d = DataSet::try_from(r.clone())?;
    Ok(validate_dataset(&d, g))
}

/// Screw-number consistency at the cut curve: `s + δ⁰/n + δ¹/n` must be an
/// integer with `s = 1/n` and both boundary periods equal to `n`.
pub fn screw_consistency(d: &DataSet) -> Result<i64, NielsenError> {
    let n = d.n();
    let screw = ScrewData::for_root(n);
    debug_assert!(!screw.amphidrome && screw.alpha == 1);
    let (d0, d1) = d.boundary.deltas();
    let total = screw.s + Rational::new(d0, n).unwrap() + Rational::new(d1, n).unwrap();
    total.to_integer().ok_or(NielsenError::ScrewInconsistent(total))
}

/// Representative of the conjugacy class: cone points sorted by `(λ, σ)`
/// and, under the unordered convention, `σ⁰ ≤ σ¹`.
pub fn canonical_form(d: &DataSet, convention: BoundaryConvention) -> DataSet {
    let mut orbits = d.orbits.clone();
    orbits.sort();
    let boundary = match convention {
        BoundaryConvention::Unordered => d.boundary.sorted(),
        BoundaryConvention::Ordered => d.boundary,
    };
    DataSet { g_prime: d.g_prime, boundary, orbits }
}

pub fn equivalent(d1: &DataSet, d2: &DataSet, convention: BoundaryConvention) -> bool {
    canonical_form(d1, convention) == canonical_form(d2, convention)
}
