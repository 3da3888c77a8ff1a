//! Twist words for the degree-3 root and their homology-level verification.
//!
//! On the closed surface of genus `g + 1` the curves `α_i, α'_i, β_i, γ` and
//! the separating curves `s_j` give the words
//!
//! ```text
//! ρ_1 = (t_{α1} t_{β1})²
//! ρ_i = t_{αi}² t_{α'i} t_{βi}        (2 ≤ i ≤ g−1)
//! ρ_g = t_{αg} t_γ t_{α'g} t_{βg}
//! ĥ   = ρ_g ρ_{g−1}⁻¹ ρ_{g−2} ⋯ ρ_1^{±1}
//! h   = t_{α_{g+1}} ĥ⁻¹
//! ```
//!
//! with `ĥ³ = t²_{α_{g+1}}`, so `h³ = t_{α_{g+1}}`. Words store curve names
//! only; the checks here evaluate them in `Sp(2(g+1), ℤ)`, which confirms the
//! identities on homology but does not prove them in the mapping class group.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symplectic::{
    evaluate_word, pairing, standard_j, transvection_power, HomologyClass, SymplecticError,
};

/// Environment variable naming a directory of curve tables that overrides
/// the shipped ones.
pub const DATA_DIR_ENV: &str = "TWISTROOT_DATA_DIR";

#[derive(Debug, Error)]
pub enum TwistWordError {
    #[error("ρ_{i} is undefined for g = {g} (need 1 ≤ i ≤ g)")]
    IndexOutOfRange { i: usize, g: usize },
    #[error("the degree-3 word needs g ≥ 2 (closed genus ≥ 3), got g = {0}")]
    UnsupportedGenus(usize),
    #[error("unknown curve name {0:?}")]
    UnknownCurveName(String),
    #[error("letter exponent must be ±1, got {0}")]
    BadExponent(i8),
    #[error("curve table: {0}")]
    Table(String),
    #[error("curve table is for genus {table}, expected genus {expected}")]
    TableGenusMismatch { table: usize, expected: usize },
    #[error("no curve table for genus {0}")]
    NoTable(usize),
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

/// A named curve of the standard configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    Alpha(usize),
    AlphaPrime(usize),
    Beta(usize),
    Gamma,
    Sep(usize),
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Alpha(i) => write!(f, "alpha_{i}"),
            Curve::AlphaPrime(i) => write!(f, "alpha_prime_{i}"),
            Curve::Beta(i) => write!(f, "beta_{i}"),
            Curve::Gamma => write!(f, "gamma"),
            Curve::Sep(j) => write!(f, "s_{j}"),
        }
    }
}

impl FromStr for Curve {
    type Err = TwistWordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TwistWordError::UnknownCurveName(s.to_string());
        if s == "gamma" {
            return Ok(Curve::Gamma);
        }
        let (stem, idx) = s.rsplit_once('_').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match stem {
            "alpha" => Ok(Curve::Alpha(idx)),
            "alpha_prime" => Ok(Curve::AlphaPrime(idx)),
            "beta" => Ok(Curve::Beta(idx)),
            "s" => Ok(Curve::Sep(idx)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub curve: Curve,
    pub exponent: i8,
}

impl Letter {
    pub fn new(curve: Curve, exponent: i8) -> Result<Self, TwistWordError> {
        if exponent != 1 && exponent != -1 {
            return Err(TwistWordError::BadExponent(exponent));
        }
        Ok(Letter { curve, exponent })
    }

    fn twist(curve: Curve) -> Self {
        Letter { curve, exponent: 1 }
    }
}

/// A word in Dehn twists, read left to right as a product of mapping classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TwistWord(Vec<Letter>);

impl TwistWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, TwistWordError> {
        for l in &letters {
            Letter::new(l.curve, l.exponent)?;
        }
        Ok(TwistWord(letters))
    }

    pub fn from_curves(curves: &[Curve]) -> Self {
        TwistWord(curves.iter().map(|&c| Letter::twist(c)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        TwistWord(self.0.iter().rev().map(|l| Letter { curve: l.curve, exponent: -l.exponent }).collect())
    }

    pub fn then(&self, other: &TwistWord) -> Self {
        TwistWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        TwistWord(self.0.iter().copied().cycle().take(self.0.len() * k).collect())
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "t({})", l.curve)?;
            if l.exponent < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// `ρ_i` for the closed surface of genus `g + 1`.
pub fn rho(i: usize, g: usize) -> Result<TwistWord, TwistWordError> {
    if g < 2 {
        return Err(TwistWordError::UnsupportedGenus(g));
    }
    if i < 1 || i > g {
        return Err(TwistWordError::IndexOutOfRange { i, g });
    }
    use Curve::*;
    let curves = if i == 1 {
        vec![Alpha(1), Beta(1), Alpha(1), Beta(1)]
    } else if i < g {
        vec![Alpha(i), Alpha(i), AlphaPrime(i), Beta(i)]
    } else {
        vec![Alpha(g), Gamma, AlphaPrime(g), Beta(g)]
    };
    Ok(TwistWord::from_curves(&curves))
}

/// `ĥ = ρ_g ρ_{g−1}⁻¹ ρ_{g−2} ⋯`, exponents alternating from `+1` at `ρ_g`.
pub fn hhat(g: usize) -> Result<TwistWord, TwistWordError> {
    if g < 2 {
        return Err(TwistWordError::UnsupportedGenus(g));
    }
    let mut word = TwistWord::default();
    for i in (1..=g).rev() {
        let r = rho(i, g)?;
        word = if (g - i).is_multiple_of(2) { word.then(&r) } else { word.then(&r.inverse()) };
    }
    Ok(word)
}

/// `h = t_{α_{g+1}} ĥ⁻¹`.
pub fn degree3_root(g: usize) -> Result<TwistWord, TwistWordError> {
    let twist = TwistWord::from_curves(&[Curve::Alpha(g + 1)]);
    Ok(twist.then(&hhat(g)?.inverse()))
}

/// Homology classes of the named curves on the closed surface of genus
/// `gplus1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSystem {
    gplus1: usize,
    classes: BTreeMap<Curve, HomologyClass>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct CurveTableFile {
    gplus1: usize,
    curves: BTreeMap<String, Vec<i64>>,
}

impl CurveSystem {
    pub fn new(gplus1: usize, classes: BTreeMap<Curve, HomologyClass>) -> Result<Self, TwistWordError> {
        if gplus1 < 2 {
            return Err(TwistWordError::Table(format!("gplus1 must be at least 2, got {gplus1}")));
        }
        let dim = 2 * gplus1;
        for (curve, class) in &classes {
            if class.dim() != dim {
                return Err(TwistWordError::Table(format!(
                    "{curve} has {} coordinates, expected {dim}",
                    class.dim()
                )));
            }
            let in_range = match *curve {
                Curve::Alpha(i) | Curve::AlphaPrime(i) | Curve::Beta(i) => i <= gplus1,
                Curve::Sep(j) => j + 2 <= gplus1,
                Curve::Gamma => true,
            };
            if !in_range {
                return Err(TwistWordError::Table(format!("{curve} is out of range for genus {gplus1}")));
            }
        }
        Ok(CurveSystem { gplus1, classes })
    }

    pub fn from_toml_str(text: &str) -> Result<Self, TwistWordError> {
        let file: CurveTableFile = toml::from_str(text).map_err(|e| TwistWordError::Table(e.to_string()))?;
        let classes = file
            .curves
            .into_iter()
            .map(|(name, v)| Ok((name.parse::<Curve>()?, HomologyClass(v))))
            .collect::<Result<BTreeMap<_, _>, TwistWordError>>()?;
        Self::new(file.gplus1, classes)
    }

    pub fn to_toml_string(&self) -> String {
        let file = CurveTableFile {
            gplus1: self.gplus1,
            curves: self.classes.iter().map(|(c, v)| (c.to_string(), v.0.clone())).collect(),
        };
        toml::to_string(&file).expect("curve table serializes")
    }

    pub fn load(path: &Path) -> Result<Self, TwistWordError> {
        let text = std::fs::read_to_string(path).map_err(|source| TwistWordError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml_str(&text)
    }

    /// The table shipped with the crate, for closed genus 3 through 6.
    pub fn shipped(gplus1: usize) -> Result<Self, TwistWordError> {
        let text = match gplus1 {
            3 => include_str!("../data/curves_genus3.toml"),
            4 => include_str!("../data/curves_genus4.toml"),
            5 => include_str!("../data/curves_genus5.toml"),
            6 => include_str!("../data/curves_genus6.toml"),
            other => return Err(TwistWordError::NoTable(other)),
        };
        Self::from_toml_str(text)
    }

    pub fn file_name(gplus1: usize) -> String {
        format!("curves_genus{gplus1}.toml")
    }

    /// Table from `$TWISTROOT_DATA_DIR` when set, otherwise the shipped one.
    pub fn locate(gplus1: usize) -> Result<Self, TwistWordError> {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) => Self::load(&Path::new(&dir).join(Self::file_name(gplus1))),
            None => Self::shipped(gplus1),
        }
    }

    pub fn gplus1(&self) -> usize {
        self.gplus1
    }

    pub fn class(&self, curve: &Curve) -> Option<&HomologyClass> {
        self.classes.get(curve)
    }

    pub fn curves(&self) -> impl Iterator<Item = (&Curve, &HomologyClass)> {
        self.classes.iter()
    }

    pub fn with_class(mut self, curve: Curve, class: HomologyClass) -> Self {
        self.classes.insert(curve, class);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Degree3Report {
    pub g: usize,
    /// `φ(ĥ)³ = φ(t_{α_{g+1}})²`
    pub hhat_cubed_is_twist_squared: bool,
    /// `φ(h)³ = φ(t_{α_{g+1}})`
    pub h_cubed_is_twist: bool,
    /// `φ(ĥ) φ(t_{α_{g+1}}) = φ(t_{α_{g+1}}) φ(ĥ)`
    pub hhat_commutes_with_twist: bool,
}

impl Degree3Report {
    pub fn all_pass(&self) -> bool {
        self.hhat_cubed_is_twist_squared && self.h_cubed_is_twist && self.hhat_commutes_with_twist
    }
}

pub fn verify_degree3(g: usize, table: &CurveSystem) -> Result<Degree3Report, TwistWordError> {
    if g < 2 {
        return Err(TwistWordError::UnsupportedGenus(g));
    }
    if table.gplus1 != g + 1 {
        return Err(TwistWordError::TableGenusMismatch { table: table.gplus1, expected: g + 1 });
    }
    let form = standard_j(g + 1);
    let twist = evaluate_word(&TwistWord::from_curves(&[Curve::Alpha(g + 1)]), table, &form)?;
    let hh = evaluate_word(&hhat(g)?, table, &form)?;
    let h = evaluate_word(&degree3_root(g)?, table, &form)?;
    Ok(Degree3Report {
        g,
        hhat_cubed_is_twist_squared: hh.pow(3) == twist.pow(2),
        h_cubed_is_twist: h.pow(3) == twist,
        hhat_commutes_with_twist: hh.mul(&twist) == twist.mul(&hh),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationKind {
    /// `⟨a, b⟩ = 0`, so the twists commute.
    Commute,
    /// `⟨a, b⟩ = ±1`, so the twists satisfy the braid relation.
    Braid,
    /// Separating curve acts trivially on homology.
    NullHomologous,
    /// `⟨α_i, β_i⟩ = ±1`.
    DualPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub kind: RelationKind,
    pub curves: Vec<String>,
    pub holds: bool,
}

/// Commutation, braid, null-homology and duality checks over every pair of
/// curves in the table.
pub fn sanity_relations(table: &CurveSystem) -> Vec<RelationCheck> {
    let form = standard_j(table.gplus1);
    let mut out = Vec::new();
    let entries: Vec<(&Curve, &HomologyClass)> = table.curves().collect();
    let twist = |c: &HomologyClass| transvection_power(c, &form, 1).expect("table dimensions checked");

    for (curve, class) in &entries {
        if let Curve::Sep(_) = curve {
            out.push(RelationCheck {
                kind: RelationKind::NullHomologous,
                curves: vec![curve.to_string()],
                holds: class.is_zero() && twist(class).is_identity(),
            });
        }
    }
    for i in 1..=table.gplus1 {
        if let (Some(a), Some(b)) = (table.class(&Curve::Alpha(i)), table.class(&Curve::Beta(i))) {
            out.push(RelationCheck {
                kind: RelationKind::DualPair,
                curves: vec![Curve::Alpha(i).to_string(), Curve::Beta(i).to_string()],
                holds: pairing(a, b, &form).abs() == 1,
            });
        }
    }
    for (k, (ca, a)) in entries.iter().enumerate() {
        for (cb, b) in &entries[k + 1..] {
            let (ta, tb) = (twist(a), twist(b));
            let (kind, holds) = match pairing(a, b, &form) {
                0 => (RelationKind::Commute, ta.mul(&tb) == tb.mul(&ta)),
                1 | -1 => (RelationKind::Braid, ta.mul(&tb).mul(&ta) == tb.mul(&ta).mul(&tb)),
                _ => continue,
            };
            out.push(RelationCheck { kind, curves: vec![ca.to_string(), cb.to_string()], holds });
        }
    }
    out
}
