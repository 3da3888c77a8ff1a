//! Exhaustive generation of root classes, degree spectra and the obstruction
//! rules for surfaces with boundary and punctures.
//!
//! Search order: quotient genus `g'` descending from `⌊g/n⌋`, then cone-order
//! multisets by a bounded divisor partition of the Riemann–Hurwitz residual,
//! then cone residues, then boundary pairs. The `(g', λ-multiset)` prefixes are
//! independent work items; results are merged by sorting canonical forms.

use serde::Serialize;

use crate::arith::{divisors, units};
use crate::exec::Exec;
use crate::nielsen::{
    boundary_pairs, canonical_form, BoundaryConvention, BoundaryPair, DataSet, OrbitPoint,
};

/// Multisets `{λ_j}` (ascending) of divisors `λ > 1` of `n` with
/// `Σ (n/λ)(λ − 1) = 2g − 2g'n`.
pub fn orbit_multisets(g: i64, n: i64, g_prime: i64) -> Vec<Vec<i64>> {
    assert!(g >= 0 && n >= 2 && g_prime >= 0);
    let target = 2 * g - 2 * g_prime * n;
    if target < 0 {
        return Vec::new();
    }
    let orders: Vec<i64> = divisors(n).into_iter().filter(|&d| d > 1).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    partition(n, &orders, 0, target, &mut current, &mut out);
    out
}

fn partition(n: i64, orders: &[i64], start: usize, remaining: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (i, &lambda) in orders.iter().enumerate().skip(start) {
        let weight = n - n / lambda;
        if weight > remaining {
            // weights increase with λ
            break;
        }
        current.push(lambda);
        partition(n, orders, i, remaining - weight, current, out);
        current.pop();
    }
}

/// All cone-point lists for the given ascending cone orders: within each
/// block of equal `λ` the residues are nondecreasing, so each multiset shows
/// up once and already in canonical order.
fn residue_assignments(lambdas: &[i64]) -> Vec<Vec<OrbitPoint>> {
    fn go(lambdas: &[i64], at: usize, current: &mut Vec<OrbitPoint>, out: &mut Vec<Vec<OrbitPoint>>) {
        if at == lambdas.len() {
            out.push(current.clone());
            return;
        }
        let lambda = lambdas[at];
        let floor = match current.last() {
            Some(prev) if prev.lambda == lambda => prev.sigma,
            _ => 0,
        };
        for sigma in units(lambda).into_iter().filter(|&s| s >= floor) {
            current.push(OrbitPoint { sigma, lambda });
            go(lambdas, at + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(lambdas, 0, &mut Vec::with_capacity(lambdas.len()), &mut out);
    out
}

fn classes_for_prefix(n: i64, g_prime: i64, lambdas: &[i64], pairs: &[BoundaryPair]) -> Vec<DataSet> {
    let mut out = Vec::new();
    for orbits in residue_assignments(lambdas) {
        let cone: i64 = orbits.iter().map(|o| o.sigma * (n / o.lambda)).sum();
        for pair in pairs {
            let (s0, s1) = pair.sigmas();
            if (cone + s0 + s1).rem_euclid(n) == 0 {
                out.push(DataSet::from_parts(g_prime, *pair, orbits.clone()));
            }
        }
    }
    out
}

/// Ordered-convention classes; every other view is derived from this list.
fn ordered_classes(g: i64, n: i64, exec: &Exec) -> Vec<DataSet> {
    assert!(g >= 1, "genus must be at least 1");
    assert!(n >= 2, "degree must be at least 2");
    let pairs = boundary_pairs(n);
    if pairs.is_empty() {
        return Vec::new();
    }
    let prefixes: Vec<(i64, Vec<i64>)> = (0..=g / n)
        .rev()
        .flat_map(|gp| orbit_multisets(g, n, gp).into_iter().map(move |ls| (gp, ls)))
        .collect();
    let mut all: Vec<DataSet> = exec
        .map(prefixes, |(gp, lambdas)| classes_for_prefix(n, gp, &lambdas, &pairs))
        .into_iter()
        .flatten()
        .collect();
    all.sort();
    all.dedup();
    all
}

fn under_convention(ordered: &[DataSet], convention: BoundaryConvention) -> Vec<DataSet> {
    let mut out: Vec<DataSet> = ordered.iter().map(|d| canonical_form(d, convention)).collect();
    out.sort();
    out.dedup();
    out
}

/// Complete duplicate-free list of canonical data sets for genus `g + 1` and
/// degree `n`, sorted lexicographically.
pub fn enumerate_datasets(g: i64, n: i64, convention: BoundaryConvention) -> Vec<DataSet> {
    enumerate_datasets_with(g, n, convention, &Exec::default())
}

pub fn enumerate_datasets_with(g: i64, n: i64, convention: BoundaryConvention, exec: &Exec) -> Vec<DataSet> {
    under_convention(&ordered_classes(g, n, exec), convention)
}

pub fn exists_root(g: i64, n: i64) -> bool {
    !ordered_classes(g, n, &Exec::Sequential).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeClasses {
    pub n: i64,
    pub unordered: usize,
    pub ordered: usize,
}

impl DegreeClasses {
    pub fn count(&self, convention: BoundaryConvention) -> usize {
        match convention {
            BoundaryConvention::Unordered => self.unordered,
            BoundaryConvention::Ordered => self.ordered,
        }
    }
}

/// Degrees realized at genus `g + 1`, with class counts under both
/// boundary conventions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub g: i64,
    pub degrees: Vec<DegreeClasses>,
    /// Degrees in `(2g + 1, 4g + 4]` that unexpectedly admit a class.
    /// Always empty unless the enumeration is broken.
    pub guard_hits: Vec<i64>,
}

impl SpectrumReport {
    pub fn degree_list(&self) -> Vec<i64> {
        self.degrees.iter().map(|d| d.n).collect()
    }

    /// Every realized degree is odd and lies in `[3, 2g + 1]`, and the guard
    /// scan found nothing.
    pub fn within_bounds(&self) -> bool {
        self.guard_hits.is_empty()
            && self.degrees.iter().all(|d| d.n % 2 == 1 && (3..=2 * self.g + 1).contains(&d.n))
    }
}

pub fn degree_spectrum(g: i64) -> SpectrumReport {
    degree_spectrum_with(g, &Exec::default())
}

pub fn degree_spectrum_with(g: i64, exec: &Exec) -> SpectrumReport {
    assert!(g >= 1, "genus must be at least 1");
    let max = 2 * g + 1;
    let counts = exec.map((2..=4 * g + 4).collect(), |n| {
        let ordered = ordered_classes(g, n, &Exec::Sequential);
        let unordered = under_convention(&ordered, BoundaryConvention::Unordered).len();
        DegreeClasses { n, unordered, ordered: ordered.len() }
    });
    let (inside, outside): (Vec<_>, Vec<_>) = counts.into_iter().filter(|c| c.ordered > 0).partition(|c| c.n <= max);
    SpectrumReport { g, degrees: inside, guard_hits: outside.into_iter().map(|c| c.n).collect() }
}

/// Closed surface of genus `g + 1` with `b1` boundary curves that may be
/// permuted, `b2` boundary curves fixed pointwise and `p` punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MarkedSurfaceQuery {
    pub g: i64,
    pub b1: i64,
    pub b2: i64,
    pub p: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum MarkedVerdict {
    /// A pointwise-fixed boundary makes the complement's mapping class group
    /// torsion free, so there is no root of any degree.
    NoRoots,
    /// No `Z/(2g+1)` action with one fixed point fits, so no root of the
    /// maximal degree `2g + 1`.
    NoDegreeMax { residue: i64 },
    /// Genus 2 with `b1 + p ≡ 2 (mod 3)`: the only possible degree is 3 and it
    /// is obstructed.
    NoRootsAtAll,
    NoObstructionFound,
}

pub fn marked_obstructions(q: MarkedSurfaceQuery) -> Vec<MarkedVerdict> {
    assert!(q.g >= 1 && q.b1 >= 0 && q.b2 >= 0 && q.p >= 0, "invalid query {q:?}");
    if q.b2 > 0 {
        return vec![MarkedVerdict::NoRoots];
    }
    let mut out = Vec::new();
    let modulus = 2 * q.g + 1;
    let residue = (q.b1 + q.p) % modulus;
    if residue > 1 {
        out.push(MarkedVerdict::NoDegreeMax { residue });
    }
    if q.g == 1 && (q.b1 + q.p) % 3 == 2 {
        out.push(MarkedVerdict::NoRootsAtAll);
    }
    if out.is_empty() {
        out.push(MarkedVerdict::NoObstructionFound);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryConvention::*;

    fn ds(n: i64, gp: i64, b: (i64, i64), orbits: &[(i64, i64)]) -> DataSet {
        DataSet::new(n, gp, b, orbits).unwrap()
    }

    #[test]
    fn orbit_multiset_examples() {
        assert_eq!(orbit_multisets(1, 3, 0), vec![vec![3]]);
        assert!(orbit_multisets(3, 5, 0).is_empty());
        assert_eq!(orbit_multisets(2, 3, 0), vec![vec![3, 3]]);
        assert!(orbit_multisets(1, 3, 1).is_empty());
        assert_eq!(orbit_multisets(3, 3, 1), vec![Vec::<i64>::new()]);
        // 2g = 12, n = 6: weights 3 (λ=2), 4 (λ=3), 5 (λ=6)
        assert_eq!(orbit_multisets(6, 6, 0), vec![vec![2, 2, 2, 2], vec![2, 3, 6], vec![3, 3, 3]]);
    }

    #[test]
    fn residue_assignments_are_multisets() {
        let a = residue_assignments(&[3, 3]);
        let pairs: Vec<Vec<i64>> = a.iter().map(|v| v.iter().map(|o| o.sigma).collect()).collect();
        assert_eq!(pairs, vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(residue_assignments(&[]).len(), 1);
        assert_eq!(residue_assignments(&[3, 5]).len(), 2 * 4);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_datasets(1, 3, Unordered), vec![ds(3, 0, (1, 1), &[(1, 3)])]);
        assert_eq!(
            enumerate_datasets(2, 5, Unordered),
            vec![ds(5, 0, (1, 2), &[(2, 5)]), ds(5, 0, (3, 3), &[(4, 5)])]
        );
        assert_eq!(enumerate_datasets(2, 5, Ordered).len(), 3);
        assert!(enumerate_datasets(2, 4, Unordered).is_empty());
        assert!(enumerate_datasets(3, 5, Unordered).is_empty());
        assert_eq!(enumerate_datasets(2, 3, Unordered), vec![ds(3, 0, (1, 1), &[(2, 3), (2, 3)])]);
    }

    #[test]
    fn every_class_is_valid_and_canonical() {
        for g in 1..=6 {
            for n in 2..=2 * g + 1 {
                for d in enumerate_datasets(g, n, Unordered) {
                    assert!(crate::nielsen::validate_dataset(&d, g).is_valid(), "{d}");
                    assert_eq!(canonical_form(&d, Unordered), d);
                    assert!(crate::nielsen::genus_of(&d).unwrap() >= 1);
                }
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(degree_spectrum(1).degree_list(), vec![3]);
        assert_eq!(degree_spectrum(3).degree_list(), vec![3, 7]);
        assert_eq!(degree_spectrum(4).degree_list(), vec![3, 5, 9]);
        let r = degree_spectrum(1);
        assert_eq!(r.degrees[0], DegreeClasses { n: 3, unordered: 1, ordered: 1 });
        assert!(r.within_bounds());
    }

    #[test]
    fn exists_examples() {
        assert!(exists_root(1, 3));
        for g in 1..=8 {
            assert!(exists_root(g, 2 * g + 1));
            assert!(!exists_root(g, 2 * g + 3));
        }
        assert!(!exists_root(2, 2));
    }

    #[test]
    fn marked_examples() {
        let q = |g, b1, b2, p| MarkedSurfaceQuery { g, b1, b2, p };
        assert_eq!(marked_obstructions(q(2, 0, 1, 0)), vec![MarkedVerdict::NoRoots]);
        assert!(marked_obstructions(q(1, 0, 0, 2)).contains(&MarkedVerdict::NoRootsAtAll));
        assert_eq!(marked_obstructions(q(2, 2, 0, 0)), vec![MarkedVerdict::NoDegreeMax { residue: 2 }]);
        assert_eq!(marked_obstructions(q(2, 0, 0, 0)), vec![MarkedVerdict::NoObstructionFound]);
        assert_eq!(marked_obstructions(q(2, 6, 0, 0)), vec![MarkedVerdict::NoObstructionFound]);
    }

    #[test]
    fn parallel_matches_sequential() {
        for g in 1..=5 {
            for n in 2..=2 * g + 1 {
                let a = enumerate_datasets_with(g, n, Ordered, &Exec::Sequential);
                let b = enumerate_datasets_with(g, n, Ordered, &Exec::ParallelWith(4));
                assert_eq!(a, b);
            }
        }
    }
}
