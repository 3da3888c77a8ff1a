//! Naive brute-force enumeration of data sets.
//!
//! Riemann–Hurwitz is checked in its fractional form
//! `2g/n = 2g′ + Σ (1 − 1/λ)` with unreduced `i128` fractions, and the two
//! congruences are evaluated literally. Cone points are drawn as multisets
//! of `(σ, λ)` types listed in a fixed order.

use std::collections::BTreeSet;

/// `(n, g′, (σ⁰, σ¹), [(σ, λ), …])` with cone points sorted by `(λ, σ)`.
pub type OracleSet = (i64, i64, (i64, i64), Vec<(i64, i64)>);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Unreduced fraction `num / den`, `den > 0`.
#[derive(Clone, Copy)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn sub(self, p: i128, q: i128) -> Frac {
        Frac { num: self.num * q - p * self.den, den: self.den * q }
    }
    fn is_negative(self) -> bool {
        self.num < 0
    }
    fn is_zero(self) -> bool {
        self.num == 0
    }
}

/// Cone point types for degree `n`, ordered by `(λ, σ)`.
fn cone_types(n: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for lambda in 2..=n {
        if n % lambda != 0 {
            continue;
        }
        for sigma in 1..lambda {
            if gcd(sigma, lambda) == 1 {
                out.push((sigma, lambda));
            }
        }
    }
    out.sort_by_key(|&(s, l)| (l, s));
    out
}

/// All multisets of cone types whose `Σ (1 − 1/λ)` equals `target` exactly.
fn cone_multisets(types: &[(i64, i64)], start: usize, target: Frac, chosen: &mut Vec<(i64, i64)>, out: &mut Vec<Vec<(i64, i64)>>) {
    if target.is_zero() {
        out.push(chosen.clone());
        return;
    }
    for k in start..types.len() {
        let (_, lambda) = types[k];
        let rest = target.sub((lambda - 1) as i128, lambda as i128);
        if rest.is_negative() {
            continue;
        }
        chosen.push(types[k]);
        cone_multisets(types, k, rest, chosen, out);
        chosen.pop();
    }
}

/// Literal form of the three conditions for a closed surface of genus `g+1`.
pub fn conditions(g: i64, n: i64, g_prime: i64, s0: i64, s1: i64, cones: &[(i64, i64)]) -> [bool; 3] {
    // 2g/n == 2g′ + Σ(1 − 1/λ), all as one fraction with denominator n·Πλ
    let mut rhs = Frac { num: 2 * g_prime as i128, den: 1 };
    for &(_, lambda) in cones {
        rhs = Frac { num: rhs.num * lambda as i128 + (lambda - 1) as i128 * rhs.den, den: rhs.den * lambda as i128 };
    }
    let rh = 2 * g as i128 * rhs.den == rhs.num * n as i128;
    let rot: i64 = cones.iter().map(|&(s, l)| s * (n / l)).sum::<i64>() + s0 + s1;
    let rotation = rot % n == 0;
    let boundary = (s0 + s1 + s0 * s1) % n == 0;
    [rh, rotation, boundary]
}

/// Every data set of degree `n` for genus `g` (closed genus `g + 1`).
/// With `ordered == false` the boundary pair is stored with `σ⁰ ≤ σ¹`.
pub fn classes(g: i64, n: i64, ordered: bool) -> BTreeSet<OracleSet> {
    let mut out = BTreeSet::new();
    let types = cone_types(n);
    let mut g_prime = 0;
    // 2g′ ≤ 2g/n
    while 2 * g_prime * n <= 2 * g {
        let target = Frac { num: (2 * g - 2 * g_prime * n) as i128, den: n as i128 };
        let mut multisets = Vec::new();
        cone_multisets(&types, 0, target, &mut Vec::new(), &mut multisets);
        for cones in multisets {
            for s0 in 1..n {
                for s1 in 1..n {
                    if gcd(s0, n) != 1 || gcd(s1, n) != 1 {
                        continue;
                    }
                    if conditions(g, n, g_prime, s0, s1, &cones) != [true; 3] {
                        continue;
                    }
                    let pair = if ordered { (s0, s1) } else { (s0.min(s1), s0.max(s1)) };
                    out.insert((n, g_prime, pair, cones.clone()));
                }
            }
        }
        g_prime += 1;
    }
    out
}

/// Degrees admitting at least one data set. A cone point adds at least
/// `n/2` to `2g` and a positive `g′` adds `2n`, so `n ≤ 4g` covers all.
pub fn spectrum(g: i64) -> Vec<i64> {
    (2..=4 * g).filter(|&n| !classes(g, n, true).is_empty()).collect()
}
