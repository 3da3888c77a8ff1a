//! Exact integer symplectic linear algebra.
//!
//! Coordinates on `H₁(Σ_{g+1}; ℤ)` are `(x₁, …, x_{g+1}, y₁, …, y_{g+1})` with
//! the form `J = [[0, I], [−I, 0]]`. A twist about a curve of class `c` acts
//! by the transvection `x ↦ x + ⟨x, c⟩ c` with `⟨x, c⟩ = xᵀJc`, i.e. by the
//! matrix `I + c (Jc)ᵀ`. In genus 2 the class `e₃` gives
//!
//! ```text
//! 1 0 0 0
//! 0 1 0 0
//! 1 0 1 0
//! 0 0 0 1
//! ```
//!
//! which fixes both the basis layout and the sign of the twist.

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Rational;
use crate::exec::{Cancel, Exec};
use crate::twistword::{CurveSystem, TwistWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not square or is empty")]
    NotSquare,
    #[error("dimension {0} is not a positive even number")]
    OddDimension(usize),
    #[error("transvection about the zero class")]
    ZeroClass,
    #[error("curve {0} is not in the curve table")]
    UnknownCurve(String),
}

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix { dim, data: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, SymplecticError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(SymplecticError::NotSquare);
        }
        Ok(IntMatrix { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Product with overflow checking; panics on dimension mismatch.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let term = a.checked_mul(rhs.get(k, j)).expect("matrix entry overflow");
                    let slot = &mut out.data[i * d + j];
                    *slot = slot.checked_add(term).expect("matrix entry overflow");
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { dim: self.dim, data: self.data.iter().map(|v| -v).collect() }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = SymplecticError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        IntMatrix::from_rows(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
    }
}

/// One row per line, entries separated by single spaces.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.data.chunks(self.dim).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.rows())
    }
}

/// The standard symplectic form of dimension `2(g+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm(IntMatrix);

impl SymplecticForm {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn genus(&self) -> usize {
        self.0.dim / 2
    }
}

pub fn standard_j(gplus1: usize) -> SymplecticForm {
    assert!(gplus1 >= 1, "genus must be positive");
    let d = 2 * gplus1;
    let mut j = IntMatrix::zeros(d);
    for i in 0..gplus1 {
        j.set(i, gplus1 + i, 1);
        j.set(gplus1 + i, i, -1);
    }
    SymplecticForm(j)
}

/// Form for a given even dimension.
pub fn form_for_dim(dim: usize) -> Result<SymplecticForm, SymplecticError> {
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(SymplecticError::OddDimension(dim));
    }
    Ok(standard_j(dim / 2))
}

/// An integral homology class in the basis above.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyClass(pub Vec<i64>);

impl HomologyClass {
    pub fn zero(dim: usize) -> Self {
        HomologyClass(vec![0; dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        HomologyClass(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &HomologyClass) -> HomologyClass {
        HomologyClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Algebraic intersection `⟨x, c⟩ = xᵀ J c`.
pub fn pairing(x: &HomologyClass, c: &HomologyClass, form: &SymplecticForm) -> i64 {
    let jc = form.0.apply(&c.0);
    x.0.iter().zip(jc).map(|(a, b)| a * b).sum()
}

pub fn is_symplectic(a: &IntMatrix, form: &SymplecticForm) -> Result<bool, SymplecticError> {
    if a.dim != form.dim() {
        return Err(SymplecticError::DimensionMismatch(a.dim, form.dim()));
    }
    Ok(a.mul(&form.0).mul(&a.transpose()) == form.0)
}

/// `I + e · c (Jc)ᵀ`, the `e`-th power of the twist about `c`. The zero class
/// gives the identity.
pub fn transvection_power(c: &HomologyClass, form: &SymplecticForm, e: i64) -> Result<IntMatrix, SymplecticError> {
    if c.dim() != form.dim() {
        return Err(SymplecticError::DimensionMismatch(c.dim(), form.dim()));
    }
    let d = c.dim();
    let jc = form.0.apply(&c.0);
    let mut m = IntMatrix::identity(d);
    for (i, &ci) in c.0.iter().enumerate() {
        for (j, &jcj) in jc.iter().enumerate() {
            let v = m.get(i, j) + e * ci * jcj;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

pub fn transvection(c: &HomologyClass, form: &SymplecticForm) -> Result<IntMatrix, SymplecticError> {
    if c.is_zero() {
        return Err(SymplecticError::ZeroClass);
    }
    transvection_power(c, form, 1)
}

/// Image of a word in `Sp(2(g+1), ℤ)`: the ordered product of the letter
/// matrices, so the rightmost letter acts first. Null-homologous curves act
/// trivially.
pub fn evaluate_word(word: &TwistWord, table: &CurveSystem, form: &SymplecticForm) -> Result<IntMatrix, SymplecticError> {
    let mut acc = IntMatrix::identity(form.dim());
    for letter in word.letters() {
        let class = table
            .class(&letter.curve)
            .ok_or_else(|| SymplecticError::UnknownCurve(letter.curve.to_string()))?;
        acc = acc.mul(&transvection_power(class, form, letter.exponent as i64)?);
    }
    Ok(acc)
}

/// Linear relation `a_target = (Σ coef · a_free) / denom` among the entries of
/// a matrix commuting with `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearRelation {
    pub target: (usize, usize),
    pub denom: i64,
    pub terms: Vec<(i64, (usize, usize))>,
}

fn entry_name(dim: usize, (i, j): (usize, usize)) -> String {
    if dim <= 9 {
        format!("a{}{}", i + 1, j + 1)
    } else {
        format!("a[{},{}]", i + 1, j + 1)
    }
}

impl LinearRelation {
    pub fn render(&self, dim: usize) -> String {
        let mut rhs = String::new();
        for (k, &(c, pos)) in self.terms.iter().enumerate() {
            let name = entry_name(dim, pos);
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let sep = if k > 0 { " " } else { "" };
            let space = if k > 0 { " " } else { "" };
            let mag = c.abs();
            let coef = if mag == 1 { String::new() } else { format!("{mag}*") };
            rhs.push_str(&format!("{sep}{sign}{space}{coef}{name}"));
        }
        if rhs.is_empty() {
            rhs.push('0');
        }
        let lhs = entry_name(dim, self.target);
        if self.denom == 1 {
            format!("{lhs} = {rhs}")
        } else {
            format!("{lhs} = ({rhs})/{}", self.denom)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Solution of the linear system `AS = SA` in the entries of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerConstraints {
    pub dim: usize,
    pub relations: Vec<LinearRelation>,
    pub free: Vec<(usize, usize)>,
}

impl CentralizerConstraints {
    pub fn rendered(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.render(self.dim)).collect()
    }

    /// Entries forced to vanish.
    pub fn forced_zeros(&self) -> Vec<(usize, usize)> {
        self.relations.iter().filter(|r| r.is_zero()).map(|r| r.target).collect()
    }
}

/// Solves `AS − SA = 0` by exact row reduction.
///
/// Unknowns are eliminated from the highest row-major index down, so each
/// pivot entry is expressed through entries that come earlier in the matrix
/// (`a33 = a11` rather than `a11 = a33`).
pub fn centralizer_constraints(s: &IntMatrix) -> CentralizerConstraints {
    let d = s.dim;
    let nvars = d * d;
    // column c of the system holds variable nvars - 1 - c
    let var_of_col = |c: usize| nvars - 1 - c;
    let col_of_var = |v: usize| nvars - 1 - v;

    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut row = vec![Rational::zero(); nvars];
            for k in 0..d {
                // (AS)_ij = Σ_k a_ik s_kj ; (SA)_ij = Σ_k s_ik a_kj
                let c1 = col_of_var(i * d + k);
                row[c1] = row[c1] + Rational::from_integer(s.get(k, j));
                let c2 = col_of_var(k * d + j);
                row[c2] = row[c2] - Rational::from_integer(s.get(i, k));
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }

    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c];
        let inv = Rational::new(lead.denom(), lead.numer()).unwrap();
        for x in rows[r].iter_mut() {
            *x = *x * inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let factor = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = *x - p * factor;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    let pos = |v: usize| (v / d, v % d);
    let mut relations = Vec::new();
    for (row, &pc) in rows.iter().zip(&pivots) {
        // a_pivot + Σ row[c] a_c = 0 over free columns c
        let mut terms: Vec<(Rational, usize)> = (0..nvars)
            .filter(|&c| c != pc && !pivots.contains(&c) && !row[c].is_zero())
            .map(|c| (-row[c], var_of_col(c)))
            .collect();
        terms.sort_by_key(|&(_, v)| v);
        let denom = terms.iter().fold(1i64, |acc, (q, _)| num_integer::lcm(acc, q.denom()));
        relations.push(LinearRelation {
            target: pos(var_of_col(pc)),
            denom,
            terms: terms.iter().map(|(q, v)| ((*q * denom).numer(), pos(*v))).collect(),
        });
    }
    relations.sort_by_key(|r| r.target);
    let mut free: Vec<(usize, usize)> = (0..nvars)
        .filter(|&v| !pivots.contains(&col_of_var(v)))
        .map(pos)
        .collect();
    free.sort();
    CentralizerConstraints { dim: d, relations, free }
}

/// Outcome of a bounded square-root search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SqrtSearch {
    pub bound: i64,
    pub constraints: CentralizerConstraints,
    pub status: SearchStatus,
    pub root: Option<IntMatrix>,
    /// Search nodes visited. Only counted under a budget.
    pub nodes: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    /// The whole bounded grid was scanned without a hit.
    Absent,
    /// The node budget ran out first; nothing is claimed.
    BudgetExhausted,
}

/// Shared node counter for a budgeted search.
struct Budget {
    limit: u64,
    used: AtomicU64,
    hit: AtomicBool,
}

impl Budget {
    /// Counts one node; false once the limit is reached.
    fn tick(&self) -> bool {
        if self.used.fetch_add(1, AtomicOrdering::Relaxed) >= self.limit {
            self.hit.store(true, AtomicOrdering::Relaxed);
            return false;
        }
        true
    }
}

/// Scan order for a single entry: `0, 1, −1, 2, −2, …`.
fn value_order(bound: i64) -> Vec<i64> {
    let mut v = vec![0];
    for k in 1..=bound {
        v.push(k);
        v.push(-k);
    }
    v
}

/// A quadratic check that becomes decidable once certain entries are known.
#[derive(Debug, Clone, Copy)]
enum Check {
    /// `(A²)_ij = S_ij`
    Square(usize, usize),
    /// `(A J Aᵀ)_ij = J_ij`
    Form(usize, usize),
}

/// Pivot entry, common denominator, and `(coefficient, free entry)` terms.
type PivotRelation = (usize, i64, Vec<(i64, usize)>);

struct SearchPlan {
    dim: usize,
    bound: i64,
    /// Free entries in assignment order.
    order: Vec<usize>,
    /// Pivot relations to evaluate after assigning `order[depth]`:
    /// (target entry, denom, terms over entry indices).
    derived_at: Vec<Vec<PivotRelation>>,
    checks_at: Vec<Vec<Check>>,
    /// Checks not yet decidable after `order[depth]` is assigned, but with at
    /// least one known entry; tested against interval bounds.
    pending_at: Vec<Vec<Check>>,
    /// Depth after which each entry is known; `None` for never.
    ready: Vec<Option<usize>>,
}

impl SearchPlan {
    fn new(s: &IntMatrix, constraints: &CentralizerConstraints, bound: i64) -> Self {
        let d = s.dim;
        let idx = |(i, j): (usize, usize)| i * d + j;
        let free: Vec<usize> = constraints.free.iter().map(|&p| idx(p)).collect();
        let relations: Vec<PivotRelation> = constraints
            .relations
            .iter()
            .map(|r| (idx(r.target), r.denom, r.terms.iter().map(|&(c, p)| (c, idx(p))).collect()))
            .collect();

        let mut checks: Vec<(Check, Vec<usize>)> = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut deps: Vec<usize> = (0..d).flat_map(|k| [i * d + k, k * d + j]).collect();
                deps.sort();
                deps.dedup();
                checks.push((Check::Square(i, j), deps));
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                let deps: Vec<usize> = (0..d).flat_map(|k| [i * d + k, j * d + k]).collect();
                checks.push((Check::Form(i, j), deps));
            }
        }

        // an entry is known once every free variable it depends on is assigned
        let free_deps = |e: usize| -> Vec<usize> {
            if free.contains(&e) {
                vec![e]
            } else {
                let rel = relations.iter().find(|r| r.0 == e).expect("entry is free or derived");
                rel.2.iter().map(|&(_, v)| v).collect()
            }
        };
        let check_free: Vec<Vec<usize>> = checks
            .iter()
            .map(|(_, deps)| {
                let mut f: Vec<usize> = deps.iter().flat_map(|&e| free_deps(e)).collect();
                f.sort();
                f.dedup();
                f
            })
            .collect();

        // greedy order: next variable completes the most checks, then the
        // one that appears in the most pending checks, then lowest index
        let mut order: Vec<usize> = Vec::new();
        let mut assigned = vec![false; d * d];
        let mut done = vec![false; checks.len()];
        let mut checks_at = Vec::new();
        while order.len() < free.len() {
            let best = free
                .iter()
                .copied()
                .filter(|&v| !assigned[v])
                .max_by_key(|&v| {
                    let completes = check_free
                        .iter()
                        .enumerate()
                        .filter(|(c, fv)| !done[*c] && fv.iter().all(|&u| u == v || assigned[u]))
                        .count();
                    let touches = check_free.iter().enumerate().filter(|(c, fv)| !done[*c] && fv.contains(&v)).count();
                    (completes, touches, std::cmp::Reverse(v))
                })
                .unwrap();
            assigned[best] = true;
            order.push(best);
            let mut now = Vec::new();
            for (c, fv) in check_free.iter().enumerate() {
                if !done[c] && fv.iter().all(|&u| assigned[u]) {
                    done[c] = true;
                    now.push(checks[c].0);
                }
            }
            checks_at.push(now);
        }
        if free.is_empty() {
            checks_at.push(checks.iter().map(|c| c.0).collect());
        }

        let mut derived_at = vec![Vec::new(); checks_at.len()];
        for rel in &relations {
            let depth = rel
                .2
                .iter()
                .map(|&(_, v)| order.iter().position(|&o| o == v).unwrap())
                .max()
                .unwrap_or(0);
            derived_at[depth].push(rel.clone());
        }
        let position = |v: usize| order.iter().position(|&o| o == v).unwrap();
        let ready: Vec<Option<usize>> = (0..d * d)
            .map(|e| free_deps(e).into_iter().map(position).max().or(Some(0)))
            .collect();
        let mut pending_at = vec![Vec::new(); checks_at.len()];
        for (depth, pending) in pending_at.iter_mut().enumerate() {
            for (c, (check, deps)) in checks.iter().enumerate() {
                let complete = check_free[c].iter().all(|&u| position(u) <= depth);
                let touched = deps.iter().any(|&e| ready[e].is_some_and(|r| r <= depth));
                if !complete && touched {
                    pending.push(*check);
                }
            }
        }
        SearchPlan { dim: d, bound, order, derived_at, checks_at, pending_at, ready }
    }

    /// Whether `check` can still hold given the entries known at `depth`,
    /// with unknown entries ranging over `[-bound, bound]`.
    fn reachable(&self, check: Check, depth: usize, a: &[i64], target: i64) -> bool {
        let d = self.dim;
        let b = self.bound;
        let known = |e: usize| self.ready[e].is_some_and(|r| r <= depth);
        // interval of the product of entries e and f
        let product = |e: usize, f: usize| -> (i64, i64) {
            match (known(e), known(f)) {
                (true, true) => (a[e] * a[f], a[e] * a[f]),
                (true, false) => (-a[e].abs() * b, a[e].abs() * b),
                (false, true) => (-a[f].abs() * b, a[f].abs() * b),
                (false, false) if e == f => (0, b * b),
                (false, false) => (-b * b, b * b),
            }
        };
        let (mut lo, mut hi) = (0i64, 0i64);
        match check {
            Check::Square(i, j) => {
                for k in 0..d {
                    let (l, h) = product(i * d + k, k * d + j);
                    lo += l;
                    hi += h;
                }
            }
            Check::Form(i, j) => {
                let h = d / 2;
                for k in 0..h {
                    let (l1, h1) = product(i * d + k, j * d + h + k);
                    let (l2, h2) = product(i * d + h + k, j * d + k);
                    lo += l1 - h2;
                    hi += h1 - l2;
                }
            }
        }
        (lo..=hi).contains(&target)
    }

    fn derive(&self, depth: usize, a: &mut [i64]) -> bool {
        for (target, denom, terms) in &self.derived_at[depth] {
            let num: i64 = terms.iter().map(|&(c, v)| c * a[v]).sum();
            if num % denom != 0 {
                return false;
            }
            let val = num / denom;
            if val.abs() > self.bound {
                return false;
            }
            a[*target] = val;
        }
        true
    }

    fn checks_pass(&self, depth: usize, a: &[i64], s: &IntMatrix, form: &IntMatrix) -> bool {
        let d = self.dim;
        let target = |c: Check| match c {
            Check::Square(i, j) => s.get(i, j),
            Check::Form(i, j) => form.get(i, j),
        };
        if !self.pending_at[depth].iter().all(|&c| self.reachable(c, depth, a, target(c))) {
            return false;
        }
        self.checks_at[depth].iter().all(|check| match *check {
            Check::Square(i, j) => (0..d).map(|k| a[i * d + k] * a[k * d + j]).sum::<i64>() == s.get(i, j),
            Check::Form(i, j) => {
                // (A J Aᵀ)_ij with J = [[0, I], [-I, 0]]
                let h = d / 2;
                let v: i64 = (0..h).map(|k| a[i * d + k] * a[j * d + h + k] - a[i * d + h + k] * a[j * d + k]).sum();
                v == form.get(i, j)
            }
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        &self,
        depth: usize,
        a: &mut [i64],
        values: &[i64],
        s: &IntMatrix,
        form: &IntMatrix,
        cancel: &Cancel,
        budget: Option<&Budget>,
    ) -> bool {
        if depth == self.order.len() {
            return true;
        }
        if cancel.is_cancelled() || budget.is_some_and(|b| !b.tick()) {
            return false;
        }
        let var = self.order[depth];
        for &v in values {
            a[var] = v;
            if self.derive(depth, a)
                && self.checks_pass(depth, a, s, form)
                && self.search(depth + 1, a, values, s, form, cancel, budget)
            {
                return true;
            }
        }
        false
    }
}

/// Searches for `A ∈ Sp(2(g+1), ℤ)` with `A² = S` and every entry bounded by
/// `bound` in absolute value.
///
/// `A` must commute with `S`, so the free parameters are those left by
/// [`centralizer_constraints`]. The remaining grid is scanned depth-first in
/// a fixed order, pruning as soon as an entry of `A²` or `AJAᵀ` is decided.
/// The top of the grid is split into disjoint ranges; the reported root is the
/// first in scan order, whatever the execution strategy.
pub fn centralizer_sqrt_search(s: &IntMatrix, form: &SymplecticForm, bound: i64, exec: &Exec) -> SqrtSearch {
    centralizer_sqrt_search_budgeted(s, form, bound, None, exec)
}

/// [`centralizer_sqrt_search`] that gives up after visiting `max_nodes`
/// search nodes, reporting [`SearchStatus::BudgetExhausted`] unless a root
/// was already found. Without a budget the scan always runs to completion.
pub fn centralizer_sqrt_search_budgeted(
    s: &IntMatrix,
    form: &SymplecticForm,
    bound: i64,
    max_nodes: Option<u64>,
    exec: &Exec,
) -> SqrtSearch {
    assert!(bound >= 1, "search bound must be positive");
    assert_eq!(s.dim, form.dim(), "matrix and form dimensions differ");
    let constraints = centralizer_constraints(s);
    let plan = SearchPlan::new(s, &constraints, bound);
    let values = value_order(bound);
    let d = s.dim;

    let split = plan.order.len().min(2);
    let mut prefixes: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..split {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| values.iter().map(move |&v| [p.clone(), vec![v]].concat()))
            .collect();
    }

    let budget = max_nodes.map(|limit| Budget { limit, used: AtomicU64::new(0), hit: AtomicBool::new(false) });
    let root = exec.find_first(prefixes, |prefix, cancel| {
        let mut a = vec![0i64; d * d];
        for (depth, &v) in prefix.iter().enumerate() {
            a[plan.order[depth]] = v;
            if !(plan.derive(depth, &mut a) && plan.checks_pass(depth, &a, s, form.matrix())) {
                return None;
            }
        }
        if plan.order.is_empty() && !(plan.derive(0, &mut a) && plan.checks_pass(0, &a, s, form.matrix())) {
            return None;
        }
        plan.search(prefix.len(), &mut a, &values, s, form.matrix(), cancel, budget.as_ref())
            .then_some(IntMatrix { dim: d, data: a })
    });
    let status = match (&root, &budget) {
        (Some(_), _) => SearchStatus::Found,
        (None, Some(b)) if b.hit.load(AtomicOrdering::Relaxed) => SearchStatus::BudgetExhausted,
        (None, _) => SearchStatus::Absent,
    };
    let nodes = budget.map(|b| b.used.load(AtomicOrdering::Relaxed).min(b.limit));

    if let Some(r) = &root {
        debug_assert_eq!(&r.mul(r), s);
        debug_assert!(is_symplectic(r, form).unwrap());
    }
    SqrtSearch { bound, constraints, status, root, nodes }
}

/// Twist about `α₁` in genus `gplus1`: the transvection of `y₁`.
pub fn alpha1_twist(gplus1: usize) -> IntMatrix {
    let form = standard_j(gplus1);
    transvection(&HomologyClass::basis(2 * gplus1, gplus1), &form).expect("nonzero class")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EvenDegreeVerdict {
    /// An even-degree root `h` would make `h^(n/2)` a square root of the
    /// twist's image, and that image has no square root in `Sp(2(g+1), ℤ)`.
    ObstructedAtHomology,
    NoHomologyObstruction,
}

pub fn even_degree_verdict(n: i64) -> EvenDegreeVerdict {
    assert!(n >= 2, "degree must be at least 2");
    if n % 2 == 0 {
        EvenDegreeVerdict::ObstructedAtHomology
    } else {
        EvenDegreeVerdict::NoHomologyObstruction
    }
}
