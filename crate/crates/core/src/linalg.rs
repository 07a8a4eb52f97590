//! Exact sparse linear algebra over the rationals.
//!
//! Column indices are opaque to this module; callers map their own bases
//! (monomials, module basis vectors) onto `usize` indices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::Rational;

/// Sparse vector: column index to nonzero coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVector {
    entries: BTreeMap<usize, Rational>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        let mut v = Self::new();
        for (i, x) in values.iter().enumerate() {
            v.add_to(i, x);
        }
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut v = Self::new();
        for (i, x) in pairs {
            v.add_to(i, &x);
        }
        v
    }

    pub fn get(&self, col: usize) -> Rational {
        self.entries.get(&col).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// Adds `x` to the entry at `col`, dropping it if it cancels.
    pub fn add_to(&mut self, col: usize, x: &Rational) {
        if x.is_zero() {
            return;
        }
        let slot = self.entries.entry(col).or_insert_with(Rational::zero);
        *slot += x;
        if slot.is_zero() {
            self.entries.remove(&col);
        }
    }

    /// `self += factor * other`.
    pub fn axpy(&mut self, factor: &Rational, other: &SparseVector) {
        if factor.is_zero() {
            return;
        }
        for (c, x) in &other.entries {
            self.add_to(*c, &(factor * x));
        }
    }

    pub fn scale(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for x in self.entries.values_mut() {
            *x *= factor;
        }
    }

    pub fn dot(&self, other: &SparseVector) -> Rational {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Rational::zero();
        for (c, x) in &small.entries {
            if let Some(y) = large.entries.get(c) {
                acc += x * y;
            }
        }
        acc
    }
}

/// Row-major sparse matrix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: Vec<SparseVector>,
    pub ncols: usize,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { rows: Vec::new(), ncols }
    }

    pub fn from_rows(rows: Vec<SparseVector>, ncols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_col().map_or(true, |c| c < ncols)));
        SparseMatrix { rows, ncols }
    }

    pub fn from_dense(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| SparseVector::from_pairs(r.iter().enumerate().map(|(i, x)| (i, crate::rational::int(*x)))))
            .collect();
        SparseMatrix { rows, ncols }
    }

    pub fn push_row(&mut self, row: SparseVector) {
        debug_assert!(row.max_col().map_or(true, |c| c < self.ncols));
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// `m · x`.
    pub fn mul_vec(&self, x: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (i, row) in self.rows.iter().enumerate() {
            let d = row.dot(x);
            out.add_to(i, &d);
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVector> = (0..self.ncols).map(|_| SparseVector::new()).collect();
        for (i, row) in self.rows.iter().enumerate() {
            for (c, x) in row.iter() {
                cols[c].add_to(i, x);
            }
        }
        SparseMatrix { rows: cols, ncols: self.rows.len() }
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row has coefficient 1 at its pivot column and 0 at every
/// other pivot column. The pivot of a new row is the candidate column that
/// occurs in the fewest stored rows, which keeps back-elimination fill low.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVector>,
    occurrences: BTreeMap<usize, BTreeSet<usize>>,
    pivot_limit: Option<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Columns `>= limit` never become pivots (used for augmented systems).
    pub fn with_pivot_limit(limit: usize) -> Self {
        Echelon { pivot_limit: Some(limit), ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseVector> {
        self.pivots.get(&col)
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut r = v.clone();
        let hits: Vec<usize> = v.iter().map(|(c, _)| c).filter(|c| self.pivots.contains_key(c)).collect();
        for c in hits {
            let f = r.get(c);
            if !f.is_zero() {
                r.axpy(&-f, &self.pivots[&c]);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    fn track(&mut self, pivot: usize, row: &SparseVector, present: bool) {
        for (c, _) in row.iter() {
            if present {
                self.occurrences.entry(c).or_default().insert(pivot);
            } else if let Some(set) = self.occurrences.get_mut(&c) {
                set.remove(&pivot);
                if set.is_empty() {
                    self.occurrences.remove(&c);
                }
            }
        }
    }

    /// Inserts a row. Returns `false` when it was already in the span, and
    /// `Err(())` when only columns beyond the pivot limit survive reduction.
    pub fn insert(&mut self, v: &SparseVector) -> Result<bool, ()> {
        let mut r = self.reduce(v);
        if r.is_zero() {
            return Ok(false);
        }
        let limit = self.pivot_limit.unwrap_or(usize::MAX);
        let pivot = r
            .iter()
            .map(|(c, _)| c)
            .filter(|c| *c < limit)
            .min_by_key(|c| (self.occurrences.get(c).map_or(0, |s| s.len()), *c));
        let Some(pivot) = pivot else {
            return Err(());
        };
        let inv = r.get(pivot).recip();
        r.scale(&inv);
        let users: Vec<usize> = self.occurrences.get(&pivot).map(|s| s.iter().copied().collect()).unwrap_or_default();
        for pc in users {
            let mut row = self.pivots.remove(&pc).expect("occurrence index out of sync");
            self.track(pc, &row, false);
            let f = row.get(pivot);
            row.axpy(&-f, &r);
            self.track(pc, &row, true);
            self.pivots.insert(pc, row);
        }
        self.track(pivot, &r, true);
        self.pivots.insert(pivot, r);
        Ok(true)
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut e = Echelon::new();
    for row in &m.rows {
        let _ = e.insert(row);
    }
    e.rank()
}

/// Basis of the right null space `{x : m·x = 0}`.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVector> {
    let mut e = Echelon::new();
    for row in &m.rows {
        let _ = e.insert(row);
    }
    let pivots: BTreeSet<usize> = e.pivot_columns().collect();
    let mut out = Vec::new();
    for free in (0..m.ncols).filter(|c| !pivots.contains(c)) {
        let mut x = SparseVector::new();
        x.add_to(free, &crate::rational::one());
        for (pc, row) in &e.pivots {
            let f = row.get(free);
            if !f.is_zero() {
                x.add_to(*pc, &-f);
            }
        }
        out.push(x);
    }
    out
}

/// Some exact solution of `m·x = b`, or `None` when the system is inconsistent.
pub fn solve_linear(m: &SparseMatrix, b: &SparseVector) -> Option<SparseVector> {
    let aug = m.ncols;
    let mut e = Echelon::with_pivot_limit(aug);
    for (i, row) in m.rows.iter().enumerate() {
        let mut r = row.clone();
        r.add_to(aug, &b.get(i));
        if e.insert(&r).is_err() {
            return None;
        }
    }
    if b.iter().any(|(i, _)| i >= m.rows.len()) {
        return None;
    }
    let mut x = SparseVector::new();
    for (pc, row) in &e.pivots {
        x.add_to(*pc, &row.get(aug));
    }
    Some(x)
}

/// Which unknowns are pinned to a single value by `m·x = b`.
///
/// Returns `None` for an inconsistent system; otherwise the determined
/// columns with their values. A column is determined when its pivot row has
/// no free-column entries.
pub fn determined_unknowns(m: &SparseMatrix, b: &SparseVector) -> Option<BTreeMap<usize, Rational>> {
    let aug = m.ncols;
    let mut e = Echelon::with_pivot_limit(aug);
    for (i, row) in m.rows.iter().enumerate() {
        let mut r = row.clone();
        r.add_to(aug, &b.get(i));
        if e.insert(&r).is_err() {
            return None;
        }
    }
    let mut out = BTreeMap::new();
    for (pc, row) in &e.pivots {
        if row.iter().all(|(c, _)| c == *pc || c == aug) {
            out.insert(*pc, row.get(aug));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::from_dense(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(&SparseMatrix::from_dense(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&SparseMatrix::from_dense(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::from_dense(&[&[1, 0], &[0, 1]])).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::from_dense(&[&[0, 0]])).len(), 2);
        let k = kernel_basis(&SparseMatrix::from_dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(k[0].get(0) * int(-1), k[0].get(1) * int(2));
    }

    #[test]
    fn solve_examples() {
        let id = SparseMatrix::from_dense(&[&[1, 0], &[0, 1]]);
        let b = SparseVector::from_dense(&[int(3), int(5)]);
        assert_eq!(solve_linear(&id, &b).unwrap(), b);

        let m = SparseMatrix::from_dense(&[&[1, 1]]);
        let b = SparseVector::from_dense(&[int(2)]);
        let x = solve_linear(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);

        let m = SparseMatrix::from_dense(&[&[1], &[1]]);
        let b = SparseVector::from_dense(&[int(1), int(2)]);
        assert!(solve_linear(&m, &b).is_none());
    }

    #[test]
    fn determined_subset() {
        // x0 = 1, x1 + x2 = 3: only x0 is pinned.
        let m = SparseMatrix::from_dense(&[&[1, 0, 0], &[0, 1, 1]]);
        let b = SparseVector::from_dense(&[int(1), int(3)]);
        let d = determined_unknowns(&m, &b).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[&0], int(1));
    }
}
