//! Sparse exact Gauss-Jordan elimination.
//!
//! Vectors are sorted `(index, value)` lists without zero entries. Every
//! routine visits rows and columns in a fixed order so results (including the
//! choice of kernel basis and particular solutions) are reproducible.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type SparseVec<S> = Vec<(usize, S)>;

/// y + a·x.
pub fn axpy<S: Scalar>(y: &[(usize, S)], a: &S, x: &[(usize, S)]) -> SparseVec<S> {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j == x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i == y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            let v = a.clone() * x[j].1.clone();
            if !v.is_negligible() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = y[i].1.clone() + a.clone() * x[j].1.clone();
            if !v.is_negligible() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts, merges duplicates and drops zeros.
pub fn normalize<S: Scalar>(entries: impl IntoIterator<Item = (usize, S)>) -> SparseVec<S> {
    let mut map: BTreeMap<usize, S> = BTreeMap::new();
    for (i, v) in entries {
        let slot = map.entry(i).or_insert_with(S::zero);
        *slot = slot.clone() + v;
    }
    map.into_iter().filter(|(_, v)| !v.is_negligible()).collect()
}

fn scale_vec<S: Scalar>(x: &mut SparseVec<S>, a: &S) {
    for (_, v) in x.iter_mut() {
        *v = v.clone() * a.clone();
    }
}

fn entry<S: Scalar>(x: &[(usize, S)], col: usize) -> Option<&S> {
    x.binary_search_by_key(&col, |(c, _)| *c).ok().map(|p| &x[p].1)
}

/// Row echelon form built one row at a time. Stored rows have leading entry 1.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec<S>>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Eliminates leading entries until the leading column is not a pivot.
    pub fn reduce(&self, mut row: SparseVec<S>) -> SparseVec<S> {
        while let Some((lead, v)) = row.first().cloned() {
            match self.rows.get(&lead) {
                Some(p) => row = axpy(&row, &-v, p),
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns its pivot column if it was independent.
    pub fn push(&mut self, row: SparseVec<S>) -> Option<usize> {
        let mut row = self.reduce(row);
        let (lead, v) = row.first().cloned()?;
        scale_vec(&mut row, &(S::one() / v));
        self.rows.insert(lead, row);
        Some(lead)
    }

    /// Whether the row lies in the span of the rows pushed so far.
    pub fn contains(&self, row: SparseVec<S>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Back-substitution to reduced row echelon form.
    pub fn into_rref(self) -> Rref<S> {
        let mut done: BTreeMap<usize, SparseVec<S>> = BTreeMap::new();
        for (pivot, row) in self.rows.into_iter().rev() {
            let mut row = row;
            // Clear every later pivot column; those rows are already reduced.
            let mut k = 1;
            while k < row.len() {
                let (col, v) = row[k].clone();
                if let Some(p) = done.get(&col) {
                    row = axpy(&row, &-v, p);
                } else {
                    k += 1;
                }
            }
            done.insert(pivot, row);
        }
        Rref { ncols: self.ncols, rows: done }
    }
}

/// Reduced row echelon form keyed by pivot column.
#[derive(Clone, Debug)]
pub struct Rref<S> {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec<S>>,
}

impl<S: Scalar> Rref<S> {
    pub fn from_rows(rows: impl IntoIterator<Item = SparseVec<S>>, ncols: usize) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.push(r);
        }
        e.into_rref()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec<S>)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    /// Kernel basis, one vector per free column, in increasing column order.
    pub fn kernel(&self) -> Vec<SparseVec<S>> {
        let mut by_free: BTreeMap<usize, Vec<(usize, S)>> = BTreeMap::new();
        for (&pivot, row) in &self.rows {
            for (col, v) in row.iter().skip(1) {
                by_free.entry(*col).or_default().push((pivot, -v.clone()));
            }
        }
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|free| {
                let mut v = by_free.remove(&free).unwrap_or_default();
                v.push((free, S::one()));
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect()
    }
}

/// Rows of the matrix whose columns are given.
pub fn transpose<S: Scalar>(columns: &[SparseVec<S>], nrows: usize) -> Vec<SparseVec<S>> {
    let mut rows: Vec<SparseVec<S>> = vec![Vec::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            rows[*i].push((j, v.clone()));
        }
    }
    rows
}

/// Some x with Σ_j x_j·columns[j] = rhs, free unknowns set to zero.
pub fn solve<S: Scalar>(
    columns: &[SparseVec<S>],
    nrows: usize,
    rhs: &SparseVec<S>,
) -> Option<SparseVec<S>> {
    let n = columns.len();
    let mut rows = transpose(columns, nrows);
    for (i, v) in rhs {
        rows[*i].push((n, v.clone()));
    }
    let rref = Rref::from_rows(rows, n + 1);
    if rref.rows.contains_key(&n) {
        return None;
    }
    let x = rref
        .rows
        .iter()
        .filter_map(|(&p, row)| entry(row, n).map(|v| (p, v.clone())))
        .collect();
    Some(x)
}

/// Kernel of the linear map with the given columns.
pub fn kernel<S: Scalar>(columns: &[SparseVec<S>], nrows: usize) -> Vec<SparseVec<S>> {
    Rref::from_rows(transpose(columns, nrows), columns.len()).kernel()
}

pub fn rank<S: Scalar>(vectors: &[SparseVec<S>], len: usize) -> usize {
    let mut e = Echelon::new(len);
    for v in vectors {
        e.push(v.clone());
    }
    e.rank()
}

/// Σ_j x_j·columns[j].
pub fn apply<S: Scalar>(columns: &[SparseVec<S>], x: &SparseVec<S>) -> SparseVec<S> {
    let mut acc = Vec::new();
    for (j, v) in x {
        acc = axpy(&acc, v, &columns[*j]);
    }
    acc
}
