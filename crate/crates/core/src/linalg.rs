//! Exact linear algebra over any [`Field`]: dense matrices, row echelon
//! forms, kernels, and a sparse incremental eliminator for large structured
//! systems such as hom-space equations.

use std::collections::{BTreeMap, HashMap};

use crate::arith::Field;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut E {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |r, c| self.get(r0 + r, c0 + c).clone())
    }
}

/// Matrix operations that need the field context.
pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    Mat { rows, cols, data: vec![f.zero(); rows * cols] }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Mat<F::Elem> {
    Mat::from_fn(n, n, |r, c| if r == c { f.one() } else { f.zero() })
}

pub fn is_zero<F: Field>(f: &F, m: &Mat<F::Elem>) -> bool {
    m.data.iter().all(|x| f.is_zero(x))
}

pub fn mat_mul<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if !f.is_zero(y) {
                    let cell = &mut out.data[i * b.cols + j];
                    f.mul_add_assign(cell, x, y);
                }
            }
        }
    }
    out
}

pub fn mat_add<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.shape(), b.shape(), "matrix sum shape mismatch");
    Mat {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect(),
    }
}

pub fn mat_sub<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.shape(), b.shape(), "matrix difference shape mismatch");
    Mat {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect(),
    }
}

pub fn mat_scale<F: Field>(f: &F, a: &Mat<F::Elem>, c: &F::Elem) -> Mat<F::Elem> {
    Mat {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().map(|x| f.mul(x, c)).collect(),
    }
}

pub fn mat_vec<F: Field>(f: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len(), "matrix-vector shape mismatch");
    (0..a.rows)
        .map(|r| {
            let mut acc = f.zero();
            for (x, y) in a.row(r).iter().zip(v) {
                f.mul_add_assign(&mut acc, x, y);
            }
            acc
        })
        .collect()
}

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|r| !f.is_zero(m.get(*r, col))) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                m.data.swap(p * m.cols + c, row * m.cols + c);
            }
        }
        let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
        for c in col..m.cols {
            let v = f.mul(m.get(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for c in col..m.cols {
                let sub = f.mul(&factor, m.get(row, c));
                if !f.is_zero(&sub) {
                    let v = f.sub(m.get(r, c), &sub);
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Mat<F::Elem>) -> usize {
    let mut copy = m.clone();
    rref(f, &mut copy).len()
}

/// Basis of `{x : m·x = 0}`, one vector per non-pivot column.
pub fn kernel<F: Field>(f: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; m.cols];
        for p in &pivots {
            v[*p] = true;
        }
        v
    };
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_set[*c]) {
        let mut x = vec![f.zero(); m.cols];
        x[free] = f.one();
        for (row, p) in pivots.iter().enumerate() {
            x[*p] = f.neg(r.get(row, free));
        }
        out.push(x);
    }
    out
}

/// Some solution of `m·x = b`, if one exists.
pub fn solve<F: Field>(f: &F, m: &Mat<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(m.rows, b.len(), "right-hand side has wrong length");
    let mut aug = Mat::from_fn(m.rows, m.cols + 1, |r, c| {
        if c < m.cols {
            m.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![f.zero(); m.cols];
    for (row, p) in pivots.iter().enumerate() {
        x[*p] = aug.get(row, m.cols).clone();
    }
    Some(x)
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse<F: Field>(f: &F, m: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    if n == 0 {
        return Some(m.clone());
    }
    let mut aug = Mat::from_fn(n, 2 * n, |r, c| {
        if c < n {
            m.get(r, c).clone()
        } else if c - n == r {
            f.one()
        } else {
            f.zero()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.submatrix(0, n, n, 2 * n))
}

/// An incrementally built subspace of `F^dim` kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    dim: usize,
    /// Rows with a leading 1 at `pivots[i]` and zeros in every other pivot column.
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut v = v.to_vec();
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            let c = v[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Adds `v`; returns true iff it was independent of the stored rows.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        assert_eq!(v.len(), self.dim, "vector has wrong length");
        let mut r = self.reduce(f, v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut() {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|q| *q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        if !self.contains(f, v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v[*p].clone()).collect())
    }

    /// True iff both echelon forms span the same subspace.
    pub fn same_span<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.rank() == other.rank() && other.rows.iter().all(|r| self.contains(f, r))
    }
}

/// A sparse linear system solved by incremental elimination; rows are
/// reduced against earlier pivots as they arrive.
pub struct SparseEliminator<E> {
    ncols: usize,
    pivot_rows: Vec<(usize, BTreeMap<usize, E>)>,
    pivot_of_col: HashMap<usize, usize>,
}

impl<E: Clone + PartialEq> SparseEliminator<E> {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, pivot_rows: Vec::new(), pivot_of_col: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds the equation `Σ c·x_col = 0`; returns true if it raised the rank.
    pub fn add_row<F: Field<Elem = E>>(&mut self, f: &F, entries: impl IntoIterator<Item = (usize, E)>) -> bool {
        let mut row: BTreeMap<usize, E> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column out of range");
            if f.is_zero(&v) {
                continue;
            }
            match row.get_mut(&c) {
                Some(x) => {
                    *x = f.add(x, &v);
                    if f.is_zero(x) {
                        row.remove(&c);
                    }
                }
                None => {
                    row.insert(c, v);
                }
            }
        }
        if row.is_empty() {
            return false;
        }
        // Earlier pivot rows never contain earlier pivot columns, so one pass
        // in insertion order clears every pivot column.
        if row.len() * 4 < self.pivot_rows.len() {
            loop {
                let hit = row
                    .iter()
                    .filter_map(|(c, _)| self.pivot_of_col.get(c).copied())
                    .min();
                let Some(idx) = hit else { break };
                self.eliminate(f, &mut row, idx);
            }
        } else {
            for idx in 0..self.pivot_rows.len() {
                if row.contains_key(&self.pivot_rows[idx].0) {
                    self.eliminate(f, &mut row, idx);
                }
            }
        }
        let Some((&p, pv)) = row.iter().next() else {
            return false;
        };
        let inv = f.inv(pv).expect("nonzero");
        for v in row.values_mut() {
            *v = f.mul(v, &inv);
        }
        self.pivot_of_col.insert(p, self.pivot_rows.len());
        self.pivot_rows.push((p, row));
        true
    }

    fn eliminate<F: Field<Elem = E>>(&self, f: &F, row: &mut BTreeMap<usize, E>, idx: usize) {
        let (pc, prow) = &self.pivot_rows[idx];
        let Some(c) = row.get(pc).cloned() else { return };
        for (col, val) in prow {
            let delta = f.mul(&c, val);
            match row.get_mut(col) {
                Some(x) => {
                    *x = f.sub(x, &delta);
                    if f.is_zero(x) {
                        row.remove(col);
                    }
                }
                None => {
                    row.insert(*col, f.neg(&delta));
                }
            }
        }
    }

    /// Basis of the solution space, one vector per free column in increasing
    /// column order.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut is_pivot = vec![false; self.ncols];
        for (p, _) in &self.pivot_rows {
            is_pivot[*p] = true;
        }
        (0..self.ncols)
            .filter(|c| !is_pivot[*c])
            .map(|free| {
                let mut x = vec![f.zero(); self.ncols];
                x[free] = f.one();
                self.back_substitute(f, &mut x);
                x
            })
            .collect()
    }

    /// Fills pivot coordinates of `x` from its free coordinates so that all
    /// stored equations hold.
    pub fn back_substitute<F: Field<Elem = E>>(&self, f: &F, x: &mut [E]) {
        for (p, row) in self.pivot_rows.iter().rev() {
            let mut acc = f.zero();
            for (c, v) in row {
                if c != p {
                    f.mul_add_assign(&mut acc, v, &x[*c]);
                }
            }
            x[*p] = f.neg(&acc);
        }
    }

    /// Free (non-pivot) columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivot_of_col.contains_key(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{CyclotomicField, PrimeField};
    use proptest::prelude::*;

    fn q() -> CyclotomicField {
        CyclotomicField::new(1).unwrap()
    }

    fn m(rows: usize, cols: usize, vals: &[i64]) -> Mat<<CyclotomicField as Field>::Elem> {
        let f = q();
        Mat::from_rows(rows, cols, vals.iter().map(|v| f.from_i64(*v)).collect())
    }

    #[test]
    fn kernel_and_rank() {
        let f = q();
        let a = m(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(rank(&f, &a), 1);
        let k = kernel(&f, &a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&f, &a, v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn inverse_and_solve() {
        let f = q();
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &inv), identity(&f, 2));
        assert!(inverse(&f, &m(2, 2, &[1, 2, 2, 4])).is_none());
        let x = solve(&f, &a, &[f.from_i64(3), f.from_i64(2)]).unwrap();
        assert_eq!(x, vec![f.from_i64(1), f.from_i64(1)]);
        assert!(solve(&f, &m(2, 1, &[1, 1]), &[f.from_i64(1), f.from_i64(2)]).is_none());
    }

    #[test]
    fn echelon_spans() {
        let f = q();
        let mut e = Echelon::new(3);
        assert!(e.insert(&f, &[f.from_i64(1), f.from_i64(1), f.zero()]));
        assert!(e.insert(&f, &[f.zero(), f.from_i64(1), f.from_i64(1)]));
        assert!(!e.insert(&f, &[f.from_i64(1), f.from_i64(2), f.from_i64(1)]));
        assert!(e.contains(&f, &[f.from_i64(1), f.zero(), f.from_i64(-1)]));
        assert!(!e.contains(&f, &[f.zero(), f.zero(), f.from_i64(1)]));
    }

    proptest! {
        #[test]
        fn sparse_kernel_matches_dense(vals in proptest::collection::vec(-2i64..=2, 20)) {
            let f = PrimeField::new(101, 4).unwrap();
            let a = Mat::from_rows(4, 5, vals.iter().map(|v| f.from_i64(*v)).collect());
            let mut s = SparseEliminator::new(5);
            for r in 0..4 {
                s.add_row(&f, a.row(r).iter().cloned().enumerate());
            }
            let k = s.kernel(&f);
            prop_assert_eq!(k.len(), kernel(&f, &a).len());
            prop_assert_eq!(s.rank(), rank(&f, &a));
            for v in &k {
                prop_assert!(mat_vec(&f, &a, v).iter().all(|x| *x == 0));
            }
        }
    }
}
