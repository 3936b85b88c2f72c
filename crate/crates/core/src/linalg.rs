//! Dense exact linear algebra: rank, kernels and row echelon forms.

use crate::field::Field;

/// A dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.data[r * self.cols + c].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix<E>) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].clone_from_slice(block.row(r));
        }
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix<E>) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                    field.add(&acc, &field.mul(a, b))
                })
            })
            .collect()
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if field.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = field.mul(a, other.get(k, c));
                    let cur = field.add(out.get(r, c), &prod);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }
}

/// Row echelon form of a set of vectors of a fixed width.
///
/// Row `i` has a leading one in column `pivots[i]`, pivots strictly increase,
/// and every row vanishes left of its pivot.
#[derive(Debug, Clone)]
pub struct Echelon<E> {
    width: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone> Echelon<E> {
    /// Row reduces `rows` (each of length `width`).
    pub fn new<F: Field<Elem = E>>(field: &F, width: usize, mut rows: Vec<Vec<E>>) -> Self {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..width {
            if rank == rows.len() {
                break;
            }
            let Some(found) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
                continue;
            };
            rows.swap(rank, found);
            let inv = field.inv(&rows[rank][col]);
            field.scale(&mut rows[rank][col..], &inv);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                if field.is_zero(&row[col]) {
                    continue;
                }
                let factor = row[col].clone();
                field.sub_scaled(&mut row[col..], &factor, &pivot_row[col..]);
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        Echelon {
            width,
            rows,
            pivots,
        }
    }

    /// Echelon form of the row space of `m`.
    pub fn of_rows<F: Field<Elem = E>>(field: &F, m: &Matrix<E>) -> Self {
        let rows = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        Self::new(field, m.cols(), rows)
    }

    /// Echelon form of the column space of `m`, as vectors of length `m.rows()`.
    pub fn of_columns<F: Field<Elem = E>>(field: &F, m: &Matrix<E>) -> Self {
        Self::of_rows(field, &m.transpose())
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot, in increasing order. Their unit vectors
    /// represent a basis of the quotient `K^width / span(rows)`.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.width - self.rank());
        let mut it = self.pivots.iter().peekable();
        for c in 0..self.width {
            if it.peek() == Some(&&c) {
                it.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Reduces `v` modulo the row space, leaving it supported on free columns.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &mut [E]) {
        assert_eq!(v.len(), self.width);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            field.sub_scaled(&mut v[p..], &factor, &row[p..]);
        }
    }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    // Eliminate along the shorter dimension.
    if m.rows() <= m.cols() {
        Echelon::of_rows(field, m).rank()
    } else {
        Echelon::of_columns(field, m).rank()
    }
}

/// Basis of the right kernel `{v : m v = 0}`, one basis vector per column.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let ech = Echelon::of_rows(field, m);
    let n = m.cols();
    // Back-substitute to reduced echelon form.
    let mut rows = ech.rows.clone();
    for i in (0..rows.len()).rev() {
        let p = ech.pivots[i];
        let (above, rest) = rows.split_at_mut(i);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            if field.is_zero(&row[p]) {
                continue;
            }
            let factor = row[p].clone();
            field.sub_scaled(&mut row[p..], &factor, &pivot_row[p..]);
        }
    }
    let free = ech.free_columns();
    let mut basis = Matrix::zeros(field, n, free.len());
    for (k, &fc) in free.iter().enumerate() {
        basis.set(fc, k, field.one());
        for (row, &p) in rows.iter().zip(&ech.pivots) {
            basis.set(p, k, field.neg(&row[fc]));
        }
    }
    basis
}
