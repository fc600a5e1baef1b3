//! Dense exact linear algebra over the rationals.
//!
//! Everything here is deterministic: elimination always takes the first
//! nonzero entry of a column as pivot, and null-space bases are the
//! canonical ones read off the reduced row echelon form (one basis vector per
//! free column, equal to 1 there and 0 at every other free column).

use std::fmt;
use std::ops::{Index, IndexMut};

use num::{One, Signed, Zero};

use crate::rational::Q;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Q>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix column");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| crate::rational::q(x)).collect()).collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        if self.rows == 0 {
            return other.clone();
        }
        if other.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        self.transpose().vstack(&other.transpose()).transpose()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&r| !self[(r, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(prow, found);
            let inv = self[(prow, c)].recip();
            for k in c..self.cols {
                let x = &self[(prow, k)] * &inv;
                self[(prow, k)] = x;
            }
            for r in 0..self.rows {
                if r == prow || self[(r, c)].is_zero() {
                    continue;
                }
                let f = self[(r, c)].clone();
                for k in c..self.cols {
                    if self[(prow, k)].is_zero() {
                        continue;
                    }
                    let d = &f * &self[(prow, k)];
                    self[(r, k)] -= d;
                }
            }
            pivots.push(c);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut span = Span::new(self.cols);
        for r in 0..self.rows {
            span.insert(self.row(r).to_vec());
        }
        span.dim()
    }

    /// Canonical basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut span = Span::new(self.cols);
        for r in 0..self.rows {
            span.insert(self.row(r).to_vec());
        }
        span.orthogonal_complement_basis()
    }

    /// Null space as the columns of a matrix (`cols x k`).
    pub fn nullspace_matrix(&self) -> Matrix {
        Matrix::from_columns(&self.nullspace(), self.cols)
    }

    pub fn determinant(&self) -> Q {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &pivot;
                for k in c..n {
                    let d = &f * &m[(c, k)];
                    m[(r, k)] -= d;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.transpose().mul(self).is_identity()
    }

    pub fn max_abs(&self) -> Q {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
    }
}

/// Incrementally maintained row space in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Span {
    width: usize,
    /// Reduced rows, each with a leading 1 at `pivots[i]`.
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(width: usize) -> Self {
        Span { width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<Q>>>(width: usize, vs: I) -> Self {
        let mut s = Span::new(width);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (k, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    v[k] -= &f * x;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.width);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut().skip(p) {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (k, x) in v.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    row[k] -= &f * x;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Canonical basis of the solutions of `row . x = 0` for every row.
    pub fn orthogonal_complement_basis(&self) -> Vec<Vec<Q>> {
        let mut is_pivot = vec![false; self.width];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.width)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![Q::zero(); self.width];
                x[free] = Q::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = -row[free].clone();
                }
                x
            })
            .collect()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }
}

/// Coordinates of `v` in a canonical null-space basis (one basis vector per
/// free column). Returns `None` when `v` is outside the span.
pub fn coordinates_in(basis: &[Vec<Q>], free_cols: &[usize], v: &[Q]) -> Option<Vec<Q>> {
    let coords: Vec<Q> = free_cols.iter().map(|&c| v[c].clone()).collect();
    let mut recon = vec![Q::zero(); v.len()];
    for (b, x) in basis.iter().zip(&coords) {
        if x.is_zero() {
            continue;
        }
        for (r, y) in recon.iter_mut().zip(b) {
            *r += x * y;
        }
    }
    (recon == v).then_some(coords)
}

/// Free columns of a canonical basis produced by [`Span::orthogonal_complement_basis`]:
/// for each basis vector, the last coordinate equal to 1 among columns that are
/// zero in every other basis vector.
pub fn free_columns(basis: &[Vec<Q>]) -> Vec<usize> {
    (0..basis.len())
        .map(|i| {
            let w = basis[i].len();
            (0..w)
                .find(|&c| {
                    basis[i][c].is_one() && basis.iter().enumerate().all(|(j, b)| j == i || b[c].is_zero())
                })
                .expect("canonical basis vector has a free column")
        })
        .collect()
}

pub fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}
