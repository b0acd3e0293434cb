//! Dense exact linear algebra over a field scalar.
//!
//! The same routines run over rationals and Gaussian rationals; every pivot
//! decision is an exact zero test, so ranks, kernels, and solutions are
//! certificates rather than estimates.

use crate::rational::{CRat, Rat};
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field scalar admitting exact arithmetic and exact zero tests.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn conj(&self) -> Self;
}

impl Scalar for Rat {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Scalar for CRat {
    fn conj(&self) -> Self {
        CRat::new(self.re.clone(), -self.im.clone())
    }
}

/// Dense row-major matrix over an exact field scalar.
#[derive(Clone, PartialEq)]
pub struct Mat<T = Rat> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> std::fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Mat<T> {
    pub fn from_data(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat::from_data(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_data(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_data(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other.get(k, j).clone();
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + prod);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc + self.get(i, j).clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = T::one() / self.get(r, c).clone();
            for j in c..self.cols {
                let v = self.get(r, j).clone() * inv.clone();
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j).clone() - f.clone() * self.get(r, j).clone();
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Ax = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (m, pivots) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = Some(pr);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![T::zero(); self.cols];
            vec[free] = T::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                vec[pc] = -m.get(pr, free).clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// One solution of `Ax = b` (free variables set to zero), or `None` if
    /// the system is inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(pr, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by exact elimination; panics unless square.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * pivot.clone();
            for i in (c + 1)..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone() / pivot.clone();
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug.get(i, j + n).clone()))
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }
}

/// Span comparison: do the row spaces of `a` and `b` coincide?
pub fn same_row_space<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> bool {
    let (ra, pa) = a.rref();
    let (rb, pb) = b.rref();
    if pa != pb {
        return false;
    }
    let k = pa.len();
    for i in 0..k {
        for j in 0..a.ncols() {
            if ra.get(i, j) != rb.get(i, j) {
                return false;
            }
        }
    }
    true
}

/// Inertia (positive, negative, zero counts) of a Hermitian Gaussian-rational
/// matrix, computed by exact congruence reduction. The matrix must satisfy
/// `m == m.conj_transpose()`; real symmetric matrices embed with zero
/// imaginary parts.
pub fn hermitian_inertia(m: &Mat<CRat>) -> (usize, usize, usize) {
    use num_traits::Signed;
    assert_eq!(m.nrows(), m.ncols());
    assert_eq!(m, &m.conj_transpose(), "inertia of non-Hermitian matrix");
    let n = m.nrows();
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);

    while !active.is_empty() {
        // Prefer a nonzero diagonal pivot.
        if let Some(pick) = active.iter().position(|&i| !a.get(i, i).is_zero()) {
            let i = active.remove(pick);
            let pivot = a.get(i, i).clone();
            debug_assert!(pivot.im.is_zero());
            if pivot.re.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            // Schur complement with respect to the 1x1 block at (i, i).
            let rest = active.clone();
            for &r in &rest {
                for &c in &rest {
                    let v = a.get(r, c).clone()
                        - a.get(r, i).clone() * a.get(i, c).clone() / pivot.clone();
                    a.set(r, c, v);
                }
            }
            continue;
        }
        // All diagonal entries vanish; a nonzero off-diagonal entry pairs off
        // one positive and one negative direction.
        let mut found = None;
        'outer: for (pi, &r) in active.iter().enumerate() {
            for (pj, &c) in active.iter().enumerate().skip(pi + 1) {
                if !a.get(r, c).is_zero() {
                    found = Some((pi, pj, r, c));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj, r, c)) = found else {
            zero += active.len();
            break;
        };
        pos += 1;
        neg += 1;
        let b = a.get(r, c).clone();
        let bconj = b.conj();
        // Schur complement with respect to the 2x2 block [[0, b], [conj(b), 0]].
        let mut rest = active.clone();
        rest.remove(pj);
        rest.remove(pi);
        for &x in &rest {
            for &y in &rest {
                let corr = a.get(x, r).clone() * a.get(c, y).clone() / b.clone()
                    + a.get(x, c).clone() * a.get(r, y).clone() / bconj.clone();
                let v = a.get(x, y).clone() - corr;
                a.set(x, y, v);
            }
        }
        active = rest;
    }
    (pos, neg, zero)
}
