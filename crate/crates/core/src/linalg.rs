//! Dense matrices over any [`Scalar`].
//!
//! Elimination routines pick the pivot of largest magnitude, which is harmless
//! for exact scalars and keeps floating-point elimination stable.

use crate::error::{Error, Result};
use crate::scalar::{OrderedScalar, Scalar};
use std::ops::{Index, IndexMut};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn diagonal(entries: &[S]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = std::mem::replace(&mut out[(i, j)], S::zero());
                    out[(i, j)] = cur + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[S], y: &[S]) -> S {
        let my = self.mul_vec(y);
        x.iter().zip(&my).fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Largest entry magnitude (0 for the empty matrix).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.max_abs();
        (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)].clone() - self[(j, i)].clone()).is_negligible(scale)))
    }

    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        (from..self.rows).filter(|&r| !self[(r, col)].is_zero()).max_by(|&a, &b| {
            self[(a, col)].magnitude().partial_cmp(&self[(b, col)].magnitude()).unwrap_or(std::cmp::Ordering::Equal)
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn determinant(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let scale = self.max_abs();
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = m.pivot_row(c, c) else {
                return Ok(S::zero());
            };
            if m[(p, c)].is_negligible(scale) {
                return Ok(S::zero());
            }
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone() / piv.clone();
                for j in c..n {
                    let v = m[(c, j)].clone() * f.clone();
                    let cur = std::mem::replace(&mut m[(r, j)], S::zero());
                    m[(r, j)] = cur - v;
                }
            }
        }
        Ok(det)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = a.pivot_row(c, c).ok_or(Error::SingularMatrix)?;
            if a[(p, c)].is_negligible(scale) {
                return Err(Error::SingularMatrix);
            }
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] = a[(c, j)].clone() / piv.clone();
                inv[(c, j)] = inv[(c, j)].clone() / piv.clone();
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let av = a[(c, j)].clone() * f.clone();
                    let iv = inv[(c, j)].clone() * f.clone();
                    a[(r, j)] = a[(r, j)].clone() - av;
                    inv[(r, j)] = inv[(r, j)].clone() - iv;
                }
            }
        }
        Ok(inv)
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn row_echelon(&self) -> (Self, Vec<usize>) {
        let scale = self.max_abs();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = m.pivot_row(c, r) else { continue };
            if m[(p, c)].is_negligible(scale) {
                for rr in r..self.rows {
                    m[(rr, c)] = S::zero();
                }
                continue;
            }
            m.swap_rows(p, r);
            let piv = m[(r, c)].clone();
            for j in 0..self.cols {
                m[(r, j)] = m[(r, j)].clone() / piv.clone();
            }
            for rr in 0..self.rows {
                if rr == r || m[(rr, c)].is_zero() {
                    continue;
                }
                let f = m[(rr, c)].clone();
                for j in 0..self.cols {
                    let v = m[(r, j)].clone() * f.clone();
                    m[(rr, j)] = m[(rr, j)].clone() - v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// A basis of the column space, taken from the original columns.
    pub fn column_basis(&self) -> Self {
        let (_, pivots) = self.row_echelon();
        Self::from_fn(self.rows, pivots.len(), |i, j| self[(i, pivots[j])].clone())
    }

    /// Solve `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>> {
        Ok(self.inverse()?.mul_vec(b))
    }

    /// Characteristic polynomial `det(λI - A)` by Faddeev-LeVerrier, returned
    /// lowest degree first (so the last entry is 1).
    pub fn char_poly(&self) -> Result<Vec<S>> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            m = next;
            let am = self.mul(&m);
            coeffs[n - k] = -(am.trace() / S::from_i64(k as i64));
        }
        Ok(coeffs)
    }
}

impl<S: OrderedScalar> Matrix<S> {
    /// Positive definiteness of a symmetric matrix via symmetric Gaussian
    /// elimination (LDL^T without pivoting); every pivot must be positive
    /// beyond the scalar's tolerance.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let scale = self.max_abs();
        let mut m = self.clone();
        for c in 0..n {
            let piv = m[(c, c)].clone();
            if piv <= S::zero() || piv.is_negligible(scale) {
                return false;
            }
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone() / piv.clone();
                for j in c..n {
                    let v = m[(c, j)].clone() * f.clone();
                    m[(r, j)] = m[(r, j)].clone() - v;
                }
            }
        }
        true
    }

    pub fn is_negative_definite(&self) -> bool {
        self.scale(&-S::one()).is_positive_definite()
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}
