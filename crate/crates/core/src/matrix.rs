//! Dense row-major matrices over any exact scalar ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::error::{Error, Result};
use crate::scalar::{Field, GaussRat, Ring};
use crate::{GMat, IMat, Int, QMat, Rat, ZMat};

/// A dense `rows × cols` matrix with entries in `T`, stored row-major.
/// Arithmetic is exact; values are immutable in all public APIs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != nc) {
            return Err(Error::shape("ragged rows"));
        }
        Ok(Matrix {
            rows: nr,
            cols: nc,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diag(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Matrix::zero(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
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

    pub fn at(&self, r: usize, c: usize) -> &T {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn map<U: Ring>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |r, c| f(self.at(r, c)))
    }

    pub fn try_map<U: Ring>(&self, mut f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                data.push(f(self.at(r, c))?);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    /// Submatrix with the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| {
            self.at(rows[r], cols[c]).clone()
        })
    }

    /// Leading principal `k × k` block.
    pub fn leading(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx)
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::shape("hstack: row mismatch"));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                rhs.at(r, c - self.cols).clone()
            }
        }))
    }

    /// Vertical concatenation, `self` on top.
    pub fn vstack(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::shape("vstack: column mismatch"));
        }
        Ok(Matrix::from_fn(self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                rhs.at(r - self.rows, c).clone()
            }
        }))
    }

    /// 2×2 block assembly; all blocks must have compatible shapes.
    pub fn block2x2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && self.transpose() == self.neg_ref()
    }

    pub fn neg_ref(&self) -> Self {
        self.map(|v| -v.clone())
    }

    pub fn add_ref(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::shape("matrix addition shape mismatch"));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).clone() + rhs.at(r, c).clone()
        }))
    }

    pub fn sub_ref(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::shape("matrix subtraction shape mismatch"));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).clone() - rhs.at(r, c).clone()
        }))
    }

    pub fn mul_ref(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::shape(format!(
                "matrix product shape mismatch: {}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.at(r, k).clone() * rhs.at(k, c).clone();
            }
            acc
        }))
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::shape("matrix-vector shape mismatch"));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    acc = acc + self.at(r, c).clone() * v[c].clone();
                }
                acc
            })
            .collect())
    }

    pub fn trace(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::shape("trace of non-square matrix"));
        }
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self.at(i, i).clone();
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    /// Flattens to a single column (row-major order), for use as a vector in
    /// linearized equation systems.
    pub fn vectorize(&self) -> Vec<T> {
        self.data.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape("entry count does not match dimensions"));
        }
        Ok(Matrix { rows, cols, data })
    }
}

impl<T: Field> Matrix<T> {
    /// Exact inverse via Gauss-Jordan elimination with pivot search.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::shape("inverse of non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::<T>::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or_else(|| Error::degenerate("singular matrix"))?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.at(col, col).clone();
            for c in 0..n {
                a.set(col, c, a.at(col, c).clone() / p.clone());
                inv.set(col, c, inv.at(col, c).clone() / p.clone());
            }
            for r in 0..n {
                if r != col && !a.at(r, col).is_zero() {
                    let factor = a.at(r, col).clone();
                    for c in 0..n {
                        let v = a.at(r, c).clone() - factor.clone() * a.at(col, c).clone();
                        a.set(r, c, v);
                        let w = inv.at(r, c).clone() - factor.clone() * inv.at(col, c).clone();
                        inv.set(r, c, w);
                    }
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(r1 * self.cols + c, r2 * self.cols + c);
        }
    }
}

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.add_ref(rhs).expect("matrix addition shape mismatch")
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.sub_ref(rhs).expect("matrix subtraction shape mismatch")
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.mul_ref(rhs).expect("matrix product shape mismatch")
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.neg_ref()
    }
}

impl<T: Ring + fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// ℤ → ℚ entrywise.
pub fn zmat_to_qmat(m: &ZMat) -> QMat {
    m.map(|v| Rat::from_integer(v.clone()))
}

/// ℚ → ℚ(i) entrywise.
pub fn qmat_to_gmat(m: &QMat) -> GMat {
    m.map(|v| GaussRat::from_rat(v.clone()))
}

/// ℤ → ℚ(i) entrywise.
pub fn zmat_to_gmat(m: &ZMat) -> GMat {
    m.map(|v| GaussRat::from_rat(Rat::from_integer(v.clone())))
}

/// ℚ → ℤ entrywise; fails on non-integral entries.
pub fn qmat_to_zmat(m: &QMat) -> Result<ZMat> {
    m.try_map(|v| {
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::domain(format!("entry {v} is not an integer")))
        }
    })
}

/// ℚ(i) → ℚ entrywise; fails on entries with nonzero imaginary part.
pub fn gmat_to_qmat(m: &GMat) -> Result<QMat> {
    m.try_map(|v| v.to_rat())
}

/// Entrywise real and imaginary parts of a Gaussian-rational matrix.
pub fn gmat_re_im(m: &GMat) -> (QMat, QMat) {
    (m.map(|v| v.re().clone()), m.map(|v| v.im().clone()))
}

/// Entrywise conjugation.
pub fn gmat_conj(m: &GMat) -> GMat {
    m.map(|v| v.conj())
}

/// Conjugate transpose.
pub fn gmat_conj_transpose(m: &GMat) -> GMat {
    gmat_conj(m).transpose()
}

pub fn imat_to_zmat(m: &IMat) -> ZMat {
    m.map(|v| Int::from(*v))
}

pub fn zmat_to_imat(m: &ZMat) -> Result<IMat> {
    use num_traits::ToPrimitive;
    m.try_map(|v| {
        v.to_i64()
            .ok_or_else(|| Error::domain("entry too large for machine integer"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    #[test]
    fn product_and_identity() {
        let a: QMat = Matrix::from_fn(2, 3, |r, c| rat_int((r * 3 + c) as i64));
        let id = QMat::identity(3);
        assert_eq!(a.mul_ref(&id).unwrap(), a);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn inverse_round_trip() {
        let a: QMat = Matrix::from_rows(vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(7), rat_int(4)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul_ref(&inv).unwrap().is_identity());
        assert!(inv.mul_ref(&a).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_rejected() {
        let a: QMat = Matrix::from_rows(vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ])
        .unwrap();
        assert!(a.inverse().is_err());
    }

    #[test]
    fn block_assembly() {
        let z = ZMat::zero(2, 2);
        let id = ZMat::identity(2);
        let m = ZMat::block2x2(&z, &id, &id.neg_ref(), &z).unwrap();
        assert_eq!(m.rows(), 4);
        assert!(m.is_antisymmetric());
    }
}
