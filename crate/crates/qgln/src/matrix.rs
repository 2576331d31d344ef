//! Minimal dense matrices over an arbitrary commutative ring scalar.
//!
//! Desk-scale dimensions only; products are naive triple loops. The exact
//! backend instantiates `Matrix<QRat>`, the numeric one `Matrix<f64>`.

use num_traits::{One, Zero};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    nrows: usize,
    ncols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Matrix { nrows, ncols, data }
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|x| f(x)).collect(),
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, data: vec![T::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn diag(d: &[T]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.ncols, self.nrows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.nrows {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }

    pub fn matmul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in matmul");
        let mut out = Matrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k).clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols {
                    let t = a.clone() * rhs.get(k, j).clone();
                    out.data[i * rhs.ncols + j] += t;
                }
            }
        }
        out
    }

    /// self * diag(d)
    pub fn mul_diag_right(&self, d: &[T]) -> Matrix<T> {
        assert_eq!(self.ncols, d.len());
        Matrix::from_fn(self.nrows, self.ncols, |i, j| self.get(i, j).clone() * d[j].clone())
    }

    /// diag(d) * self
    pub fn mul_diag_left(&self, d: &[T]) -> Matrix<T> {
        assert_eq!(self.nrows, d.len());
        Matrix::from_fn(self.nrows, self.ncols, |i, j| d[i].clone() * self.get(i, j).clone())
    }

    /// Kronecker product, left factor indexing the coarse blocks.
    pub fn kron(&self, rhs: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(
            self.nrows * rhs.nrows,
            self.ncols * rhs.ncols,
            |i, j| {
                let (ia, ib) = (i / rhs.nrows, i % rhs.nrows);
                let (ja, jb) = (j / rhs.ncols, j % rhs.ncols);
                self.get(ia, ja).clone() * rhs.get(ib, jb).clone()
            },
        )
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        Matrix::from_fn(self.nrows, self.ncols, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j).clone()
        })
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        Matrix::from_fn(self.nrows, self.ncols, |i, j| {
            self.get(i, j).clone() - rhs.get(i, j).clone()
        })
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| T::zero() - x.clone())
    }
}

/// Ring scalar requirements for matrix arithmetic.
pub trait Scalar:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + PartialEq
{
}

impl<T> Scalar for T where
    T: Clone
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + AddAssign
        + PartialEq
{
}

impl Matrix<f64> {
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// self - c * I
    pub fn sub_scaled_identity(&self, c: f64) -> Matrix<f64> {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.nrows {
            let v = *out.get(i, i) - c;
            out.set(i, i, v);
        }
        out
    }

    pub fn commutator(&self, rhs: &Matrix<f64>) -> Matrix<f64> {
        &self.matmul(rhs) - &rhs.matmul(self)
    }
}
