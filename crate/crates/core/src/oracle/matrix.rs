use std::ops::{Index, IndexMut};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        CMatrix { dim, data: vec![Complex::from(T::zero()); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::from(T::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("matrix must be square"));
        }
        Ok(CMatrix { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Exact equality with the transpose.
    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `true` when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == T::zero())
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).fold(Complex::from(T::zero()), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Principal submatrix on `indices`.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}
