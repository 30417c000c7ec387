use num_complex::Complex;
use rayon::prelude::*;

use super::eigen::{eigenvalues_dense, symmetric_eigenvalues};
use super::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{is_finite, Scalar};
use crate::spectral::Frequencies;

/// `H` on the product basis `|kx⟩|ky⟩`, `0 ≤ kx, ky < N`, indexed `kx·N + ky`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedHamiltonian<T> {
    freqs: Frequencies<T>,
    g: Complex<T>,
    basis_size: usize,
    matrix: CMatrix<T>,
}

/// `⟨k+1|x|k⟩` for the oscillator `p² + f²x²`.
fn position_element<T: Scalar>(k: usize, f: T) -> T {
    (T::count(k + 1) / (T::lit(2.0) * f)).sqrt()
}

/// Builds the truncated Hamiltonian with `n` states per oscillator.
pub fn build_truncated<T: Scalar>(freqs: &Frequencies<T>, g: Complex<T>, n: usize) -> Result<TruncatedHamiltonian<T>> {
    if n < 2 {
        return Err(Error::invalid("basis size must be at least 2"));
    }
    if !is_finite(g) {
        return Err(Error::invalid("coupling must be finite"));
    }
    let (nu, omega) = (freqs.nu(), freqs.omega());
    let dim = n * n;
    let rows: Vec<Vec<Complex<T>>> = (0..dim)
        .into_par_iter()
        .map(|row| {
            let (kx, ky) = (row / n, row % n);
            let mut r = vec![Complex::from(T::zero()); dim];
            r[row] = Complex::from(T::count(2 * kx + 1) * nu + T::count(2 * ky + 1) * omega);
            for (jx, xe) in neighbours(kx, n, nu) {
                for (jy, ye) in neighbours(ky, n, omega) {
                    r[jx * n + jy] = g * (xe * ye);
                }
            }
            r
        })
        .collect();
    Ok(TruncatedHamiltonian { freqs: *freqs, g, basis_size: n, matrix: CMatrix::from_rows(rows)? })
}

/// States `k ± 1` inside the basis together with `⟨k'|x|k⟩`.
fn neighbours<T: Scalar>(k: usize, n: usize, f: T) -> impl Iterator<Item = (usize, T)> {
    let down = (k > 0).then(|| (k - 1, position_element(k - 1, f)));
    let up = (k + 1 < n).then(|| (k + 1, position_element(k, f)));
    down.into_iter().chain(up)
}

impl<T: Scalar> TruncatedHamiltonian<T> {
    pub fn freqs(&self) -> &Frequencies<T> {
        &self.freqs
    }

    pub fn g(&self) -> Complex<T> {
        self.g
    }

    /// States per oscillator.
    pub fn basis_size(&self) -> usize {
        self.basis_size
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// Basis indices with `kx + ky ≡ parity (mod 2)`; the coupling conserves it.
    pub fn sector(&self, parity: usize) -> Vec<usize> {
        let n = self.basis_size;
        (0..n * n).filter(|i| (i / n + i % n) % 2 == parity % 2).collect()
    }

    /// All eigenvalues sorted by real then imaginary part.
    ///
    /// Each parity sector is diagonalised separately; for real `g` the
    /// symmetric solver is used, otherwise [`eigenvalues_dense`].
    pub fn eigenvalues(&self) -> Result<Vec<Complex<T>>> {
        let real = self.g.im == T::zero();
        let sectors: Vec<Result<Vec<Complex<T>>>> = [0usize, 1]
            .into_par_iter()
            .map(|parity| {
                let sub = self.matrix.submatrix(&self.sector(parity));
                if real {
                    let dim = sub.dim();
                    let data: Vec<T> = (0..dim * dim).map(|i| sub[(i / dim, i % dim)].re).collect();
                    Ok(symmetric_eigenvalues(&data, dim)?.into_iter().map(Complex::from).collect())
                } else {
                    eigenvalues_dense(&sub)
                }
            })
            .collect();
        let mut all = Vec::with_capacity(self.matrix.dim());
        for s in sectors {
            all.extend(s?);
        }
        all.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
        });
        Ok(all)
    }
}
