//! Coefficient system of the eigenfunctions `ψ_n = P_n(x, y)·exp(−αx²/2 − βy²/2 + γxy)`.
//!
//! Substituting `ψ_n` into the Schrödinger equation and comparing the
//! coefficient of `x^j y^k` gives one row `(M_n)_{j,k}` per monomial. Once the
//! Gaussian parameters satisfy the ground-state relations, the rows of top
//! degree `j + k = n` decouple into a tridiagonal eigenproblem
//!
//! ```text
//! E a_k = d_k a_k − 2γ(k+1) a_{k+1} − 2γ(n−k+1) a_{k−1},
//! d_k   = α(2k+1) + β(2(n−k)+1)
//! ```
//!
//! whose eigenvalues are the energies `(n+1)(α+β) ± m√((α−β)² + 4γ²)`.
//! Here `a_k` is the coefficient of `x^k y^(n−k)`.

mod system;
pub(crate) mod tridiagonal;
mod wavefunction;

pub use system::{build_mn_row, solve_coefficients, CoefficientTable};
pub use wavefunction::evaluate_wavefunction;

use num_complex::Complex;

use crate::error::{Advisory, Error, Flagged, Result};
use crate::scalar::{principal_sqrt, Scalar};
use crate::spectral::AnsatzParameters;

/// Largest `n` accepted by [`energy_polynomial`].
pub const DEFAULT_MAX_LEVEL: u32 = 16;

/// Estimated relative eigenvalue error above which `ill-conditioned` is raised.
const ILL_CONDITIONED_THRESHOLD: f64 = 1e-8;

/// The top-degree (`i = n`) rows as a tridiagonal operator on `(a_0, …, a_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TopSubsystem<T> {
    n: u32,
    diag: Vec<Complex<T>>,
    /// `upper[k] = T[k][k+1] = −2γ(k+1)`
    upper: Vec<Complex<T>>,
    /// `lower[k] = T[k+1][k] = −2γ(n−k)`
    lower: Vec<Complex<T>>,
}

impl<T: Scalar> TopSubsystem<T> {
    pub fn new(n: u32, params: &AnsatzParameters<T>) -> Self {
        let size = n as usize + 1;
        let minus_two_gamma = params.gamma * T::lit(-2.0);
        let diag = (0..size)
            .map(|k| params.alpha * T::count(2 * k + 1) + params.beta * T::count(2 * (size - 1 - k) + 1))
            .collect();
        let upper = (0..size - 1).map(|k| minus_two_gamma * T::count(k + 1)).collect();
        let lower = (0..size - 1).map(|k| minus_two_gamma * T::count(size - 1 - k)).collect();
        TopSubsystem { n, diag, upper, lower }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn diag(&self) -> &[Complex<T>] {
        &self.diag
    }

    pub fn upper(&self) -> &[Complex<T>] {
        &self.upper
    }

    pub fn lower(&self) -> &[Complex<T>] {
        &self.lower
    }

    /// `λ_k = E − d_k`.
    pub fn lambda(&self, k: usize, energy: Complex<T>) -> Complex<T> {
        energy - self.diag[k]
    }

    /// Off-diagonal products `T[k][k+1]·T[k+1][k] = 4γ²(k+1)(n−k)`.
    pub fn couplings(&self) -> Vec<Complex<T>> {
        self.upper.iter().zip(&self.lower).map(|(u, l)| u * l).collect()
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<Complex<T>>> {
        let size = self.diag.len();
        let mut rows = vec![vec![Complex::from(T::zero()); size]; size];
        for k in 0..size {
            rows[k][k] = self.diag[k];
            if k + 1 < size {
                rows[k][k + 1] = self.upper[k];
                rows[k + 1][k] = self.lower[k];
            }
        }
        rows
    }

    /// `det(E − T)`, evaluated by the three-term recurrence.
    pub fn determinant(&self, energy: Complex<T>) -> Complex<T> {
        tridiagonal::char_poly_eval(&self.diag, &self.couplings(), energy).0
    }
}

/// Non-normality of the subsystem: `(|α−β|² + 4|γ|²) / |(α−β)² + 4γ²|`.
fn non_normality<T: Scalar>(params: &AnsatzParameters<T>) -> T {
    let d = params.alpha - params.beta;
    let g2 = params.gamma * params.gamma * T::lit(4.0);
    let num = d.norm_sqr() + g2.norm();
    let den = (d * d + g2).norm();
    if den == T::zero() {
        if num == T::zero() {
            T::one()
        } else {
            T::infinity()
        }
    } else {
        num / den
    }
}

/// The `n + 1` energies of level `n`, i.e. the eigenvalues of [`TopSubsystem`].
///
/// The subsystem is symmetrised by a diagonal similarity and diagonalised by
/// complex symmetric QL; if that breaks down the determinant recurrence is
/// root-solved with Aberth's method instead. Sorted by real then imaginary part.
pub fn energies_from_subsystem<T: Scalar>(n: u32, params: &AnsatzParameters<T>) -> Result<Flagged<Vec<Complex<T>>>> {
    let finite = [params.alpha, params.beta, params.gamma].iter().all(|z| z.re.is_finite() && z.im.is_finite());
    if !finite {
        return Err(Error::invalid("ansatz parameters must be finite"));
    }
    let sub = TopSubsystem::new(n, params);
    let couplings = sub.couplings();
    let off: Vec<Complex<T>> = couplings.iter().map(|&c| principal_sqrt(c)).collect();
    let mut values = tridiagonal::complex_symmetric_ql(&sub.diag, &off)
        .or_else(|| tridiagonal::aberth_roots(&sub.diag, &couplings))
        .ok_or(Error::NoConvergence(tridiagonal_budget(n)))?;
    values.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });

    let mut advisories = Vec::new();
    let kappa = non_normality(params);
    let growth = kappa.powf(T::count((n as usize).max(2)) * T::lit(0.5));
    if !(growth * T::epsilon() <= T::lit(ILL_CONDITIONED_THRESHOLD)) {
        advisories.push(Advisory::IllConditioned);
    }
    Ok(Flagged::with(values, advisories))
}

fn tridiagonal_budget(n: u32) -> usize {
    60 * (n as usize + 1)
}

/// Characteristic polynomial `det(E − T)` of the top subsystem, ascending
/// coefficients (monic, degree `n + 1`).
pub fn energy_polynomial<T: Scalar>(n: u32, params: &AnsatzParameters<T>) -> Result<Flagged<Vec<Complex<T>>>> {
    if n > DEFAULT_MAX_LEVEL {
        return Err(Error::invalid(format!("n = {n} exceeds the supported maximum {DEFAULT_MAX_LEVEL}")));
    }
    let sub = TopSubsystem::new(n, params);
    let couplings = sub.couplings();
    let zero = Complex::from(T::zero());
    let one = Complex::from(T::one());
    // p_{k+1}(E) = (E − d_k) p_k(E) − c_{k−1} p_{k−1}(E)
    let mut prev: Vec<Complex<T>> = vec![one];
    let mut cur: Vec<Complex<T>> = vec![-sub.diag[0], one];
    for k in 1..sub.diag.len() {
        let mut next = vec![zero; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] = next[i + 1] + c;
            next[i] = next[i] - sub.diag[k] * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] = next[i] - couplings[k - 1] * c;
        }
        prev = cur;
        cur = next;
    }
    let limit = T::max_value().sqrt();
    let mut advisories = Vec::new();
    if cur.iter().any(|c| !(c.norm() < limit)) {
        advisories.push(Advisory::Overflow);
    }
    Ok(Flagged::with(cur, advisories))
}

/// Evaluates an ascending coefficient list at `x` (Horner).
pub fn eval_polynomial<T: Scalar>(coeffs: &[Complex<T>], x: Complex<T>) -> Complex<T> {
    coeffs.iter().rev().fold(Complex::from(T::zero()), |acc, &c| acc * x + c)
}

#[cfg(test)]
mod tests;
