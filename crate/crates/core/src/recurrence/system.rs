//! The full coefficient system `(M_n)` and its nullspace.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::energies_from_subsystem;
use crate::error::{Advisory, Error, Flagged, Result};
use crate::scalar::Scalar;
use crate::spectral::{AnsatzParameters, Frequencies};

/// Relative pivot threshold of the rank-revealing elimination.
const RANK_THRESHOLD: f64 = 1e-10;
/// Relative row residual accepted for a coefficient vector.
const RESIDUAL_TOLERANCE: f64 = 1e-9;

/// Coefficients `a[j][k]` of the prefactor `P_n(x, y) = Σ a[j][k] x^j y^k`, `j + k ≤ n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable<T> {
    n: u32,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> CoefficientTable<T> {
    /// All-zero table of total degree `n`.
    pub fn zeros(n: u32) -> Self {
        CoefficientTable { n, entries: vec![Complex::from(T::zero()); Self::len_for(n)] }
    }

    /// Number of monomials of degree at most `n`.
    pub fn len_for(n: u32) -> usize {
        let n = n as usize;
        (n + 1) * (n + 2) / 2
    }

    /// Builds a table from a flat vector in [`Self::index`] order.
    pub fn from_flat(n: u32, entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.len() != Self::len_for(n) {
            return Err(Error::invalid(format!(
                "expected {} coefficients for n = {n}, got {}",
                Self::len_for(n),
                entries.len()
            )));
        }
        Ok(CoefficientTable { n, entries })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Flat position of `x^j y^k`: `i(i+1)/2 + j` with `i = j + k`.
    pub fn index(j: usize, k: usize) -> usize {
        let i = j + k;
        i * (i + 1) / 2 + j
    }

    /// `a[j][k]`, zero outside `0 ≤ j, k` and `j + k ≤ n`.
    pub fn get(&self, j: i64, k: i64) -> Complex<T> {
        if j < 0 || k < 0 || (j + k) as u64 > self.n as u64 {
            return Complex::from(T::zero());
        }
        self.entries[Self::index(j as usize, k as usize)]
    }

    /// Sets `a[j][k]`; panics when out of range.
    pub fn set(&mut self, j: usize, k: usize, value: Complex<T>) {
        assert!(j + k <= self.n as usize, "monomial x^{j} y^{k} exceeds degree {}", self.n);
        self.entries[Self::index(j, k)] = value;
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// Top-degree coefficients `a[k][n−k]`, `k = 0..=n`.
    pub fn top_row(&self) -> Vec<Complex<T>> {
        let n = self.n as usize;
        (0..=n).map(|k| self.entries[Self::index(k, n - k)]).collect()
    }

    /// `P_n(x, y)`.
    pub fn polynomial(&self, x: Complex<T>, y: Complex<T>) -> Complex<T> {
        let n = self.n as usize;
        let mut total = Complex::from(T::zero());
        let mut xp = Complex::from(T::one());
        for j in 0..=n {
            let mut term = Complex::from(T::zero());
            let mut yp = Complex::from(T::one());
            for k in 0..=(n - j) {
                term = term + self.entries[Self::index(j, k)] * yp;
                yp = yp * y;
            }
            total = total + term * xp;
            xp = xp * x;
        }
        total
    }
}

/// Coefficients of the eight terms of one row, in the order used by [`row_terms`].
struct RowWeights<T> {
    diag: Complex<T>,
    coupling: Complex<T>,
    x_curvature: Complex<T>,
    y_curvature: Complex<T>,
}

/// The `(coefficient, j, k)` triples of row `(j, k)`.
fn row_terms<T: Scalar>(
    j: i64,
    k: i64,
    params: &AnsatzParameters<T>,
    w: &RowWeights<T>,
) -> [(Complex<T>, i64, i64); 8] {
    let two_gamma = params.gamma * T::lit(2.0);
    let real = |v: i64| T::lit(v as f64);
    [
        (w.diag, j, k),
        (-w.coupling, j - 1, k - 1),
        (w.x_curvature, j - 2, k),
        (w.y_curvature, j, k - 2),
        (two_gamma * real(j + 1), j + 1, k - 1),
        (two_gamma * real(k + 1), j - 1, k + 1),
        (Complex::from(real((j + 2) * (j + 1))), j + 2, k),
        (Complex::from(real((k + 2) * (k + 1))), j, k + 2),
    ]
}

fn weights<T: Scalar>(
    j: i64,
    k: i64,
    params: &AnsatzParameters<T>,
    energy: Complex<T>,
    relations: Option<(&Frequencies<T>, Complex<T>)>,
) -> RowWeights<T> {
    let (a, b, c) = (params.alpha, params.beta, params.gamma);
    let zero = Complex::from(T::zero());
    let diag = energy - a * T::lit((2 * j + 1) as f64) - b * T::lit((2 * k + 1) as f64);
    match relations {
        Some((freqs, g)) => RowWeights {
            diag,
            coupling: c * (a + b) * T::lit(2.0) + g,
            x_curvature: a * a + c * c - Complex::from(freqs.nu() * freqs.nu()),
            y_curvature: b * b + c * c - Complex::from(freqs.omega() * freqs.omega()),
        },
        None => RowWeights { diag, coupling: zero, x_curvature: zero, y_curvature: zero },
    }
}

/// Row `(M_n)_{j,k}` of the coefficient system evaluated on `table`: the
/// coefficient of `x^j y^k` in `(H − E)ψ / exp(…)`, up to sign.
///
/// Coefficients outside the table count as zero.
#[allow(clippy::too_many_arguments)]
pub fn build_mn_row<T: Scalar>(
    n: u32,
    j: usize,
    k: usize,
    params: &AnsatzParameters<T>,
    freqs: &Frequencies<T>,
    g: Complex<T>,
    energy: Complex<T>,
    table: &CoefficientTable<T>,
) -> Result<Complex<T>> {
    if j + k > n as usize {
        return Err(Error::invalid(format!("row ({j}, {k}) exceeds degree {n}")));
    }
    let (j, k) = (j as i64, k as i64);
    let w = weights(j, k, params, energy, Some((freqs, g)));
    Ok(row_terms(j, k, params, &w)
        .iter()
        .fold(Complex::from(T::zero()), |acc, &(coef, p, q)| acc + coef * table.get(p, q)))
}

/// Dense `(M_n)` with the ground-state relations imposed, rows and columns in
/// [`CoefficientTable::index`] order.
fn system_matrix<T: Scalar>(n: u32, params: &AnsatzParameters<T>, energy: Complex<T>) -> Vec<Vec<Complex<T>>> {
    let size = CoefficientTable::<T>::len_for(n);
    let mut rows = vec![vec![Complex::from(T::zero()); size]; size];
    for i in 0..=n as i64 {
        for j in 0..=i {
            let k = i - j;
            let row = CoefficientTable::<T>::index(j as usize, k as usize);
            let w = weights(j, k, params, energy, None);
            for (coef, p, q) in row_terms(j, k, params, &w) {
                if p >= 0 && q >= 0 && p + q <= n as i64 {
                    let col = CoefficientTable::<T>::index(p as usize, q as usize);
                    rows[row][col] = rows[row][col] + coef;
                }
            }
        }
    }
    rows
}

/// Basis of the numerical nullspace of `a` (complete pivoting) and the
/// smallest pivot magnitude relative to the largest entry or `reference`.
fn nullspace<T: Scalar>(mut a: Vec<Vec<Complex<T>>>, reference: T) -> (Vec<Vec<Complex<T>>>, T) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let scale = a
        .iter()
        .map(|r| r.iter().map(|z| z.norm()).fold(T::zero(), T::max))
        .fold(reference, T::max)
        .max(T::min_positive_value());
    let threshold = T::lit(RANK_THRESHOLD) * scale;
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    let mut smallest = T::infinity();
    while rank < rows.min(cols) {
        let (mut pr, mut pc, mut best) = (rank, rank, T::zero());
        for (r, row) in a.iter().enumerate().skip(rank) {
            for (c, z) in row.iter().enumerate().skip(rank) {
                if z.norm() > best {
                    best = z.norm();
                    pr = r;
                    pc = c;
                }
            }
        }
        if best <= threshold {
            smallest = smallest.min(best / scale);
            break;
        }
        smallest = smallest.min(best / scale);
        a.swap(rank, pr);
        for row in a.iter_mut() {
            row.swap(rank, pc);
        }
        perm.swap(rank, pc);
        let pivot = a[rank][rank];
        for r in rank + 1..rows {
            let factor = a[r][rank] / pivot;
            if factor.norm() == T::zero() {
                continue;
            }
            let (upper, lower) = a.split_at_mut(r);
            for (dst, &v) in lower[0][rank..cols].iter_mut().zip(&upper[rank][rank..cols]) {
                *dst = *dst - factor * v;
            }
        }
        rank += 1;
    }
    let zero = Complex::from(T::zero());
    let basis = (rank..cols)
        .map(|free| {
            let mut y = vec![zero; cols];
            y[free] = Complex::from(T::one());
            for r in (0..rank).rev() {
                let s = (r + 1..cols).fold(zero, |acc, c| acc + a[r][c] * y[c]);
                y[r] = -s / a[r][r];
            }
            let mut x = vec![zero; cols];
            for (pos, &col) in perm.iter().enumerate() {
                x[col] = y[pos];
            }
            x
        })
        .collect();
    (basis, smallest)
}

/// Largest row residual of `a·x` relative to `scale·‖x‖∞`.
fn relative_residual<T: Scalar>(a: &[Vec<Complex<T>>], x: &[Complex<T>], scale: T) -> T {
    let size = x.iter().map(|z| z.norm()).fold(T::zero(), T::max) * scale;
    if size == T::zero() {
        return T::zero();
    }
    a.iter()
        .map(|row| row.iter().zip(x).fold(Complex::from(T::zero()), |s, (&c, &v)| s + c * v).norm())
        .fold(T::zero(), T::max)
        / size
}

/// Nonzero solution of `(M_n) a = 0` at energy `energy`, with the
/// ground-state relations imposed.
///
/// Normalised so the largest top-row coefficient equals 1. When the nullspace
/// has more than one dimension the first basis vector with a nonzero top row
/// is returned under the `degenerate-nullspace` advisory.
pub fn solve_coefficients<T: Scalar>(
    n: u32,
    params: &AnsatzParameters<T>,
    energy: Complex<T>,
) -> Result<Flagged<CoefficientTable<T>>> {
    if !(energy.re.is_finite() && energy.im.is_finite()) {
        return Err(Error::invalid("energy must be finite"));
    }
    // reject parameters the subsystem solver cannot handle
    energies_from_subsystem(n, params)?;
    let matrix = system_matrix(n, params, energy);
    // cancellation in E − d_k hides the entry scale; include the terms
    let reference = energy.norm() + (params.alpha.norm() + params.beta.norm()) * T::count(2 * n as usize + 1);
    let scale = matrix.iter().flatten().map(|z| z.norm()).fold(reference, T::max);
    let (basis, smallest) = nullspace(matrix.clone(), reference);
    let not_eigen =
        || Error::NotAnEigenvalue { energy: format!("{}", energy), pivot: smallest.to_f64().unwrap_or(f64::NAN) };
    let top: Vec<usize> = (0..=n as usize).map(|k| CoefficientTable::<T>::index(k, n as usize - k)).collect();
    let leading = |v: &[Complex<T>]| {
        top.iter().copied().max_by(|&a, &b| v[a].norm().partial_cmp(&v[b].norm()).unwrap_or(std::cmp::Ordering::Equal))
    };
    let chosen = basis
        .iter()
        .filter_map(|v| {
            let lead = leading(v)?;
            let peak = v.iter().map(|z| z.norm()).fold(T::zero(), T::max);
            (v[lead].norm() > T::lit(RANK_THRESHOLD) * peak).then(|| {
                let norm = v[lead];
                v.iter().map(|&z| z / norm).collect::<Vec<_>>()
            })
        })
        .next()
        .ok_or_else(not_eigen)?;
    if !(relative_residual(&matrix, &chosen, scale) < T::lit(RESIDUAL_TOLERANCE)) {
        return Err(not_eigen());
    }
    let mut advisories = Vec::new();
    if basis.len() > 1 {
        advisories.push(Advisory::DegenerateNullspace);
    }
    Ok(Flagged::with(CoefficientTable::from_flat(n, chosen)?, advisories))
}

#[cfg(test)]
pub(super) fn system_matrix_for_tests<T: Scalar>(
    n: u32,
    params: &AnsatzParameters<T>,
    energy: Complex<T>,
) -> Vec<Vec<Complex<T>>> {
    system_matrix(n, params, energy)
}
