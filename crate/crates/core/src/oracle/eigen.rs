//! Dense eigenvalues: balancing, Hessenberg reduction and single-shift QR
//! for complex matrices; Householder tridiagonalisation and QL for real
//! symmetric ones.

use num_complex::Complex;

use super::CMatrix;
use crate::error::{Error, Result};
use crate::recurrence::tridiagonal::complex_symmetric_ql;
use crate::scalar::Scalar;

/// Sweep budget per unit of dimension.
const SWEEPS_PER_DIMENSION: usize = 30;

fn l1<T: Scalar>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

/// Diagonal similarity scaling by powers of two that evens out row and
/// column norms.
fn balance<T: Scalar>(a: &mut CMatrix<T>) {
    let n = a.dim();
    let radix = T::lit(2.0);
    let radix_sq = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let (mut c, mut r) = (T::zero(), T::zero());
            for j in 0..n {
                if j != i {
                    c = c + l1(a[(j, i)]);
                    r = r + l1(a[(i, j)]);
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f = f * radix;
                c = c * radix_sq;
            }
            g = r * radix;
            while c > g {
                f = f / radix;
                c = c / radix_sq;
            }
            if (c + r) / f < T::lit(0.95) * s {
                done = false;
                let inv = T::one() / f;
                for j in 0..n {
                    a[(i, j)] = a[(i, j)] * inv;
                }
                for j in 0..n {
                    a[(j, i)] = a[(j, i)] * f;
                }
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
fn hessenberg<T: Scalar>(a: &mut CMatrix<T>) {
    let n = a.dim();
    let zero = Complex::from(T::zero());
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == T::zero() { Complex::from(T::one()) } else { x0 / x0.norm() };
        let alpha = -phase * norm;
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] = v[0] - alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if vnorm == T::zero() {
            continue;
        }
        for z in v.iter_mut() {
            *z = *z / vnorm;
        }
        let two = T::lit(2.0);
        // A ← (I − 2vv*) A
        for j in k..n {
            let dot = v.iter().enumerate().fold(zero, |acc, (p, z)| acc + z.conj() * a[(k + 1 + p, j)]);
            for (p, z) in v.iter().enumerate() {
                a[(k + 1 + p, j)] = a[(k + 1 + p, j)] - *z * dot * two;
            }
        }
        // A ← A (I − 2vv*)
        for i in 0..n {
            let dot = v.iter().enumerate().fold(zero, |acc, (p, z)| acc + a[(i, k + 1 + p)] * z);
            for (p, z) in v.iter().enumerate() {
                a[(i, k + 1 + p)] = a[(i, k + 1 + p)] - dot * z.conj() * two;
            }
        }
        for i in k + 2..n {
            a[(i, k)] = zero;
        }
    }
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift<T: Scalar>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let mean = (a + d) * half;
    let delta = (a - d) * half;
    let disc = (delta * delta + b * c).sqrt();
    let (l1, l2) = (mean + disc, mean - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Single-shift QR on an upper Hessenberg matrix; returns its eigenvalues.
fn hessenberg_qr<T: Scalar>(h: &mut CMatrix<T>) -> Result<Vec<Complex<T>>> {
    let n = h.dim();
    let zero = Complex::from(T::zero());
    let eps = T::epsilon();
    let budget = SWEEPS_PER_DIMENSION * n.max(1);
    let scale = h.frobenius_norm().max(T::min_positive_value());
    let mut eig = vec![zero; n];
    let mut total = 0;
    let mut its = 0;
    let mut hi = n;
    while hi > 0 {
        let ihi = hi - 1;
        let mut l = ihi;
        while l > 0 {
            let mut local = l1(h[(l - 1, l - 1)]) + l1(h[(l, l)]);
            if local == T::zero() {
                local = scale;
            }
            if l1(h[(l, l - 1)]) <= eps * local {
                h[(l, l - 1)] = zero;
                break;
            }
            l -= 1;
        }
        if l == ihi {
            eig[ihi] = h[(ihi, ihi)];
            hi -= 1;
            its = 0;
            continue;
        }
        total += 1;
        its += 1;
        if total > budget {
            return Err(Error::NoConvergence(budget));
        }
        let shift = if its % 10 == 0 {
            h[(ihi, ihi)] + Complex::from(T::lit(0.75) * h[(ihi, ihi - 1)].norm())
        } else {
            wilkinson_shift(h[(ihi - 1, ihi - 1)], h[(ihi - 1, ihi)], h[(ihi, ihi - 1)], h[(ihi, ihi)])
        };
        for k in l..ihi {
            let (x, y) = if k == l { (h[(l, l)] - shift, h[(l + 1, l)]) } else { (h[(k, k - 1)], h[(k + 1, k - 1)]) };
            let norm = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (c, s) = if norm == T::zero() {
                (T::one(), zero)
            } else if x.norm() == T::zero() {
                (T::zero(), y.conj() / y.norm())
            } else {
                (x.norm() / norm, (x / x.norm()) * y.conj() / norm)
            };
            let start = if k == l { l } else { k - 1 };
            for j in start..=ihi {
                let (h1, h2) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = h1 * c + s * h2;
                h[(k + 1, j)] = -s.conj() * h1 + h2 * c;
            }
            if k > l {
                h[(k + 1, k - 1)] = zero;
            }
            for i in l..=(k + 2).min(ihi) {
                let (h1, h2) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = h1 * c + h2 * s.conj();
                h[(i, k + 1)] = -h1 * s + h2 * c;
            }
        }
    }
    Ok(eig)
}

/// All eigenvalues of a square complex matrix.
pub fn eigenvalues_dense<T: Scalar>(matrix: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    if !matrix.is_finite() {
        return Err(Error::invalid("matrix entries must be finite"));
    }
    let mut a = matrix.clone();
    balance(&mut a);
    hessenberg(&mut a);
    hessenberg_qr(&mut a)
}

/// All eigenvalues of a real symmetric matrix (row-major, `dim × dim`),
/// ascending.
pub fn symmetric_eigenvalues<T: Scalar>(a: &[T], dim: usize) -> Result<Vec<T>> {
    if a.len() != dim * dim {
        return Err(Error::invalid("matrix data does not match its dimension"));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("matrix entries must be finite"));
    }
    let (diag, off) = tridiagonalize(a.to_vec(), dim);
    let d: Vec<Complex<T>> = diag.into_iter().map(Complex::from).collect();
    let e: Vec<Complex<T>> = off.into_iter().map(Complex::from).collect();
    let mut values: Vec<T> = complex_symmetric_ql(&d, &e)
        .ok_or(Error::NoConvergence(SWEEPS_PER_DIMENSION * dim))?
        .into_iter()
        .map(|z| z.re)
        .collect();
    values.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(values)
}

/// Householder reduction of a real symmetric matrix to tridiagonal form.
fn tridiagonalize<T: Scalar>(mut a: Vec<T>, n: usize) -> (Vec<T>, Vec<T>) {
    let mut off = vec![T::zero(); n.saturating_sub(1)];
    let two = T::lit(2.0);
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let norm = (k + 1..n).map(|i| a[i * n + k] * a[i * n + k]).sum::<T>().sqrt();
        if norm == T::zero() {
            off[k] = T::zero();
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = if x0 >= T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k + 1..n).map(|i| a[i * n + k]).collect();
        v[0] = v[0] - alpha;
        let vnorm = v.iter().map(|x| *x * *x).sum::<T>().sqrt();
        off[k] = alpha;
        if vnorm == T::zero() {
            continue;
        }
        for x in v.iter_mut() {
            *x = *x / vnorm;
        }
        // p = A₂₂ v, q = p − (vᵀp) v, A₂₂ ← A₂₂ − 2(v qᵀ + q vᵀ)
        let mut p = vec![T::zero(); m];
        for (r, pr) in p.iter_mut().enumerate() {
            let row = &a[(k + 1 + r) * n + k + 1..(k + 2 + r) * n];
            *pr = row.iter().zip(&v).map(|(x, y)| *x * *y).sum();
        }
        let vp: T = v.iter().zip(&p).map(|(x, y)| *x * *y).sum();
        let q: Vec<T> = p.iter().zip(&v).map(|(pi, vi)| *pi - vp * *vi).collect();
        for r in 0..m {
            let row = (k + 1 + r) * n + k + 1;
            for c in 0..m {
                a[row + c] = a[row + c] - two * (v[r] * q[c] + q[r] * v[c]);
            }
        }
        for i in k + 1..n {
            a[i * n + k] = T::zero();
            a[k * n + i] = T::zero();
        }
    }
    if n >= 2 {
        off[n - 2] = a[(n - 1) * n + n - 2];
    }
    let diag = (0..n).map(|i| a[i * n + i]).collect();
    (diag, off)
}

/// Eigenvector for an eigenvalue estimate by inverse iteration, normalised
/// to unit Euclidean norm.
pub fn inverse_iteration<T: Scalar>(matrix: &CMatrix<T>, lambda: Complex<T>) -> Result<Vec<Complex<T>>> {
    let n = matrix.dim();
    let zero = Complex::from(T::zero());
    let mut a = matrix.clone();
    let nudge = matrix.frobenius_norm().max(T::one()) * T::epsilon() * T::lit(16.0);
    for i in 0..n {
        a[(i, i)] = a[(i, i)] - lambda - Complex::from(nudge);
    }
    // LU with partial pivoting
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[(x, k)].norm().partial_cmp(&a[(y, k)].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(k);
        if p != k {
            for j in 0..n {
                let t = a[(k, j)];
                a[(k, j)] = a[(p, j)];
                a[(p, j)] = t;
            }
            perm.swap(k, p);
        }
        if a[(k, k)].norm() == T::zero() {
            a[(k, k)] = Complex::from(nudge);
        }
        for i in k + 1..n {
            let f = a[(i, k)] / a[(k, k)];
            a[(i, k)] = f;
            for j in k + 1..n {
                let v = a[(k, j)];
                a[(i, j)] = a[(i, j)] - f * v;
            }
        }
    }
    let mut x = vec![Complex::from(T::one()); n];
    for _ in 0..3 {
        let mut y: Vec<Complex<T>> = perm.iter().map(|&p| x[p]).collect();
        for i in 0..n {
            let s = (0..i).fold(zero, |acc, j| acc + a[(i, j)] * y[j]);
            y[i] = y[i] - s;
        }
        for i in (0..n).rev() {
            let s = (i + 1..n).fold(zero, |acc, j| acc + a[(i, j)] * y[j]);
            y[i] = (y[i] - s) / a[(i, i)];
        }
        let norm = y.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if !(norm.is_finite() && norm > T::zero()) {
            return Err(Error::NoConvergence(3));
        }
        x = y.into_iter().map(|z| z / norm).collect();
    }
    Ok(x)
}
