//! Eigenvalues of small complex tridiagonal matrices.

use num_complex::Complex;

use crate::scalar::{principal_sqrt, Scalar};

const QL_MAX_SWEEPS: usize = 60;
const ABERTH_MAX_ITERATIONS: usize = 800;

/// Implicit QL on a complex symmetric tridiagonal matrix (`diag`, `off[i]`
/// couples `i` and `i + 1`).
///
/// The rotations are complex orthogonal rather than unitary, so the
/// iteration can break down on isotropic vectors; `None` signals that.
pub(crate) fn complex_symmetric_ql<T: Scalar>(diag: &[Complex<T>], off: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.resize(n, Complex::from(T::zero()));
    let eps = T::epsilon();
    let one = Complex::from(T::one());
    let zero = Complex::from(T::zero());

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].norm() + d[m + 1].norm();
                if e[m].norm() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > QL_MAX_SWEEPS {
                return None;
            }
            let mut g = (d[l + 1] - d[l]) / (e[l] * T::lit(2.0));
            let mut r = principal_sqrt(g * g + one);
            let denom = if (g + r).norm() >= (g - r).norm() { g + r } else { g - r };
            g = d[m] - d[l] + e[l] / denom;
            let (mut s, mut c, mut p) = (one, one, zero);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = principal_sqrt(f * f + g * g);
                e[i + 1] = r;
                if r.norm() <= eps * (f.norm() + g.norm()) {
                    if f.norm() + g.norm() == T::zero() {
                        d[i + 1] = d[i + 1] - p;
                        e[m] = zero;
                        underflow = true;
                        break;
                    }
                    // isotropic rotation: complex orthogonal QL breaks down
                    return None;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + c * b * T::lit(2.0);
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = zero;
        }
    }
    if d.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(d)
    } else {
        None
    }
}

/// `det(E − T)` and its derivative for a tridiagonal matrix given as
/// diagonal plus products `couplings[k] = T[k][k+1]·T[k+1][k]`.
pub(crate) fn char_poly_eval<T: Scalar>(
    diag: &[Complex<T>],
    couplings: &[Complex<T>],
    e: Complex<T>,
) -> (Complex<T>, Complex<T>) {
    let zero = Complex::from(T::zero());
    let (mut p_prev, mut dp_prev) = (Complex::from(T::one()), zero);
    let (mut p, mut dp) = (e - diag[0], Complex::from(T::one()));
    for k in 1..diag.len() {
        let shift = e - diag[k];
        let p_next = shift * p - couplings[k - 1] * p_prev;
        let dp_next = p + shift * dp - couplings[k - 1] * dp_prev;
        p_prev = p;
        dp_prev = dp;
        p = p_next;
        dp = dp_next;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration on the determinant recurrence.
pub(crate) fn aberth_roots<T: Scalar>(diag: &[Complex<T>], couplings: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
    let n = diag.len();
    let centre = diag.iter().fold(Complex::from(T::zero()), |a, &b| a + b) / T::count(n);
    let radius = diag.iter().map(|d| (d - centre).norm()).fold(T::zero(), T::max)
        + couplings.iter().map(|c| T::lit(2.0) * c.norm().sqrt()).fold(T::zero(), T::max)
        + T::one();
    // staggered starting circle avoids symmetric stalls
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let angle = T::TAU() * (T::count(k) + T::lit(0.25)) / T::count(n) + T::lit(0.4);
            centre + Complex::from_polar(radius, angle)
        })
        .collect();
    let tol = T::lit(4.0) * T::epsilon();
    for _ in 0..ABERTH_MAX_ITERATIONS {
        let mut converged = true;
        for i in 0..n {
            let (p, dp) = char_poly_eval(diag, couplings, z[i]);
            if p.norm() == T::zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion =
                (0..n).filter(|&j| j != i).fold(Complex::from(T::zero()), |acc, j| acc + (z[i] - z[j]).inv());
            let step = ratio / (Complex::from(T::one()) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                return None;
            }
            z[i] = z[i] - step;
            if step.norm() > tol * (T::one() + z[i].norm()) {
                converged = false;
            }
        }
        if converged {
            return Some(z);
        }
    }
    None
}
