//! The single oscillator `p² + ν²z²` continued over complex `ν`, its
//! δ-modified companion with energies `±√(ν² + δ²)`, and the equivalent 2×2
//! matrix model `[[δ, ν], [ν, −δ]]`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Advisory, Error, Flagged, Result};
use crate::scalar::{principal_sqrt, Scalar};
use crate::spectral::{Axis, Sign};

/// Distance to `±iδ`, relative to `1 + δ`, below which `at-exceptional-point` is raised.
pub const EXCEPTIONAL_POINT_TOLERANCE: f64 = 1e-8;

/// Ground energy `±√(ν²)` of the plain oscillator, taken as `±√ν·√ν` so the
/// two sheets are the entire functions `±ν` crossing at `ν = 0`; flags the
/// free-particle limit there.
pub fn ho_energy<T: Scalar>(nu: Complex<T>, sheet: Sign) -> Flagged<Complex<T>> {
    let root = principal_sqrt(nu);
    let value = root * root * sheet.value::<T>();
    if nu.norm() == T::zero() {
        Flagged::with(value, vec![Advisory::FreeParticleLimit])
    } else {
        Flagged::clean(value)
    }
}

/// Oscillator with gap parameter `δ ≥ 0` at complex frequency `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModifiedOscillator<T> {
    delta: T,
    nu: Complex<T>,
}

impl<T: Scalar> ModifiedOscillator<T> {
    pub fn new(delta: T, nu: Complex<T>) -> Result<Self> {
        if !(delta >= T::zero() && delta.is_finite()) {
            return Err(Error::invalid("delta must be finite and non-negative"));
        }
        if !(nu.re.is_finite() && nu.im.is_finite()) {
            return Err(Error::invalid("frequency must be finite"));
        }
        Ok(ModifiedOscillator { delta, nu })
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    pub fn nu(&self) -> Complex<T> {
        self.nu
    }
}

/// `±√(ν − iδ)·√(ν + iδ)`: branch points exactly at `ν = ±iδ`.
pub fn modified_energy<T: Scalar>(osc: &ModifiedOscillator<T>, sheet: Sign) -> Complex<T> {
    let shift = Complex::new(T::zero(), osc.delta);
    principal_sqrt(osc.nu - shift) * principal_sqrt(osc.nu + shift) * sheet.value::<T>()
}

/// Eigenvalues, eigenvectors and their overlap for the matrix model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixModelEigensystem<T> {
    /// `(E₊, E₋)`, equal to [`modified_energy`] on the `+` and `−` sheets.
    pub eigenvalues: [Complex<T>; 2],
    /// Column eigenvectors in the order of `eigenvalues`, second component 1
    /// (except at `ν = 0`).
    pub eigenvectors: [[Complex<T>; 2]; 2],
    /// `|⟨v₊, v₋⟩| / (‖v₊‖‖v₋‖)`: 0 for orthogonal eigenvectors, 1 when they coalesce.
    pub coalescence_measure: T,
}

impl<T: Scalar> MatrixModelEigensystem<T> {
    /// `det[v₊ v₋]`.
    pub fn determinant(&self) -> Complex<T> {
        let [a, b] = self.eigenvectors;
        a[0] * b[1] - b[0] * a[1]
    }
}

fn overlap<T: Scalar>(a: &[Complex<T>; 2], b: &[Complex<T>; 2]) -> T {
    let inner = a[0].conj() * b[0] + a[1].conj() * b[1];
    let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
    let nb = (b[0].norm_sqr() + b[1].norm_sqr()).sqrt();
    (inner.norm() / (na * nb)).min(T::one())
}

/// Eigensystem of `[[δ, ν], [ν, −δ]]`.
pub fn matrix_model<T: Scalar>(nu: Complex<T>, delta: T) -> Result<Flagged<MatrixModelEigensystem<T>>> {
    let osc = ModifiedOscillator::new(delta, nu)?;
    let eigenvalues = [modified_energy(&osc, Sign::Plus), modified_energy(&osc, Sign::Minus)];
    let one = Complex::from(T::one());
    let zero = Complex::from(T::zero());
    let eigenvectors = if nu.norm() == T::zero() {
        // diagonal matrix: E₊ = δ on the first axis
        [[one, zero], [zero, one]]
    } else {
        eigenvalues.map(|e| [(e + delta) / nu, one])
    };
    let mut advisories = Vec::new();
    let tol = T::lit(EXCEPTIONAL_POINT_TOLERANCE) * (T::one() + delta);
    let ep = Complex::new(T::zero(), delta);
    if delta > T::zero() && ((nu - ep).norm() <= tol || (nu + ep).norm() <= tol) {
        advisories.push(Advisory::AtExceptionalPoint);
    }
    let coalescence_measure = overlap(&eigenvectors[0], &eigenvectors[1]);
    Ok(Flagged::with(MatrixModelEigensystem { eigenvalues, eigenvectors, coalescence_measure }, advisories))
}

/// Handedness of an exceptional point from its coalesced eigenvector `(∓i, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    /// First component `−i` (the point `+iδ`).
    Left,
    /// First component `+i` (the point `−iδ`).
    Right,
    /// `δ = 0`: both points merged into a diabolic point.
    Diabolic,
}

/// Chirality of the exceptional point `point·iδ`.
pub fn chirality<T: Scalar>(point: Sign, delta: T) -> Result<Chirality> {
    if !(delta >= T::zero() && delta.is_finite()) {
        return Err(Error::invalid("delta must be finite and non-negative"));
    }
    if delta <= T::epsilon() {
        return Ok(Chirality::Diabolic);
    }
    // at ν = ±iδ both eigenvalues vanish and v = (δ/ν, 1)
    let nu = Complex::new(T::zero(), delta * point.value::<T>());
    let first = Complex::from(delta) / nu;
    Ok(if first.im < T::zero() { Chirality::Left } else { Chirality::Right })
}

/// `t` on the imaginary axis `ν = it` where the energies change from real to
/// imaginary, by bisection on `[0, 2δ]`.
pub fn bubble_boundary<T: Scalar>(delta: T) -> Result<T> {
    if !(delta > T::zero() && delta.is_finite()) {
        return Err(Error::invalid("delta must be positive"));
    }
    let is_real = |t: T| {
        let osc = ModifiedOscillator { delta, nu: Complex::new(T::zero(), t) };
        let e = modified_energy(&osc, Sign::Plus);
        e.im.abs() <= e.re.abs()
    };
    let (mut lo, mut hi) = (T::zero(), delta * T::lit(2.0));
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if is_real(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

/// One sample of an axis scan of both sheets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSample<T> {
    pub t: T,
    pub nu: Complex<T>,
    /// `(+, −)` sheets.
    pub energies: [Complex<T>; 2],
}

/// Both sheets of the δ-modified oscillator (`δ = 0`: the plain oscillator)
/// at `samples` evenly spaced points `t ∈ [−extent, extent]` along `axis`.
pub fn axis_scan<T: Scalar>(axis: Axis, delta: T, extent: T, samples: usize) -> Result<Vec<ScanSample<T>>> {
    if samples < 2 {
        return Err(Error::invalid("a scan needs at least two samples"));
    }
    if !(extent > T::zero() && extent.is_finite()) {
        return Err(Error::invalid("scan extent must be positive"));
    }
    (0..samples)
        .map(|i| {
            let t = -extent + extent * T::lit(2.0) * T::count(i) / T::count(samples - 1);
            let nu = axis.point(t);
            let osc = ModifiedOscillator::new(delta, nu)?;
            Ok(ScanSample { t, nu, energies: [modified_energy(&osc, Sign::Plus), modified_energy(&osc, Sign::Minus)] })
        })
        .collect()
}
