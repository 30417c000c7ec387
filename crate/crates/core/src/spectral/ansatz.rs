use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{energy, near_branch_point, Frequencies, LevelSpec, SheetLabel};
use crate::error::{Advisory, Error, Flagged, Result};
use crate::scalar::{is_finite, principal_sqrt, Scalar};
use crate::spectral::types::DEGENERACY_TOLERANCE;

/// Exponent parameters of the Gaussian factor `exp(−αx²/2 − βy²/2 + γxy)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParameters<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub gamma: Complex<T>,
}

impl<T: Scalar> AnsatzParameters<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>, gamma: Complex<T>) -> Self {
        AnsatzParameters { alpha, beta, gamma }
    }

    pub fn real(alpha: T, beta: T, gamma: T) -> Self {
        Self::new(alpha.into(), beta.into(), gamma.into())
    }

    /// `α + β`, the ground-state energy these parameters describe.
    pub fn ground_energy(&self) -> Complex<T> {
        self.alpha + self.beta
    }

    /// `√((α − β)² + 4γ²)`, the splitting radical of the excited levels.
    pub fn splitting(&self) -> Complex<T> {
        let d = self.alpha - self.beta;
        principal_sqrt(d * d + self.gamma * self.gamma * T::lit(4.0))
    }

    /// Residuals of `g = −2(α+β)γ`, `ν² = α²+γ²`, `ω² = β²+γ²`, each divided by
    /// the magnitude of its largest term.
    pub fn residuals(&self, freqs: &Frequencies<T>, g: Complex<T>) -> [T; 3] {
        let (a, b, c) = (self.alpha, self.beta, self.gamma);
        let two = T::lit(2.0);
        let nu2 = Complex::from(freqs.nu() * freqs.nu());
        let om2 = Complex::from(freqs.omega() * freqs.omega());
        let rel = |r: Complex<T>, scale: T| r.norm() / scale.max(T::min_positive_value());
        let coupling = (a + b) * c * two;
        [
            rel(g + coupling, g.norm().max(coupling.norm())),
            rel(a * a + c * c - nu2, (a * a).norm().max((c * c).norm()).max(nu2.norm())),
            rel(b * b + c * c - om2, (b * b).norm().max((c * c).norm()).max(om2.norm())),
        ]
    }
}

/// Recovers `(α, β, γ)` from the ground energy on `sheet` at coupling `g`.
///
/// Refuses when the ground energy vanishes (equal frequencies, `g = 0`,
/// mixed phases), where `γ` is left undetermined.
pub fn ansatz_parameters<T: Scalar>(
    freqs: &Frequencies<T>,
    g: Complex<T>,
    sheet: SheetLabel,
) -> Result<AnsatzParameters<T>> {
    if !is_finite(g) {
        return Err(Error::invalid("coupling must be finite"));
    }
    let e0 = energy(freqs, LevelSpec::ground(), sheet, g);
    let scale = freqs.nu().max(freqs.omega());
    if e0.norm() < T::lit(DEGENERACY_TOLERANCE) * scale {
        return Err(Error::DegenerateGroundEnergy);
    }
    let half = T::lit(0.5);
    let detuning = Complex::from(freqs.nu() * freqs.nu() - freqs.omega() * freqs.omega()) / e0;
    Ok(AnsatzParameters { alpha: (e0 + detuning) * half, beta: (e0 - detuning) * half, gamma: -g / (e0 * T::lit(2.0)) })
}

/// Frequencies of the decoupled normal modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveFrequencies<T> {
    pub plus: Complex<T>,
    pub minus: Complex<T>,
}

/// `Ω± = √(((ν²+ω²) ± √(g² + (ν²−ω²)²)) / 2)`.
///
/// Raises `transformation-invalid` at the branch points, including the
/// coalesced point `g = 0` at equal frequencies.
pub fn effective_frequencies<T: Scalar>(
    freqs: &Frequencies<T>,
    g: Complex<T>,
) -> Result<Flagged<EffectiveFrequencies<T>>> {
    if !is_finite(g) {
        return Err(Error::invalid("coupling must be finite"));
    }
    let (nu2, om2) = (freqs.nu() * freqs.nu(), freqs.omega() * freqs.omega());
    let half = T::lit(0.5);
    let inner = principal_sqrt(g * g + Complex::from((nu2 - om2) * (nu2 - om2)));
    let sum = Complex::from(nu2 + om2);
    let value = EffectiveFrequencies {
        plus: principal_sqrt((sum + inner) * half),
        minus: principal_sqrt((sum - inner) * half),
    };
    let mut advisories = Vec::new();
    if near_branch_point(freqs, g).is_some() {
        advisories.push(Advisory::TransformationInvalid);
    }
    Ok(Flagged::with(value, advisories))
}
