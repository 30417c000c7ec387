//! Closed-form energies of the coupled oscillator pair
//! `H = p² + ν²x² + q² + ω²y² + g·xy` over the complex coupling plane.
//!
//! For total excitation `n` and difference number `m` the energy is
//!
//! ```text
//! S  = √(4ν²ω² − g²)
//! R± = √(ν² + ω² ± S)
//! E  = sA·(n+1)·R_inner + sB·m·R_other
//! ```
//!
//! with `(R_inner, R_other) = (R+, R−)` on the `inner = +` family and
//! `(R−, R+)` on the `inner = −` family. Every radical uses
//! [`principal_sqrt`](crate::principal_sqrt); the three signs form a
//! [`SheetLabel`].

mod ansatz;
mod branch;
mod decoupled;
mod reality;
mod types;

pub use ansatz::{ansatz_parameters, effective_frequencies, AnsatzParameters, EffectiveFrequencies};
pub use branch::{branch_points, branch_points_for, near_branch_point, BranchKind, BranchPoint, BranchPointId};
pub use decoupled::{decoupled_spectrum, DecoupledGroup, DecoupledState, GroupKind};
pub use reality::{reality_classification, Axis, AxisScan, RealityReport, RealitySegment};
pub use types::{Frequencies, LevelSpec, SheetLabel, Sign};

use num_complex::Complex;

use crate::error::{Advisory, Error, Flagged, Result};
use crate::scalar::{is_finite, principal_sqrt, Scalar};

/// The three nested radicals shared by every sheet at one coupling value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radicals<T> {
    /// `√(4ν²ω² − g²)`
    pub s: Complex<T>,
    /// `√(ν² + ω² + S)`
    pub r_plus: Complex<T>,
    /// `√(ν² + ω² − S)`
    pub r_minus: Complex<T>,
}

impl<T: Scalar> Radicals<T> {
    pub fn at(freqs: &Frequencies<T>, g: Complex<T>) -> Self {
        let (nu, omega) = (freqs.nu(), freqs.omega());
        let four = T::lit(4.0);
        let sum_sq = Complex::from(nu * nu + omega * omega);
        let s = principal_sqrt(Complex::from(four * nu * nu * omega * omega) - g * g);
        Radicals { s, r_plus: principal_sqrt(sum_sq + s), r_minus: principal_sqrt(sum_sq - s) }
    }

    /// Energy on `sheet` for `level`, reusing the radicals.
    #[inline]
    pub fn energy(&self, level: LevelSpec, sheet: SheetLabel) -> Complex<T> {
        let (inner, other) = match sheet.inner {
            Sign::Plus => (self.r_plus, self.r_minus),
            Sign::Minus => (self.r_minus, self.r_plus),
        };
        let weight_inner = T::count(level.n as usize + 1) * sheet.outer.value::<T>();
        let weight_other = T::count(level.m as usize) * sheet.diff.value::<T>();
        inner * weight_inner + other * weight_other
    }
}

/// Energy `E_n(g)` on one sheet. Pure; no input validation.
pub fn energy<T: Scalar>(freqs: &Frequencies<T>, level: LevelSpec, sheet: SheetLabel, g: Complex<T>) -> Complex<T> {
    Radicals::at(freqs, g).energy(level, sheet)
}

/// Energy with input validation and the `at-branch-point` advisory.
pub fn energy_checked<T: Scalar>(
    freqs: &Frequencies<T>,
    level: LevelSpec,
    sheet: SheetLabel,
    g: Complex<T>,
) -> Result<Flagged<Complex<T>>> {
    if !is_finite(g) {
        return Err(Error::invalid("coupling must be finite"));
    }
    let value = energy(freqs, level, sheet, g);
    let mut advisories = Vec::new();
    if near_branch_point(freqs, g).is_some() {
        advisories.push(Advisory::AtBranchPoint);
    }
    Ok(Flagged::with(value, advisories))
}

/// Values of all eight sheets at `g`, indexed like [`SheetLabel::ALL`].
pub fn sheet_energies<T: Scalar>(freqs: &Frequencies<T>, level: LevelSpec, g: Complex<T>) -> [Complex<T>; 8] {
    let rad = Radicals::at(freqs, g);
    SheetLabel::ALL.map(|sheet| rad.energy(level, sheet))
}
