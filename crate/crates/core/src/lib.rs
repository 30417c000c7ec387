//! Eigenvalue surfaces of two linearly coupled harmonic oscillators,
//! `H = p² + ν²x² + q² + ω²y² + g·xy`, continued over the complex coupling
//! plane.
//!
//! * [`spectral`]: closed-form energies on the eight sheets, branch points,
//!   decoupled limits and ansatz parameters.
//! * [`recurrence`]: the coefficient system of the polynomial-times-Gaussian
//!   eigenfunctions and its tridiagonal top subsystem.
//! * [`continuation`]: sheet tracking along paths and monodromy.
//! * [`oracle`]: truncated harmonic-basis diagonalization used to validate the
//!   closed forms.
//! * [`single`]: the single complex oscillator and its δ-modified companion.
//! * [`export`]: surface meshes and the file formats used by the CLI.
//!
//! Everything numerical is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below fix the common double precision case.

// `!(x < y)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod continuation;
pub mod error;
pub mod export;
pub mod oracle;
pub mod recurrence;
pub mod scalar;
pub mod single;
pub mod spectral;

pub use error::{Advisory, Error, Flagged, Result};
pub use num_complex::Complex;
pub use scalar::{principal_sqrt, Scalar};
pub use spectral::{Frequencies, LevelSpec, SheetLabel, Sign};

pub type Complex64 = Complex<f64>;
pub type Complex32 = Complex<f32>;

pub type Frequencies64 = spectral::Frequencies<f64>;
pub type Frequencies32 = spectral::Frequencies<f32>;
pub type AnsatzParameters64 = spectral::AnsatzParameters<f64>;
pub type AnsatzParameters32 = spectral::AnsatzParameters<f32>;
pub type CoefficientTable64 = recurrence::CoefficientTable<f64>;
pub type PathSpec64 = continuation::PathSpec<f64>;
pub type ContinuationTrace64 = continuation::ContinuationTrace<f64>;
pub type SurfaceMesh64 = export::SurfaceMesh<f64>;
pub type TruncatedHamiltonian64 = oracle::TruncatedHamiltonian<f64>;
