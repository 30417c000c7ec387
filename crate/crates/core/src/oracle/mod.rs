//! Independent check of the closed forms: the Hamiltonian in a truncated
//! harmonic-oscillator product basis, diagonalised numerically.

mod eigen;
mod matrix;
mod truncated;
mod validate;

pub use eigen::{eigenvalues_dense, inverse_iteration, symmetric_eigenvalues};
pub use matrix::CMatrix;
pub use truncated::{build_truncated, TruncatedHamiltonian};
pub use validate::{
    conventional_levels, greedy_match, validate_closed_forms, MatchedLevel, SweepEntry, ValidationPoint,
    ValidationReport, REPORT_SCHEMA_VERSION, TRUNCATION_TOLERANCE,
};

#[cfg(test)]
mod tests;
