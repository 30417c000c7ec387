use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{Frequencies, LevelSpec};
use crate::error::Error;
use crate::scalar::Scalar;

/// Proximity (relative to `1 + |g_bp|`) at which a coupling counts as sitting on a branch point.
pub const BRANCH_POINT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchPointId {
    #[serde(rename = "real+")]
    RealPlus,
    #[serde(rename = "real-")]
    RealMinus,
    #[serde(rename = "imag+")]
    ImagPlus,
    #[serde(rename = "imag-")]
    ImagMinus,
    #[serde(rename = "origin")]
    Origin,
}

impl fmt::Display for BranchPointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchPointId::RealPlus => "real+",
            BranchPointId::RealMinus => "real-",
            BranchPointId::ImagPlus => "imag+",
            BranchPointId::ImagMinus => "imag-",
            BranchPointId::Origin => "origin",
        })
    }
}

impl FromStr for BranchPointId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "real+" => Ok(BranchPointId::RealPlus),
            "real-" => Ok(BranchPointId::RealMinus),
            "imag+" => Ok(BranchPointId::ImagPlus),
            "imag-" => Ok(BranchPointId::ImagMinus),
            "origin" => Ok(BranchPointId::Origin),
            _ => Err(Error::invalid(format!(
                "unknown branch point {s:?} (expected real+, real-, imag+, imag- or origin)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchKind {
    RealAxis,
    ImaginaryAxis,
    /// The two imaginary-axis points merged at `g = 0` (equal frequencies).
    DiabolicCandidate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint<T> {
    pub id: BranchPointId,
    pub g: Complex<T>,
    pub kind: BranchKind,
    /// Number of sheet pairs (of distinct values) joined at this point.
    pub multiplicity: u32,
}

/// Branch points of the ground-state surface: `±2νω` and `±i(ν² − ω²)`.
pub fn branch_points<T: Scalar>(freqs: &Frequencies<T>) -> Vec<BranchPoint<T>> {
    branch_points_for(freqs, LevelSpec::ground())
}

/// Branch points with multiplicities for the surface of `level`.
///
/// Positions do not depend on the level. On octet surfaces (`m ≥ 1`) four
/// sheet pairs meet at every point; on quartet surfaces two meet at each
/// real-axis point and one at each imaginary-axis point.
pub fn branch_points_for<T: Scalar>(freqs: &Frequencies<T>, level: LevelSpec) -> Vec<BranchPoint<T>> {
    let (real_mult, imag_mult) = if level.is_quartet() { (2, 1) } else { (4, 4) };
    let real = freqs.real_threshold();
    let zero = T::zero();
    let mut points = vec![
        BranchPoint {
            id: BranchPointId::RealPlus,
            g: Complex::new(real, zero),
            kind: BranchKind::RealAxis,
            multiplicity: real_mult,
        },
        BranchPoint {
            id: BranchPointId::RealMinus,
            g: Complex::new(-real, zero),
            kind: BranchKind::RealAxis,
            multiplicity: real_mult,
        },
    ];
    if freqs.is_equal() {
        points.push(BranchPoint {
            id: BranchPointId::Origin,
            g: Complex::new(zero, zero),
            kind: BranchKind::DiabolicCandidate,
            multiplicity: 2 * imag_mult,
        });
    } else {
        let imag = freqs.imaginary_threshold();
        points.push(BranchPoint {
            id: BranchPointId::ImagPlus,
            g: Complex::new(zero, imag),
            kind: BranchKind::ImaginaryAxis,
            multiplicity: imag_mult,
        });
        points.push(BranchPoint {
            id: BranchPointId::ImagMinus,
            g: Complex::new(zero, -imag),
            kind: BranchKind::ImaginaryAxis,
            multiplicity: imag_mult,
        });
    }
    points
}

/// The branch point within `1e-8·(1 + |g_bp|)` of `g`, if any.
pub fn near_branch_point<T: Scalar>(freqs: &Frequencies<T>, g: Complex<T>) -> Option<BranchPoint<T>> {
    let tol = T::lit(BRANCH_POINT_TOLERANCE);
    branch_points(freqs).into_iter().find(|bp| (g - bp.g).norm() <= tol * (T::one() + bp.g.norm()))
}
