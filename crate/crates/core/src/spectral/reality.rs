use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{energy, Frequencies, LevelSpec, SheetLabel};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Relative imaginary part below which an energy counts as real.
pub const REALITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Real,
    Imaginary,
}

impl Axis {
    /// Coupling at axis coordinate `t`.
    pub fn point<T: Scalar>(self, t: T) -> Complex<T> {
        match self {
            Axis::Real => Complex::new(t, T::zero()),
            Axis::Imaginary => Complex::new(T::zero(), t),
        }
    }
}

/// Symmetric scan `t ∈ [−extent, extent]` along one coupling axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisScan<T> {
    pub axis: Axis,
    pub extent: T,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealitySegment<T> {
    pub from: T,
    pub to: T,
    pub real: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealityReport<T> {
    pub axis: Axis,
    pub segments: Vec<RealitySegment<T>>,
}

impl<T: Scalar> RealityReport<T> {
    pub fn is_real_at(&self, t: T) -> Option<bool> {
        self.segments.iter().find(|s| s.from <= t && t <= s.to).map(|s| s.real)
    }

    /// Boundaries between real and complex segments.
    pub fn transitions(&self) -> Vec<T> {
        self.segments.windows(2).map(|w| w[0].to).collect()
    }

    pub fn all_real(&self) -> bool {
        self.segments.iter().all(|s| s.real)
    }
}

fn is_real<T: Scalar>(e: Complex<T>) -> bool {
    let tol = T::lit(REALITY_TOLERANCE).max(T::lit(64.0) * T::epsilon());
    e.im.abs() <= tol * e.norm().max(T::one())
}

/// Splits a coupling axis into segments where the energy on `sheet` is real
/// or complex. Segment boundaries are refined by bisection.
pub fn reality_classification<T: Scalar>(
    freqs: &Frequencies<T>,
    level: LevelSpec,
    sheet: SheetLabel,
    scan: AxisScan<T>,
) -> Result<RealityReport<T>> {
    if scan.samples < 2 || !(scan.extent > T::zero()) {
        return Err(Error::invalid("scan needs at least two samples and a positive extent"));
    }
    let class = |t: T| is_real(energy(freqs, level, sheet, scan.axis.point(t)));
    let step = (scan.extent + scan.extent) / T::count(scan.samples - 1);
    let coord = |k: usize| -scan.extent + step * T::count(k);

    let mut segments = Vec::new();
    let mut start = -scan.extent;
    let mut prev_t = start;
    let mut prev = class(prev_t);
    for k in 1..scan.samples {
        let t = if k == scan.samples - 1 { scan.extent } else { coord(k) };
        let current = class(t);
        if current != prev {
            let (mut lo, mut hi) = (prev_t, t);
            for _ in 0..200 {
                let mid = (lo + hi) * T::lit(0.5);
                if mid <= lo || mid >= hi {
                    break;
                }
                if class(mid) == prev {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            segments.push(RealitySegment { from: start, to: lo, real: prev });
            start = lo;
            prev = current;
        }
        prev_t = t;
    }
    segments.push(RealitySegment { from: start, to: scan.extent, real: prev });
    Ok(RealityReport { axis: scan.axis, segments })
}
