use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Scalar};

/// Default number of samples per path segment.
pub const DEFAULT_SAMPLES_PER_SEGMENT: usize = 256;
/// Largest gap tolerated between consecutive segments, and between the ends of a loop.
pub const CONTINUITY_TOLERANCE: f64 = 1e-12;

/// One piece of a path in the complex `g` plane. Arcs run from `from_angle`
/// to `to_angle`; the sign of the difference fixes the orientation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Segment<T> {
    Line { from: Complex<T>, to: Complex<T> },
    Arc { center: Complex<T>, radius: T, from_angle: T, to_angle: T },
}

impl<T: Scalar> Segment<T> {
    /// Point at parameter `t ∈ [0, 1]`.
    pub fn point(&self, t: T) -> Complex<T> {
        match *self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::Arc { center, radius, from_angle, to_angle } => {
                center + Complex::from_polar(radius, from_angle + (to_angle - from_angle) * t)
            }
        }
    }

    pub fn start(&self) -> Complex<T> {
        self.point(T::zero())
    }

    pub fn end(&self) -> Complex<T> {
        self.point(T::one())
    }

    pub fn reversed(&self) -> Self {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc { center, radius, from_angle, to_angle } => {
                Segment::Arc { center, radius, from_angle: to_angle, to_angle: from_angle }
            }
        }
    }

    /// Smallest distance from `p` to the segment.
    pub fn distance_to(&self, p: Complex<T>) -> T {
        match *self {
            Segment::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                let t = if len2 == T::zero() { T::zero() } else { ((p - from) * d.conj()).re / len2 };
                (p - (from + d * t.max(T::zero()).min(T::one()))).norm()
            }
            Segment::Arc { center, radius, from_angle, to_angle } => {
                let rel = p - center;
                let endpoints = (p - self.start()).norm().min((p - self.end()).norm());
                if rel.norm() == T::zero() {
                    return radius;
                }
                let (lo, hi) = if from_angle <= to_angle { (from_angle, to_angle) } else { (to_angle, from_angle) };
                let tau = T::TAU();
                // angle of p shifted into [lo, lo + 2π)
                let mut a = rel.arg();
                a = a - ((a - lo) / tau).floor() * tau;
                if a <= hi || hi - lo >= tau {
                    (rel.norm() - radius).abs()
                } else {
                    endpoints
                }
            }
        }
    }

    fn is_valid(&self) -> bool {
        match *self {
            Segment::Line { from, to } => is_finite(from) && is_finite(to),
            Segment::Arc { center, radius, from_angle, to_angle } => {
                is_finite(center)
                    && radius.is_finite()
                    && radius > T::zero()
                    && from_angle.is_finite()
                    && to_angle.is_finite()
            }
        }
    }
}

/// A piecewise path of lines and arcs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec<T> {
    pub segments: Vec<Segment<T>>,
    #[serde(default = "default_samples")]
    pub samples_per_segment: usize,
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES_PER_SEGMENT
}

impl<T: Scalar> PathSpec<T> {
    /// Validated path.
    pub fn new(segments: Vec<Segment<T>>, samples_per_segment: usize) -> Result<Self> {
        let path = PathSpec { segments, samples_per_segment };
        path.validate()?;
        Ok(path)
    }

    pub fn line(from: Complex<T>, to: Complex<T>, samples_per_segment: usize) -> Result<Self> {
        Self::new(vec![Segment::Line { from, to }], samples_per_segment)
    }

    /// Circle around `center`, starting at angle `start_angle`, traversed
    /// `turns` times (negative for clockwise).
    pub fn circle(
        center: Complex<T>,
        radius: T,
        start_angle: T,
        turns: i32,
        samples_per_segment: usize,
    ) -> Result<Self> {
        if turns == 0 {
            return Err(Error::invalid("a circle needs at least one turn"));
        }
        let step = if turns > 0 { T::TAU() } else { -T::TAU() };
        let segments = (0..turns.unsigned_abs())
            .map(|k| {
                let a0 = start_angle + step * T::count(k as usize);
                Segment::Arc { center, radius, from_angle: a0, to_angle: a0 + step }
            })
            .collect();
        Self::new(segments, samples_per_segment)
    }

    /// Checks finiteness, positive radii and end-to-start continuity.
    pub fn validate(&self) -> Result<()> {
        if self.segments.is_empty() {
            return Err(Error::invalid("path has no segments"));
        }
        if self.samples_per_segment == 0 {
            return Err(Error::invalid("samples_per_segment must be positive"));
        }
        if let Some(i) = self.segments.iter().position(|s| !s.is_valid()) {
            return Err(Error::invalid(format!("segment {i} is not finite or has a non-positive radius")));
        }
        let tol = T::lit(CONTINUITY_TOLERANCE);
        for (i, pair) in self.segments.windows(2).enumerate() {
            let gap = (pair[0].end() - pair[1].start()).norm();
            if gap > tol * (T::one() + pair[1].start().norm()) {
                return Err(Error::invalid(format!("segments {i} and {} are {gap} apart", i + 1)));
            }
        }
        Ok(())
    }

    pub fn start(&self) -> Complex<T> {
        self.segments[0].start()
    }

    pub fn end(&self) -> Complex<T> {
        self.segments[self.segments.len() - 1].end()
    }

    /// Gap between the end and the start.
    pub fn closure_gap(&self) -> T {
        (self.end() - self.start()).norm()
    }

    pub fn is_closed(&self) -> bool {
        self.closure_gap() <= T::lit(CONTINUITY_TOLERANCE) * (T::one() + self.start().norm())
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> Self {
        PathSpec {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            samples_per_segment: self.samples_per_segment,
        }
    }

    /// This path followed by `other`.
    pub fn then(&self, other: &PathSpec<T>) -> Result<Self> {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().copied());
        Self::new(segments, self.samples_per_segment.max(other.samples_per_segment))
    }

    /// Smallest distance from `p` to any segment.
    pub fn distance_to(&self, p: Complex<T>) -> T {
        self.segments.iter().map(|s| s.distance_to(p)).fold(T::infinity(), T::min)
    }
}
