use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::PathSpec;
use crate::error::{Error, Result};
use crate::scalar::{principal_sqrt, Scalar};
use crate::spectral::{branch_points_for, Frequencies, LevelSpec, Radicals, SheetLabel};

/// Branch-point exclusion radius relative to `1 + |g_bp|`.
pub const EXCLUSION_RADIUS: f64 = 1e-6;
/// Maximum number of step halvings below one nominal sample.
pub const MAX_HALVINGS: u32 = 12;
/// The nearest candidate must be this many times closer than the runner-up.
const SEPARATION_RATIO: f64 = 10.0;
/// Candidates closer than this (relative) are one value.
const COINCIDENCE_TOLERANCE: f64 = 1e-12;

/// Which family of cuts a label change crossed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutKind {
    /// Cut of `√(4ν²ω² − g²)`, on the real axis beyond `±2νω`.
    RealAxis,
    /// Cut of `√(ν² + ω² ± S)`, on the imaginary axis beyond `±i|ν² − ω²|`.
    ImaginaryAxis,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutCrossing<T> {
    pub segment: usize,
    /// Segment parameter in `[0, 1]` of the step's far end.
    pub parameter: T,
    pub cut: CutKind,
    pub from: SheetLabel,
    pub to: SheetLabel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint<T> {
    pub g: Complex<T>,
    pub energy: Complex<T>,
    pub sheet: SheetLabel,
}

/// Result of following one eigenvalue along a path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuationTrace<T> {
    pub level: LevelSpec,
    pub start_sheet: SheetLabel,
    pub points: Vec<TracePoint<T>>,
    pub end_sheet: SheetLabel,
    pub cut_crossings: Vec<CutCrossing<T>>,
}

impl<T: Scalar> ContinuationTrace<T> {
    pub fn end_energy(&self) -> Complex<T> {
        self.points[self.points.len() - 1].energy
    }
}

/// Fails when the path passes within the exclusion radius of a branch point.
pub fn check_clearance<T: Scalar>(freqs: &Frequencies<T>, level: LevelSpec, path: &PathSpec<T>) -> Result<()> {
    for bp in branch_points_for(freqs, level) {
        let radius = T::lit(EXCLUSION_RADIUS) * (T::one() + bp.g.norm());
        if path.distance_to(bp.g) <= radius {
            return Err(Error::PathHitsBranchPoint {
                branch_point: bp.id.to_string(),
                radius: radius.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

struct Tracker<'a, T> {
    freqs: &'a Frequencies<T>,
    level: LevelSpec,
    g: Complex<T>,
    energy: Complex<T>,
    sheet: SheetLabel,
    /// Previous accepted point, for the linear predictor.
    previous: Option<(Complex<T>, Complex<T>)>,
}

enum Step<T> {
    Accepted(Complex<T>, SheetLabel),
    Ambiguous,
}

impl<T: Scalar> Tracker<'_, T> {
    fn predict(&self, g: Complex<T>) -> Complex<T> {
        match self.previous {
            Some((g0, e0)) if g0 != self.g => self.energy + (self.energy - e0) * ((g - self.g) / (self.g - g0)),
            _ => self.energy,
        }
    }

    /// Matches the candidates at `g` against the prediction.
    fn try_step(&self, g: Complex<T>) -> Step<T> {
        let rad = Radicals::at(self.freqs, g);
        let values = SheetLabel::ALL.map(|s| rad.energy(self.level, s));
        let target = self.predict(g);
        let scale = values.iter().map(|v| v.norm()).fold(T::one(), T::max);
        let same = T::lit(COINCIDENCE_TOLERANCE) * scale;
        let best = (0..8)
            .min_by(|&a, &b| {
                (values[a] - target)
                    .norm()
                    .partial_cmp(&(values[b] - target).norm())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("eight candidates");
        let d1 = (values[best] - target).norm();
        let class: Vec<usize> = (0..8).filter(|&i| (values[i] - values[best]).norm() <= same).collect();
        let d2 = (0..8).filter(|i| !class.contains(i)).map(|i| (values[i] - target).norm()).fold(T::infinity(), T::min);
        if !(d2 >= T::lit(SEPARATION_RATIO) * d1) {
            return Step::Ambiguous;
        }
        let labels: Vec<SheetLabel> = class.iter().map(|&i| SheetLabel::ALL[i]).collect();
        let sheet = if labels.contains(&self.sheet) {
            self.sheet
        } else {
            labels.iter().copied().find(|s| s.diff == self.sheet.diff).unwrap_or(labels[0])
        };
        Step::Accepted(values[best], sheet)
    }

    fn accept(&mut self, g: Complex<T>, energy: Complex<T>, sheet: SheetLabel) {
        self.previous = Some((self.g, self.energy));
        self.g = g;
        self.energy = energy;
        self.sheet = sheet;
    }
}

/// Whether the radicand moved across the negative real axis between `a` and `b`.
fn crosses_cut<T: Scalar>(a: Complex<T>, b: Complex<T>) -> bool {
    let sign_change = (a.im >= T::zero()) != (b.im >= T::zero());
    if !sign_change {
        return false;
    }
    let dim = b.im - a.im;
    let t = if dim == T::zero() { T::lit(0.5) } else { -a.im / dim };
    (a.re + (b.re - a.re) * t) < T::zero()
}

fn classify_cut<T: Scalar>(freqs: &Frequencies<T>, ga: Complex<T>, gb: Complex<T>) -> CutKind {
    let (nu, omega) = (freqs.nu(), freqs.omega());
    let s_rad = |g: Complex<T>| Complex::from(T::lit(4.0) * nu * nu * omega * omega) - g * g;
    if crosses_cut(s_rad(ga), s_rad(gb)) {
        return CutKind::RealAxis;
    }
    let sum = Complex::from(nu * nu + omega * omega);
    let (sa, sb) = (principal_sqrt(s_rad(ga)), principal_sqrt(s_rad(gb)));
    if crosses_cut(sum - sa, sum - sb) || crosses_cut(sum + sa, sum + sb) {
        return CutKind::ImaginaryAxis;
    }
    CutKind::Unknown
}

/// Follows the eigenvalue that starts on `start_sheet` along `path`.
///
/// At every sample the eight closed-form candidates are evaluated and the
/// one nearest a linear prediction is taken; steps are halved while the
/// runner-up is within a factor 10 of the nearest.
pub fn continue_along<T: Scalar>(
    freqs: &Frequencies<T>,
    level: LevelSpec,
    start_sheet: SheetLabel,
    path: &PathSpec<T>,
) -> Result<ContinuationTrace<T>> {
    path.validate()?;
    check_clearance(freqs, level, path)?;
    let g0 = path.start();
    let e0 = Radicals::at(freqs, g0).energy(level, start_sheet);
    let mut tracker = Tracker { freqs, level, g: g0, energy: e0, sheet: start_sheet, previous: None };
    let mut points = vec![TracePoint { g: g0, energy: e0, sheet: start_sheet }];
    let mut cut_crossings = Vec::new();
    let samples = path.samples_per_segment;
    for (index, segment) in path.segments.iter().enumerate() {
        // stack of pending parameter intervals, with their halving depth
        let mut t_done = T::zero();
        let mut pending: Vec<(T, u32)> = (1..=samples).rev().map(|k| (T::count(k) / T::count(samples), 0)).collect();
        while let Some((t, depth)) = pending.pop() {
            let g = segment.point(t);
            match tracker.try_step(g) {
                Step::Accepted(energy, sheet) => {
                    if sheet != tracker.sheet {
                        cut_crossings.push(CutCrossing {
                            segment: index,
                            parameter: t,
                            cut: classify_cut(freqs, tracker.g, g),
                            from: tracker.sheet,
                            to: sheet,
                        });
                    }
                    tracker.accept(g, energy, sheet);
                    points.push(TracePoint { g, energy, sheet });
                    t_done = t;
                }
                Step::Ambiguous => {
                    if depth >= MAX_HALVINGS {
                        return Err(Error::TrackingAmbiguous {
                            segment: index,
                            parameter: t.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                    pending.push((t, depth + 1));
                    pending.push(((t_done + t) * T::lit(0.5), depth + 1));
                }
            }
        }
    }
    Ok(ContinuationTrace { level, start_sheet, end_sheet: tracker.sheet, points, cut_crossings })
}
