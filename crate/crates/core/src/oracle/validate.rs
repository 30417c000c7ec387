use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::build_truncated;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectral::{energy, Frequencies, LevelSpec, SheetLabel, Sign};

/// Version of the serialized validation report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;
/// Largest eigenvalue shift tolerated between the half and full basis.
pub const TRUNCATION_TOLERANCE: f64 = 1e-8;
/// Deviations below this are treated as round-off when estimating slopes.
const DEVIATION_FLOOR: f64 = 1e-12;

/// A closed-form conventional level paired with its truncated eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchedLevel<T> {
    pub kx: u32,
    pub ky: u32,
    pub sheet: SheetLabel,
    pub closed_form: Complex<T>,
    pub computed: Complex<T>,
    pub deviation: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry<T> {
    pub basis_size: usize,
    pub max_deviation: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationPoint<T> {
    pub g: Complex<T>,
    pub levels: Vec<MatchedLevel<T>>,
    pub max_deviation: T,
    /// Largest change of a matched eigenvalue from `N/2` to `N`.
    pub truncation_shift: T,
    /// Half basis first.
    pub sweep: Vec<SweepEntry<T>>,
    /// `log2(dev(N/2) / dev(N))`; absent when both sit at round-off.
    pub convergence_slope: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport<T> {
    pub schema_version: u32,
    pub freqs: Frequencies<T>,
    pub basis_size: usize,
    pub n_max: u32,
    pub points: Vec<ValidationPoint<T>>,
}

impl<T: Scalar> ValidationReport<T> {
    pub fn max_deviation(&self) -> T {
        self.points.iter().map(|p| p.max_deviation).fold(T::zero(), T::max)
    }
}

/// Conventional-phase closed-form values for `kx, ky < n`, ascending by real part.
pub fn conventional_levels<T: Scalar>(
    freqs: &Frequencies<T>,
    g: Complex<T>,
    n: usize,
) -> Vec<(u32, u32, SheetLabel, Complex<T>)> {
    let mut out = Vec::with_capacity(n * n);
    for kx in 0..n as u32 {
        for ky in 0..n as u32 {
            let level = LevelSpec { n: kx + ky, m: kx.abs_diff(ky) };
            let diff = if kx >= ky { Sign::Plus } else { Sign::Minus };
            let sheet = SheetLabel::from_decoupled(freqs, Sign::Plus, Sign::Plus, diff);
            out.push((kx, ky, sheet, energy(freqs, level, sheet, g)));
        }
    }
    out.sort_by(|a, b| a.3.re.partial_cmp(&b.3.re).unwrap_or(std::cmp::Ordering::Equal));
    out
}

/// Greedy nearest assignment; each computed value is used at most once.
pub fn greedy_match<T: Scalar>(targets: &[Complex<T>], computed: &[Complex<T>]) -> Vec<usize> {
    let mut used = vec![false; computed.len()];
    targets
        .iter()
        .map(|t| {
            let best = (0..computed.len())
                .filter(|&i| !used[i])
                .min_by(|&a, &b| {
                    (computed[a] - t).norm().partial_cmp(&(computed[b] - t).norm()).unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("fewer computed eigenvalues than targets");
            used[best] = true;
            best
        })
        .collect()
}

fn validate_point<T: Scalar>(freqs: &Frequencies<T>, g: T, count: usize, n: usize) -> Result<ValidationPoint<T>> {
    let g = Complex::from(g);
    let targets = conventional_levels(freqs, g, n);
    let targets = &targets[..count];
    let values: Vec<Complex<T>> = targets.iter().map(|t| t.3).collect();
    let half = (n / 2).max(2);
    let full = build_truncated(freqs, g, n)?.eigenvalues()?;
    let coarse = build_truncated(freqs, g, half)?.eigenvalues()?;
    let full_match = greedy_match(&values, &full);
    let coarse_match = greedy_match(&values, &coarse);
    let levels: Vec<MatchedLevel<T>> = targets
        .iter()
        .zip(&full_match)
        .map(|(&(kx, ky, sheet, closed_form), &i)| MatchedLevel {
            kx,
            ky,
            sheet,
            closed_form,
            computed: full[i],
            deviation: (full[i] - closed_form).norm(),
        })
        .collect();
    let max_of = |m: &[usize], vals: &[Complex<T>]| {
        m.iter().zip(&values).map(|(&i, v)| (vals[i] - v).norm()).fold(T::zero(), T::max)
    };
    let dev_full = max_of(&full_match, &full);
    let dev_coarse = max_of(&coarse_match, &coarse);
    let truncation_shift =
        full_match.iter().zip(&coarse_match).map(|(&a, &b)| (full[a] - coarse[b]).norm()).fold(T::zero(), T::max);
    let floor = T::lit(DEVIATION_FLOOR);
    let convergence_slope = (dev_coarse > floor).then(|| (dev_coarse / dev_full.max(floor)).log2());
    Ok(ValidationPoint {
        g,
        levels,
        max_deviation: dev_full,
        truncation_shift,
        sweep: vec![
            SweepEntry { basis_size: half, max_deviation: dev_coarse },
            SweepEntry { basis_size: n, max_deviation: dev_full },
        ],
        convergence_slope,
    })
}

/// Compares the lowest `(n_max+1)(n_max+2)/2` truncated eigenvalues with the
/// conventional-phase closed forms at each real `g` with `|g| < 2νω`.
///
/// The basis is also halved once; a matched eigenvalue moving by more than
/// [`TRUNCATION_TOLERANCE`] is reported as `truncation-insufficient`.
pub fn validate_closed_forms<T: Scalar>(
    freqs: &Frequencies<T>,
    g_list: &[T],
    n_max: u32,
    n: usize,
) -> Result<ValidationReport<T>> {
    let count = (n_max as usize + 1) * (n_max as usize + 2) / 2;
    if n < 4 || count > (n / 2).max(2).pow(2) {
        return Err(Error::invalid(format!("basis size {n} too small for n_max = {n_max}")));
    }
    if let Some(g) = g_list.iter().find(|g| !(g.abs() < freqs.real_threshold())) {
        return Err(Error::invalid(format!("coupling {g} outside the interval (-2νω, 2νω)")));
    }
    let points = g_list.par_iter().map(|&g| validate_point(freqs, g, count, n)).collect::<Result<Vec<_>>>()?;
    if let Some(p) = points.iter().find(|p| p.truncation_shift > T::lit(TRUNCATION_TOLERANCE)) {
        return Err(Error::TruncationInsufficient(p.truncation_shift.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(ValidationReport { schema_version: REPORT_SCHEMA_VERSION, freqs: *freqs, basis_size: n, n_max, points })
}
