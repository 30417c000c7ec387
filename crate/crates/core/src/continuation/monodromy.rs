use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{continue_along, PathSpec};
use crate::error::{Error, Result};
use crate::scalar::{principal_sqrt, Scalar};
use crate::spectral::{branch_points_for, BranchPointId, Frequencies, LevelSpec, SheetLabel};

/// Permutation of the eight sheet labels induced by a closed loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonodromyPermutation<T> {
    /// `mapping[i]` is the end label of the trace starting on `SheetLabel::ALL[i]`.
    pub mapping: [SheetLabel; 8],
    pub base_point: Complex<T>,
    #[serde(rename = "loop")]
    pub loop_path: PathSpec<T>,
}

/// Permutation of the eight labels without the loop that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelPermutation(pub [SheetLabel; 8]);

impl LabelPermutation {
    pub const IDENTITY: LabelPermutation = LabelPermutation(SheetLabel::ALL);

    pub fn apply(&self, label: SheetLabel) -> SheetLabel {
        self.0[label.index()]
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = [false; 8];
        for l in self.0 {
            seen[l.index()] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// `self` after `first`.
    pub fn after(&self, first: &LabelPermutation) -> LabelPermutation {
        LabelPermutation(first.0.map(|l| self.apply(l)))
    }

    pub fn inverse(&self) -> LabelPermutation {
        let mut out = SheetLabel::ALL;
        for (i, l) in self.0.iter().enumerate() {
            out[l.index()] = SheetLabel::ALL[i];
        }
        LabelPermutation(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Number of labels not fixed.
    pub fn moved(&self) -> usize {
        SheetLabel::ALL.iter().filter(|&&l| self.apply(l) != l).count()
    }

    /// Smallest `k ≥ 1` with `selfᵏ = id`.
    pub fn order(&self) -> usize {
        let mut power = *self;
        let mut k = 1;
        while !power.is_identity() {
            power = self.after(&power);
            k += 1;
        }
        k
    }

    /// Non-trivial cycles, each starting at its smallest label index.
    pub fn cycles(&self) -> Vec<Vec<SheetLabel>> {
        let mut seen = [false; 8];
        let mut out = Vec::new();
        for start in SheetLabel::ALL {
            if seen[start.index()] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start.index()] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next.index()] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

/// Cycle notation, e.g. `(+++ -++)(++- -+-)`; `()` for the identity.
impl fmt::Display for LabelPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let labels: Vec<String> = c.iter().map(|l| l.to_string()).collect();
            write!(f, "({})", labels.join(" "))?;
        }
        Ok(())
    }
}

impl<T> MonodromyPermutation<T> {
    pub fn permutation(&self) -> LabelPermutation {
        LabelPermutation(self.mapping)
    }
}

/// Whether any radical has its radicand on its cut at `g`.
fn on_cut<T: Scalar>(freqs: &Frequencies<T>, g: Complex<T>) -> bool {
    let (nu, omega) = (freqs.nu(), freqs.omega());
    let tol = T::lit(1e-12) * (T::one() + nu * nu + omega * omega + g.norm_sqr());
    let s_rad = Complex::from(T::lit(4.0) * nu * nu * omega * omega) - g * g;
    let sum = Complex::from(nu * nu + omega * omega);
    let s = principal_sqrt(s_rad);
    [s_rad, sum + s, sum - s].iter().any(|z| z.im.abs() <= tol && z.re < T::zero())
}

/// Permutation induced by continuing all eight labels once around `loop_path`.
pub fn monodromy<T: Scalar>(
    freqs: &Frequencies<T>,
    level: LevelSpec,
    loop_path: &PathSpec<T>,
) -> Result<MonodromyPermutation<T>> {
    loop_path.validate()?;
    if !loop_path.is_closed() {
        return Err(Error::OpenLoop(loop_path.closure_gap().to_f64().unwrap_or(f64::NAN)));
    }
    let base_point = loop_path.start();
    if on_cut(freqs, base_point) {
        return Err(Error::invalid("loop base point lies on a branch cut"));
    }
    let ends = SheetLabel::ALL
        .par_iter()
        .map(|&s| continue_along(freqs, level, s, loop_path).map(|t| t.end_sheet))
        .collect::<Result<Vec<_>>>()?;
    let mut mapping = SheetLabel::ALL;
    mapping.copy_from_slice(&ends);
    if !LabelPermutation(mapping).is_bijective() {
        return Err(Error::TrackingAmbiguous { segment: 0, parameter: 1.0 });
    }
    Ok(MonodromyPermutation { mapping, base_point, loop_path: loop_path.clone() })
}

/// Counter-clockwise circle of `radius` around a branch point, based at the
/// point moved toward the origin by `radius` (at `−radius` for the origin).
pub fn loop_around<T: Scalar>(
    freqs: &Frequencies<T>,
    id: BranchPointId,
    radius: T,
    samples_per_segment: usize,
) -> Result<PathSpec<T>> {
    if !(radius > T::zero() && radius.is_finite()) {
        return Err(Error::invalid("loop radius must be positive"));
    }
    let bp = branch_points_for(freqs, LevelSpec::ground())
        .into_iter()
        .find(|b| b.id == id)
        .ok_or_else(|| Error::invalid(format!("no branch point {id} for these frequencies")))?;
    let start_angle = if bp.g.norm() == T::zero() { T::PI() } else { (-bp.g).arg() };
    PathSpec::circle(bp.g, radius, start_angle, 1, samples_per_segment)
}

/// Loop radius used for generators: half the distance to the nearest other
/// branch point or the origin.
fn generator_radius<T: Scalar>(freqs: &Frequencies<T>, id: BranchPointId) -> T {
    let points = branch_points_for(freqs, LevelSpec::ground());
    let me = points.iter().find(|b| b.id == id).expect("known id").g;
    let mut d = points.iter().filter(|b| b.id != id).map(|b| (b.g - me).norm()).fold(T::infinity(), T::min);
    if me.norm() > T::zero() {
        d = d.min(me.norm());
    }
    d * T::lit(0.5)
}

/// Monodromy generators: one small loop around each branch point.
pub fn generators<T: Scalar>(
    freqs: &Frequencies<T>,
    level: LevelSpec,
) -> Result<Vec<(BranchPointId, MonodromyPermutation<T>)>> {
    branch_points_for(freqs, level)
        .into_iter()
        .map(|bp| {
            let path = loop_around(freqs, bp.id, generator_radius(freqs, bp.id), super::DEFAULT_SAMPLES_PER_SEGMENT)?;
            Ok((bp.id, monodromy(freqs, level, &path)?))
        })
        .collect()
}

fn find(parent: &mut [usize; 8], i: usize) -> usize {
    let mut root = i;
    while parent[root] != root {
        root = parent[root];
    }
    let mut j = i;
    while parent[j] != root {
        let next = parent[j];
        parent[j] = root;
        j = next;
    }
    root
}

fn union(parent: &mut [usize; 8], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Orbits of the eight labels under the monodromy group of `level`.
///
/// On quartet surfaces twin labels (same value) are merged, so an orbit of
/// eight labels carries four distinct values.
pub fn reachability<T: Scalar>(freqs: &Frequencies<T>, level: LevelSpec) -> Result<Vec<Vec<SheetLabel>>> {
    let mut parent = [0, 1, 2, 3, 4, 5, 6, 7];
    for (_, perm) in generators(freqs, level)? {
        for (i, l) in perm.mapping.iter().enumerate() {
            union(&mut parent, i, l.index());
        }
    }
    if level.is_quartet() {
        for l in SheetLabel::ALL {
            union(&mut parent, l.index(), l.twin().index());
        }
    }
    let mut orbits: Vec<Vec<SheetLabel>> = Vec::new();
    let mut root_of = [usize::MAX; 8];
    for l in SheetLabel::ALL {
        let r = find(&mut parent, l.index());
        if root_of[r] == usize::MAX {
            root_of[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[root_of[r]].push(l);
    }
    Ok(orbits)
}
