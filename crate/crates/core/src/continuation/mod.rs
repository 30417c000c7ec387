//! Analytic continuation of `E_n(g)` along paths in the complex coupling
//! plane, with sheet tracking and the monodromy of closed loops.

mod monodromy;
mod path;
mod track;

pub use monodromy::{generators, loop_around, monodromy, reachability, LabelPermutation, MonodromyPermutation};
pub use path::{PathSpec, Segment, CONTINUITY_TOLERANCE, DEFAULT_SAMPLES_PER_SEGMENT};
pub use track::{
    check_clearance, continue_along, ContinuationTrace, CutCrossing, CutKind, TracePoint, EXCLUSION_RADIUS,
    MAX_HALVINGS,
};
