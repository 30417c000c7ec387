use thiserror::Error;

/// Fatal failures of the spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ground energy vanishes on this sheet; gamma is undetermined")]
    DegenerateGroundEnergy,
    #[error("energy {energy} is not an eigenvalue of the top subsystem (smallest pivot {pivot:e})")]
    NotAnEigenvalue { energy: String, pivot: f64 },
    #[error("path passes within {radius:e} of the branch point at {branch_point}")]
    PathHitsBranchPoint { branch_point: String, radius: f64 },
    #[error("tracking ambiguous on segment {segment} at parameter {parameter}")]
    TrackingAmbiguous { segment: usize, parameter: f64 },
    #[error("path is not closed: start and end differ by {0:e}")]
    OpenLoop(f64),
    #[error("eigenvalue iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("truncation insufficient: doubling the basis moved an eigenvalue by {0:e}")]
    TruncationInsufficient(f64),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// `true` for input-validation failures, `false` for numerical ones.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidInput(_) | Error::OpenLoop(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Non-fatal conditions attached to a returned value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Advisory {
    /// Coupling sits on a branch point; sheet identity is ambiguous there.
    AtBranchPoint,
    /// The decoupling transformation to effective frequencies breaks down.
    TransformationInvalid,
    /// Eigenvalues are close to coalescing; expect reduced accuracy.
    IllConditioned,
    /// Polynomial coefficients left the safe floating point range.
    Overflow,
    /// More than one independent coefficient vector solves the system.
    DegenerateNullspace,
    /// Frequency sits on an exceptional point of the matrix model.
    AtExceptionalPoint,
    /// Vanishing frequency: the oscillator degenerates to a free particle.
    FreeParticleLimit,
}

/// A value together with any advisories raised while computing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Flagged<V> {
    pub value: V,
    pub advisories: Vec<Advisory>,
}

impl<V> Flagged<V> {
    pub fn clean(value: V) -> Self {
        Flagged { value, advisories: Vec::new() }
    }

    pub fn with(value: V, advisories: Vec<Advisory>) -> Self {
        Flagged { value, advisories }
    }

    pub fn has(&self, advisory: Advisory) -> bool {
        self.advisories.contains(&advisory)
    }

    pub fn is_clean(&self) -> bool {
        self.advisories.is_empty()
    }

    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> Flagged<W> {
        Flagged { value: f(self.value), advisories: self.advisories }
    }
}
