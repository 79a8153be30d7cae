use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("quiver has a directed cycle through vertex {0}")]
    CyclicQuiver(String),
    #[error("relation {0} mixes non-parallel paths or paths shorter than 2")]
    InconsistentRelation(String),
    #[error("objects live over different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("characteristic {p} too small for the trace-form radical (needs > {needed})")]
    CharTooSmall { p: u64, needed: usize },
    #[error("module is not projective: {0}")]
    NotProjective(String),
    #[error("decomposition inconclusive after {retries} retries on a module of dimension {dim}")]
    DecompositionInconclusive { dim: usize, retries: usize },
    #[error("projective resolution longer than {0}")]
    ResolutionTooLong(usize),
    #[error("sequence leaves the category: {0}")]
    SequenceLeavesCategory(String),
    #[error("not a d-almost split sequence: {0}")]
    NotAlmostSplit(String),
    #[error("lifting failed: {0}")]
    LiftFailed(String),
    #[error("summand outside the two expected slices: {0}")]
    SliceMixing(String),
    #[error("tau_d does not vanish within {0} slices")]
    TauNonVanishing(usize),
    #[error("not an almost split sequence: {0}")]
    NotAnARSequence(String),
    #[error("more than {0} indecomposables; algebra possibly representation-infinite")]
    CapExceeded(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<crate::exactla::NoSolution> for Error {
    fn from(_: crate::exactla::NoSolution) -> Self {
        Error::NoSolution
    }
}
