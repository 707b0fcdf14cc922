use thiserror::Error;

/// Errors shared by all engine modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("cycle detected: `{0}` and `{1}` are mutually comparable but distinct")]
    CycleDetected(String, String),
    #[error("product of an empty list of posets")]
    EmptyProduct,
    #[error("instance has {size} elements, above the exhaustive-enumeration cap of {cap}; pass force to override")]
    CapExceeded { size: usize, cap: usize },
    #[error("target poset is not a lattice, required by `{0}`")]
    TargetNotLattice(String),
    #[error("source and target posets differ; a self-correspondence is required")]
    NotSelfCorrespondence,
    #[error("sup/inf of the pre-fixed set does not exist in the source poset")]
    NoCandidate,
    #[error("map is not increasing")]
    NotIncreasing,
    #[error("source poset has no least element")]
    NoBottom,
    #[error("source poset has no greatest element")]
    NoTop,
    #[error("source poset is not a complete lattice")]
    NotCompleteLattice,
    #[error("instance incompatible with the requested check: {0}")]
    IncompatibleInstance(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("generator rejection budget exhausted for kind `{0}`")]
    GenerationExhausted(String),
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("profile does not match the game's player set")]
    IncompatibleProfile,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
