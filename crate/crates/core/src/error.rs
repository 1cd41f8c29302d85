use thiserror::Error;

/// Everything that can go wrong while parsing a diagram or computing an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent code: {0}")]
    InconsistentCode(String),
    #[error("braid generator index {index} out of range for {strands} strands")]
    BadIndex { index: i64, strands: usize },
    #[error("diagram is not oriented consistently")]
    Unoriented,
    #[error("state does not cover every classical crossing")]
    IncompleteChoice,
    #[error("no site for move {0}")]
    PatternNotFound(String),
    #[error("{crossings} crossings exceeds the cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("diagram has virtual crossings")]
    NonPlanar,
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("diagram has {0} components, expected a knot")]
    MultiComponent(usize),
    #[error("cusp word has odd length {0}")]
    OddLength(usize),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("composite is not a multiple of the identity matching")]
    NonIdentityComposite,
    #[error("cannot substitute a polynomial for a non-integral or negative power of {0}")]
    NonIntegralComposition(String),
    #[error("degree {degree} exceeds the limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("{nodes} nodes exceeds the limit {limit}")]
    TooManyNodes { nodes: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
