use thiserror::Error;

use crate::graph::StabilityClass;

/// Errors raised by graph construction and by the combinatorial operations.
///
/// Everything except [`Error::ClaimFalsified`] is a precondition failure on
/// the caller's input. `ClaimFalsified` means an exhaustive search failed to
/// find an object that is known to exist, so it points at a
/// bug (or a counterexample) rather than at bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has {0} vertices, more than the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge refers to unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("arithmetic genus {genus} is below 2; a stable or semistable curve needs genus at least 2")]
    GenusTooSmall { genus: i64 },
    #[error("graph is not semistable (found {found:?}); a genus-0 vertex has fewer than 2 edge ends")]
    NotSemistable { found: StabilityClass },
    #[error("graph is not quasistable (found {found:?}); two exceptional vertices are adjacent")]
    NotQuasistable { found: StabilityClass },
    #[error("graph is not stable (found {found:?}); the divisibility criterion requires a stable graph")]
    NotStable { found: StabilityClass },
    #[error("subcurve is empty")]
    EmptySubcurve,
    #[error("subcurve is the whole graph; a proper subcurve is required")]
    NotProper,
    #[error("multidegree has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("total degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: i64, right: i64 },
    #[error("degree {degree} is below 1; shift it by a multiple of 2g-2 = {canonical_degree} (twist) first")]
    DegreeBelowOne { degree: i64, canonical_degree: i64 },
    #[error("corpus bounds too large: {0}")]
    CorpusTooLarge(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    ClaimFalsified(String),
}

impl Error {
    /// True for internal invariant violations, false for rejected input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::ClaimFalsified(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
