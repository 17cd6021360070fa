use thiserror::Error;

/// Errors produced by complex construction, invariant extraction, and
/// surgery computations.
///
/// `InvalidInput` covers values the caller handed us that fail domain
/// validation (a polynomial that is not realizable, a malformed diagram,
/// a zero surgery coefficient). `Internal` marks conditions that should
/// be unreachable when the library's own invariants hold; seeing one is
/// a bug.
#[derive(Debug, Error)]
pub enum Error {
    /// A differential fails to square to zero, or an entry violates the
    /// grading conventions.
    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    /// An Alexander polynomial that no L-space knot can have.
    #[error("not an L-space knot polynomial: {0}")]
    NotLSpaceKnotPolynomial(String),

    /// Alexander polynomial + signature data that no thin complex realizes.
    #[error("no thin complex realizes this data: {0}")]
    ThinRealization(String),

    /// A doubly-pointed genus-one diagram violating a validity requirement.
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    /// Surgery coefficient n = 0 (the result is not a rational homology
    /// sphere, so the invariants computed here do not apply).
    #[error("surgery coefficient must be nonzero")]
    ZeroSurgeryCoefficient,

    /// A computation requiring |n| >= 2g(K) - 1 was asked for smaller n.
    #[error("surgery coefficient {n} below the large-surgery threshold {threshold}")]
    BelowLargeSurgeryThreshold { n: i64, threshold: i64 },

    /// The truncated computation failed to certify stability even after
    /// raising the truncation order to the configured cap.
    #[error("truncation did not stabilize: {0}")]
    TruncationUnstable(String),

    /// Gradings could not be assigned consistently.
    #[error("inconsistent gradings: {0}")]
    GradingInconsistent(String),

    /// A d-invariant was requested of a module whose free part is not a
    /// single tower.
    #[error("expected exactly one free summand, found {0}")]
    FreeSummandCount(usize),

    /// Mixing absolutely-graded and relatively-graded modules.
    #[error("cannot combine absolutely and relatively graded modules")]
    GradingModeMismatch,

    /// Malformed input data (JSON schema violations, bad rationals, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Internal invariant violated; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
