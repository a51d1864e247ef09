//! Shared error type for the algebra engines and analysis procedures.

use thiserror::Error;

use crate::graph::GraphError;
use crate::scalar::ScalarError;
use crate::term::TermError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands belong to different algebra contexts")]
    ContextMismatch,
    #[error("multidegree must have length {expected}, got {got}")]
    MultiDegreeLength { expected: usize, got: usize },
    #[error("zero multidegree not allowed")]
    ZeroMultiDegree,
    #[error("total degree must be at least {min} here")]
    TotalDegreeTooSmall { min: u32 },
    #[error("nilpotency degree must be at least 2, got {0}")]
    NilpotencyTooSmall(u32),
    #[error("zero element not allowed here")]
    ZeroElement,
    #[error("this operation requires a graph with at least 2 vertices")]
    TooFewVertices,
    #[error("complement graph is connected; no direct-sum split exists")]
    NotDecomposable,
    #[error("dimension {dim} exceeds the cap {cap}; lower m or n, or raise the cap")]
    DimensionCap { dim: usize, cap: usize },
    #[error("exhaustive subspace search requires a GF(p) structure table")]
    NeedsFiniteField,
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
