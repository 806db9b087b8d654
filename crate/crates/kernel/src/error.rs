//! The kernel-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("value {value} out of range (bound {bound})")]
    OutOfRange { value: usize, bound: usize },

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("not invertible")]
    NotInvertible,

    #[error("parse error at {line}:{col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },

    #[error("type error: {0}")]
    TypeError(String),

    #[error("unknown builtin theory `{0}`")]
    UnknownTheory(String),

    #[error("missing assignment for {0}")]
    MissingAssignment(String),

    #[error("no factorization exists: {0}")]
    NoFactorization(String),

    #[error("factorization is not unique: {0}")]
    NonUnique(String),

    #[error("not equivariant: {0}")]
    NotEquivariant(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("theory is not horizontally trivial")]
    NotHorizontallyTrivial,

    #[error("transformation is not pseudo: no inverse comparison at `{0}`")]
    NoPseudoInverse(String),

    #[error("input has not passed its checker: {0}")]
    NotChecked(String),

    #[error("model is not lax: {0}")]
    NotLax(String),

    #[error("model is not unitary: {0}")]
    NotUnitary(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("law violation [{law}] at {instance}")]
    LawViolation { law: String, instance: String },

    #[error("unsupported pasting shape: {0}")]
    NonLaxEvaluable(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("invalid input file: {0}")]
    InvalidFile(String),
}
