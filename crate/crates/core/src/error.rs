//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by construction, simulation, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was given a state or operator over the wrong basis.
    #[error("labeled-space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },

    /// Operation requires a square operator.
    #[error("operator is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// A function table failed validation (lengths, ranges, duplicate labels).
    #[error("invalid function table: {0}")]
    InvalidFunction(String),

    /// The function is not a bijection.
    #[error("function is not bijective: {0}")]
    NotBijective(String),

    /// The function is not a non-surjective injection.
    #[error("function is not a non-surjective injection: {0}")]
    NotInjective(String),

    /// The function is not surjective; lists the codomain labels with no preimage.
    #[error("function is not surjective: missing range elements {missing:?}")]
    NotSurjective { missing: Vec<String> },

    /// Unary qubit-map circuits need equally sized domain and codomain.
    #[error("domain size {n} != codomain size {m}: pad the smaller space (see FiniteFunction::pad_to_square)")]
    NotSquareFunction { n: usize, m: usize },

    /// Binary qubit-map circuits need an n^2-pair domain over an n-point grid.
    #[error("binary function shape mismatch: domain size {domain} is not the square of codomain size {codomain}")]
    NotBinaryFunction { domain: usize, codomain: usize },

    /// A grid specification failed validation.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A gate referenced qubits outside the circuit or repeated an index.
    #[error("invalid gate: {0}")]
    InvalidGate(String),

    /// Bit strings, membership vectors, or ancilla lists of the wrong length.
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// Dense state-vector simulation refused a circuit over the cap.
    #[error("circuit has {qubits} qubits, exceeding the state-vector cap of {cap}")]
    QubitCapExceeded { qubits: usize, cap: usize },

    /// A label was not found in its space.
    #[error("unknown label {label:?} in space {space}")]
    UnknownLabel { label: String, space: String },

    /// An ordinal was out of range for its space.
    #[error("ordinal {ordinal} out of range for {space} of dimension {dim}")]
    OrdinalOutOfRange {
        ordinal: usize,
        dim: usize,
        space: String,
    },

    /// A file could not be parsed as the expected artifact.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
