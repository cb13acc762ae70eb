use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected {expected} amplitudes for {num_qubits} qubits, got {got}")]
    LengthMismatch {
        num_qubits: usize,
        expected: usize,
        got: usize,
    },
    #[error("state vector has zero norm")]
    ZeroVector,
    #[error("amplitude {index} is not finite")]
    NonFinite { index: usize },
    #[error("state norm deviates from 1 by {deviation:e}, limit {limit:e}")]
    NotNormalized { deviation: f64, limit: f64 },
    #[error("number of qubits must be positive and at most {max}, got {got}")]
    BadQubitCount { got: usize, max: usize },
    #[error("unknown catalog state `{0}`")]
    UnknownState(String),
    #[error("qubit label {label} out of range 1..={num_qubits}")]
    QubitOutOfRange { label: usize, num_qubits: usize },
    #[error("qubit label {0} used more than once")]
    DuplicateQubit(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operation requires a {expected}-qubit state, got {got}")]
    WrongQubitCount { expected: usize, got: usize },
    #[error("invalid keep set: {0}")]
    InvalidKeepSet(String),
    #[error("invalid role assignment: {0}")]
    InvalidAssignment(String),
    #[error("Bell index must be in 1..=4, got {0}")]
    BadBellIndex(u8),
    #[error("Charlie outcome must be 1 or 2, got {0}")]
    BadCharlieOutcome(u8),
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
