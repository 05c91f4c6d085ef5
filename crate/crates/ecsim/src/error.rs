//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register of {requested} qubits exceeds the backend limit of {limit}")]
    CapacityExceeded { requested: usize, limit: usize },

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    IndexOutOfRange { index: usize, num_qubits: usize },

    #[error("gate {gate} expects {expected} target(s), got {got}")]
    ArityMismatch {
        gate: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("duplicate target qubits in gate application")]
    DuplicateTargets,

    #[error("Pauli string spans {got} qubits, register has {expected}")]
    PauliLengthMismatch { expected: usize, got: usize },

    #[error("gate {0} is not Clifford and cannot run on the tableau backend")]
    NonClifford(String),

    #[error("gate applied to qubit {0} after it was measured")]
    GateAfterMeasure(usize),

    #[error("operator dimensions do not match: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("Kraus set is not trace preserving (|sum K†K - I| = {deviation:.3e})")]
    NonTracePreserving { deviation: f64 },

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid relaxation times: T2 = {t2} exceeds 2*T1 = {}", 2.0 * t1)]
    InvalidRelaxation { t1: f64, t2: f64 },

    #[error("qubit subset is empty")]
    EmptySubset,

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("counts table is empty")]
    EmptyCounts,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse circuit text: {0}")]
    CircuitParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
