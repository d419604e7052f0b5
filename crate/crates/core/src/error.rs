use crate::algebra::AlgebraKind;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{function}: argument {value} outside domain ({domain})")]
    Domain {
        function: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("invalid {state} state: {reason}")]
    InvalidState {
        state: &'static str,
        reason: String,
    },
    #[error("basis cutoff exceeds cap of {cap} states")]
    CutoffExceeded { cap: usize },
    #[error("{state} state cannot be paired with the {kind} algebra")]
    Incompatible {
        state: &'static str,
        kind: AlgebraKind,
    },
    #[error("su(2) representation j = {j} has dimension {expected}, requested {requested}")]
    DimensionMismatch {
        j: f64,
        expected: usize,
        requested: usize,
    },
    #[error("truncation not converged: estimate {estimate:e} above {tolerance:e} at dimension {dim}")]
    NotConverged {
        estimate: f64,
        tolerance: f64,
        dim: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
