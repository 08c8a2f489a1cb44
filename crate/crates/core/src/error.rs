use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: |a[{row}][{col}] - conj(a[{col}][{row}])| = {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("trace deviates from one: trace = {trace}, |trace - 1| = {deviation:e}")]
    TraceDeviation { trace: f64, deviation: f64 },

    #[error("density matrix has negative eigenvalue {value:e}")]
    NegativeEigenvalue { value: f64 },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("Jensen-Shannon radicand {value:e} is negative beyond roundoff")]
    NegativeRadicand { value: f64 },

    #[error("step count {steps} exceeds the cap of {cap}")]
    StepLimit { steps: u64, cap: u64 },
}

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidParameter {
        name,
        value,
        reason,
    }
}
