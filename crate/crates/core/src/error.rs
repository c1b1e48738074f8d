use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{op}: domain error: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An iterative procedure (quadrature, series, recurrence) did not reach
    /// its tolerance within its budget. `estimate` is the best value found.
    #[error("{op}: no convergence after {work} steps (estimate {estimate:e}, error bound {error_bound:e})")]
    NonConvergence {
        op: &'static str,
        estimate: f64,
        error_bound: f64,
        work: usize,
    },

    #[error("{op}: overflow at n = {n} (log value {log_value})")]
    Overflow {
        op: &'static str,
        n: usize,
        log_value: f64,
    },

    /// Closed form and series evaluation of the same state disagree.
    #[error("branch mismatch at x = {x}: closed form and series differ by {difference:e} (tolerance {tol:e})")]
    BranchMismatch { x: f64, difference: f64, tol: f64 },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Overflow { .. } => "overflow",
            Error::BranchMismatch { .. } => "branch_mismatch",
        }
    }
}

pub(crate) fn ensure_finite(op: &'static str, name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("{name} must be finite, got {v}")))
    }
}
