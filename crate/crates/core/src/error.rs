use thiserror::Error;

use crate::field::FieldError;
use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// Structurally invalid input (mismatched dimensions, unknown names, ...).
    #[error("{0}")]
    Input(String),
    /// A checked condition does not hold; `certificate` says why.
    #[error("{condition} fails: {certificate}")]
    Failed { condition: String, certificate: String },
    /// A required object does not exist for this input.
    #[error("{what} is infeasible: {detail}")]
    Infeasible { what: String, detail: String },
    /// A computed object violates an identity that holds for every valid
    /// input; indicates inconsistent data or a bug.
    #[error("contradiction in {what}: {detail}")]
    Contradiction { what: String, detail: String },
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn failed(condition: impl Into<String>, certificate: impl ToString) -> Self {
        Error::Failed { condition: condition.into(), certificate: certificate.to_string() }
    }

    /// True for mathematical verdicts (as opposed to malformed input).
    pub fn is_verdict(&self) -> bool {
        matches!(self, Error::Failed { .. } | Error::Infeasible { .. } | Error::Contradiction { .. })
    }

    pub(crate) fn infeasible(what: impl Into<String>, detail: impl ToString) -> Self {
        Error::Infeasible { what: what.into(), detail: detail.to_string() }
    }

    pub(crate) fn contradiction(what: impl Into<String>, detail: impl ToString) -> Self {
        Error::Contradiction { what: what.into(), detail: detail.to_string() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
