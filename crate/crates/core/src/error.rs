use thiserror::Error;

/// Errors raised by the discrimination library and the CLI harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A scalar parameter fell outside its admissible range.
    #[error("{name} = {value} is outside {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Inputs violate a structural precondition (label mismatch, wrong ensemble kind, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The outcome whose confidence was requested never occurs.
    #[error("confidence of outcome {outcome} is undefined: outcome probability is zero")]
    UndefinedConfidence { outcome: usize },

    /// The requested weights leave a negative inconclusive element.
    #[error("infeasible weights: {0}")]
    InfeasibleWeights(String),

    /// The average state is singular so the construction has no meaning.
    #[error("degenerate ensemble: {0}")]
    DegenerateEnsemble(String),

    /// Unambiguous discrimination needs linearly independent states.
    #[error("unambiguous discrimination impossible: states are linearly dependent")]
    UsdImpossible,

    /// A closed form is 0/0 or divergent at this parameter point.
    #[error("singular closed form: {0}")]
    Singular(String),

    /// Malformed object (non-Hermitian operator, unnormalized state, ...).
    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            range: "[0, 1]",
        })
    }
}
