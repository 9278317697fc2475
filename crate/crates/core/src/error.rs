use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Every variant belongs to exactly one originating module; [`Error::module`]
/// reports it so front ends can attribute failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("denominator vanishes at index {index}")]
    DenominatorZero { index: usize },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    #[error("argument {re}{im:+}i lies on the branch cut")]
    CutError { re: f64, im: f64 },

    #[error("g-fraction coefficient {index} disagrees with the raw continued fraction ({got} vs {expected})")]
    InconsistentCoefficients {
        index: usize,
        got: f64,
        expected: f64,
    },

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("degenerate curve: no non-negligible differences")]
    DegenerateCurve,

    #[error("curve sample {index}: {source}")]
    CurveSample { index: usize, source: Box<Error> },

    #[error("grid has {points} points, cap is {cap}")]
    CapExceeded { points: usize, cap: usize },
}

impl Error {
    /// Short variant name, e.g. `NoConvergence`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::DenominatorZero { .. } => "DenominatorZero",
            Error::DomainError(_) => "DomainError",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::CutError { .. } => "CutError",
            Error::InconsistentCoefficients { .. } => "InconsistentCoefficients",
            Error::DegenerateParameter(_) => "DegenerateParameter",
            Error::DegenerateCurve => "DegenerateCurve",
            Error::CurveSample { source, .. } => source.name(),
            Error::CapExceeded { .. } => "CapExceeded",
        }
    }

    /// Name of the module the error originates from.
    pub fn module(&self) -> &'static str {
        match self {
            Error::InvalidParameters(_)
            | Error::DenominatorZero { .. }
            | Error::DomainError(_)
            | Error::NoConvergence { .. } => "qcore",
            Error::CutError { .. }
            | Error::InconsistentCoefficients { .. }
            | Error::DegenerateParameter(_) => "gfrac",
            Error::DegenerateCurve => "geomtest",
            Error::CurveSample { source, .. } => source.module(),
            Error::CapExceeded { .. } => "scanner",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
