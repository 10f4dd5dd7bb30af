use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("line {line}: {source}")]
    FamilyLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("graph on {n} vertices is not supported here (limit {max})")]
    UnsupportedSize { n: usize, max: usize },

    #[error("{what}: size {n} exceeds the exact search budget of {max}")]
    BudgetExceeded {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("eigenvalue iteration did not converge after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("degenerate scaling: index values are constant ({value})")]
    DegenerateScaling { value: f64 },

    #[error("degenerate rescale: all similarities equal ({value})")]
    DegenerateRescale { value: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("duplicate graph label {0:?}")]
    DuplicateLabel(String),

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(&'static str),

    #[error("generation failed for {spec} after {attempts} disconnected draws")]
    GenerationFailed { spec: String, attempts: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the error comes from malformed input rather than a computation.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Graph6 { .. }
            | Error::Disconnected
            | Error::UnsupportedSize { .. }
            | Error::InvalidParameter(_)
            | Error::DuplicateLabel(_)
            | Error::LengthMismatch { .. }
            | Error::Io(_) => true,
            Error::FamilyLine { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
