use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
///
/// The display string starts with the module that raised it, e.g.
/// `exact_core::OutOfTriangle: ...`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exact_core::Parse: {0}")]
    Parse(String),
    #[error("exact_core::OutOfTriangle: {0}")]
    OutOfTriangle(String),
    #[error("farey1d::Undefined: {0}")]
    FareyUndefined(String),
    #[error("verified_reals::PrecisionExhausted: {0}")]
    PrecisionExhausted(String),
    #[error("verified_reals::DivisionByZeroPossible")]
    DivisionByZeroPossible,
    #[error("verified_reals::NotRefinable: {0}")]
    NotRefinable(String),
    #[error("verified_reals::NoIsolatedRoot: {0}")]
    NoIsolatedRoot(String),
    #[error("triangle_dynamics::OnLambda: {0}")]
    OnLambda(String),
    #[error("triangle_dynamics::AmbiguousBoundary: digit {digit} undecided at {bits} bits")]
    AmbiguousBoundary { digit: usize, bits: u64 },
    #[error("triangle_dynamics::NotOnSigma: {0}")]
    NotOnSigma(String),
    #[error("triangular_tree::RootOrVertex: {0}")]
    RootOrVertex(String),
    #[error("coding::MalformedRepresentation: {0}")]
    MalformedRepresentation(String),
    #[error("coding::MalformedWord: {0}")]
    MalformedWord(String),
    #[error("coding::IActionNotAvailable: {0}")]
    IActionNotAvailable(String),
    #[error("approximation::Unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::PrecisionExhausted(_)
            | Error::NotRefinable(_)
            | Error::AmbiguousBoundary { .. } => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
