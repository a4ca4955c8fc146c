use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Every variant maps to a stable machine-readable code (see [`Error::code`])
/// and to a CLI exit status (see [`Error::exit_status`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomial is not admissible: {0}")]
    NotAdmissible(String),

    #[error("Gotzmann number is 1: the polynomial belongs to a linear variety, which is excluded")]
    LinearVariety,

    #[error("negative first difference at degree {degree}")]
    NegativeDerivative { degree: usize },

    #[error("integral requires value 1 in degree 0")]
    SigmaNeedsUnitStart,

    #[error("regularity {rho} is below the minimal regularity {min}")]
    RhoTooSmall { rho: u64, min: u64 },

    #[error("no scheme has this Hilbert polynomial with Hilbert function regularity {rho}")]
    EmptyClass { rho: u64 },

    #[error("ambient projective space P^{n} is too small: {reason}")]
    AmbientTooSmall { n: u64, reason: String },

    #[error("not the Hilbert function of a projective scheme: {0}")]
    NotSchemeHf(String),

    #[error("terms of different degrees cannot be Borel-compared ({left} vs {right})")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("terms live in rings with different numbers of variables ({left} vs {right})")]
    VariableMismatch { left: usize, right: usize },

    #[error("set of terms is not Borel-closed: {0}")]
    NotBorel(String),

    #[error("ideal is not strongly stable: {0}")]
    NotStronglyStable(String),

    #[error("ideal is not saturated: {0}")]
    NotSaturated(String),

    #[error("construction hypotheses fail: {0}")]
    PreconditionViolation(String),

    #[error("no Borel-minimal removable term of x0-free degree {degree} in degree {slice}")]
    NoRemovableTerm { degree: u32, slice: u32 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("witness verification failed: {0}")]
    VerificationFailure(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier used in JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::LinearVariety => "LinearVariety",
            Error::NegativeDerivative { .. } => "NegativeDerivative",
            Error::SigmaNeedsUnitStart => "SigmaNeedsUnitStart",
            Error::RhoTooSmall { .. } => "RhoTooSmall",
            Error::EmptyClass { .. } => "EmptyClass",
            Error::AmbientTooSmall { .. } => "AmbientTooSmall",
            Error::NotSchemeHf(_) => "NotSchemeHF",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::VariableMismatch { .. } => "VariableMismatch",
            Error::NotBorel(_) => "NotBorel",
            Error::NotStronglyStable(_) => "NotStronglyStable",
            Error::NotSaturated(_) => "NotSaturated",
            Error::PreconditionViolation(_) => "PreconditionViolation",
            Error::NoRemovableTerm { .. } => "NoRemovableTerm",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::VerificationFailure(_) => "VerificationFailure",
            Error::Io(_) => "IoError",
        }
    }

    /// 2 for malformed input, 1 for everything that is a mathematical outcome
    /// or a failed computation.
    pub fn exit_status(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::Io(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
