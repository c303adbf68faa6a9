use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("term mentions the naturality generator and has no semialgebraic translation")]
    NonSemialgebraic,
    #[error("variable x{variable} occurs with degree {degree}; only degree <= 2 is supported")]
    UnsupportedDegree { variable: u32, degree: u32 },
    #[error("unsupported degree in term {index}: variable x{variable} has degree {degree}")]
    UnsupportedDegreeInTerm { index: usize, variable: u32, degree: u32 },
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("index {index} out of range for sequence of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cannot truncate a sequence of length 1")]
    LengthUnderflow,
    #[error("{requested} digits requested but the index list only covers {covered}")]
    InsufficientIndices { requested: u64, covered: u64 },
    #[error("found {found} of {wanted} ones within the first {bound} digits")]
    SearchBoundExceeded { wanted: usize, found: usize, bound: u64 },
    #[error("digit {digit} at position {position} is not 0 or 1")]
    InvalidDigit { position: u64, digit: u8 },
    #[error("formula has free variables where a closed sentence is required")]
    NotClosed,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl Error {
    /// Stable identifier used on diagnostic output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ArityMismatch(_) => "ArityMismatch",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::NonSemialgebraic => "NonSemialgebraic",
            Error::UnsupportedDegree { .. } | Error::UnsupportedDegreeInTerm { .. } => "UnsupportedDegree",
            Error::OutOfRange(_) => "OutOfRange",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::LengthUnderflow => "LengthUnderflow",
            Error::InsufficientIndices { .. } => "InsufficientIndices",
            Error::SearchBoundExceeded { .. } => "SearchBoundExceeded",
            Error::InvalidDigit { .. } => "InvalidDigit",
            Error::NotClosed => "NotClosed",
            Error::InvalidInstance(_) => "InvalidInstance",
            Error::Overflow(_) => "Overflow",
        }
    }
}
