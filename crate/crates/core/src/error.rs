use std::fmt;

/// Error type shared by every module of the crate.
///
/// The variants mirror the process exit codes of the command-line tool:
/// `Parse` maps to 4 (malformed input), `Resource` to 3 (enumeration budget
/// exceeded), and everything else to 2 (domain error).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Dimension or modulus mismatch between operands.
    Shape(String),
    /// Input outside the domain of the operation.
    Domain(String),
    /// A stated precondition was violated.
    Precondition(String),
    /// An enumeration budget would be exceeded.
    Resource(String),
    /// A matrix that must be invertible is singular, or a frame degenerate.
    Degenerate(String),
    /// Malformed textual or JSON input.
    Parse(String),
    /// An internal consistency check failed; indicates a bug.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(m) => write!(f, "shape error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Resource(m) => write!(f, "resource budget exceeded: {m}"),
            Error::Degenerate(m) => write!(f, "degenerate input: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn shape(m: impl Into<String>) -> Self {
        Error::Shape(m.into())
    }
    pub fn domain(m: impl Into<String>) -> Self {
        Error::Domain(m.into())
    }
    pub fn precondition(m: impl Into<String>) -> Self {
        Error::Precondition(m.into())
    }
    pub fn resource(m: impl Into<String>) -> Self {
        Error::Resource(m.into())
    }
    pub fn degenerate(m: impl Into<String>) -> Self {
        Error::Degenerate(m.into())
    }
    pub fn parse(m: impl Into<String>) -> Self {
        Error::Parse(m.into())
    }
    pub fn internal(m: impl Into<String>) -> Self {
        Error::Internal(m.into())
    }
}
