use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    EmptyFamily,
    /// A parameter that must be nonnegative (or positive) was not.
    InvalidParameter {
        name: &'static str,
        value: f64,
    },
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    DuplicateSupport {
        index: usize,
    },
    NotNormalized {
        norm: f64,
    },
    DuplicateLabel(String),
    Infeasible,
    Unbounded,
    NumericalFailure(String),
    /// A documented precondition did not hold; the message names the
    /// violated inequality.
    Precondition(String),
    /// A post-condition of a construction failed to verify.
    Certificate(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyFamily => f.write_str("function family is empty"),
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid value {value} for parameter `{name}`")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "point index {index} out of range for dimension {len}")
            }
            Error::DuplicateSupport { index } => {
                write!(f, "support index {index} appears more than once")
            }
            Error::NotNormalized { norm } => {
                write!(f, "functional has total variation {norm}, expected 1")
            }
            Error::DuplicateLabel(l) => write!(f, "duplicate point label `{l}`"),
            Error::Infeasible => f.write_str("constraint set is infeasible"),
            Error::Unbounded => f.write_str("constraint set or objective is unbounded"),
            Error::NumericalFailure(m) => write!(f, "numerical failure: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::Certificate(m) => write!(f, "certificate failed: {m}"),
        }
    }
}

impl core::error::Error for Error {}
