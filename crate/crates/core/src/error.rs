use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed text input.
    Parse,
    /// A well-formed request that violates an operation's precondition.
    Precondition,
    /// An explicit iteration cap was exhausted.
    StepCap,
    /// A broken internal invariant; always a bug.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("zero polynomial has no order")]
    ZeroPolynomial,
    #[error("{var}^{power} does not divide the polynomial")]
    NotDivisible { var: char, power: u32 },
    #[error("polynomial involves variables other than {0}")]
    NotUnivariate(char),
    #[error("polynomial involves Z")]
    NotBivariate,
    #[error("invalid Weierstrass surface: {0}")]
    InvalidSurface(String),
    #[error("translation {0} is a unit")]
    UnitTranslation(String),
    #[error("characteristic {p} divides the multiplicity {n}")]
    CharacteristicDividesDegree { p: u64, n: u32 },
    #[error("({0}) is not a vertex of the polygon")]
    NotAVertex(String),
    #[error("vertex contraction did not finish within {0} steps")]
    ContractionCapExceeded(usize),
    #[error("center (Z,{0}) is not permitted")]
    NotPermitted(String),
    #[error("direction ({0}) is not a near point")]
    NotNearPoint(String),
    #[error("invalid center: {0}")]
    InvalidCenter(String),
    #[error("surface is neither WT nor minimized; Z = 0 may not have maximal contact")]
    NoMaximalContact,
    #[error("multiplicity did not drop within {0} steps")]
    StepCapReached(usize),
    #[error("parameter m = {0} is below the required bound 19")]
    ParameterOutOfRange(u32),
    #[error("syntax error at column {}: {msg}", .pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("line {line}: {msg}")]
    Script { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. } | Error::Script { .. } => ErrorKind::Parse,
            Error::ContractionCapExceeded(_) | Error::StepCapReached(_) => ErrorKind::StepCap,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }

    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }
}
