use thiserror::Error;

/// Position-annotated syntax error from one of the text parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(text: &str, offset: usize, message: impl Into<String>) -> Self {
        let (line, col) = line_col(text, offset);
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

/// 1-based line and column (in chars) of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in text.char_indices() {
        if i >= offset {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("element is not a member of the group")]
    NotMember,

    #[error("subgroup is not contained in the parent group")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("{what} exceeds cap: {size} > {cap}")]
    CapExceeded { what: &'static str, size: String, cap: u64 },

    #[error("search budget exhausted after {used} steps")]
    BudgetExhausted { used: u64 },

    #[error("group is not supersoluble")]
    NotSupersoluble,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(u32, u32),

    #[error("action is not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

impl Error {
    /// Stable machine-readable code, used in CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::NotMember => "not_member",
            Error::NotSubgroup => "not_subgroup",
            Error::NotNormal => "not_normal",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::BudgetExhausted { .. } => "budget_exhausted",
            Error::NotSupersoluble => "not_supersoluble",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::FieldMismatch(..) => "field_mismatch",
            Error::NotHomomorphism(_) => "not_homomorphism",
            Error::Precondition(_) => "precondition",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::UnknownName(_) => "unknown_name",
            Error::Parse(_) => "parse_error",
        }
    }

    pub(crate) fn cap(what: &'static str, size: impl ToString, cap: u64) -> Self {
        Error::CapExceeded {
            what,
            size: size.to_string(),
            cap,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
