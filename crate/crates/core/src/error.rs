use thiserror::Error;

/// Broad classes of failure, used by frontends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Budget,
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("NonCoherentStructure: state {lower} fails the system but {upper} (more failures) does not")]
    NonCoherentStructure { lower: String, upper: String },

    #[error("DegenerateStructure: the system {}", if *.always_failed { "fails in every state" } else { "never fails" })]
    DegenerateStructure { always_failed: bool },

    #[error("truth table input is limited to {max} components, got {components}; supply cutsets instead")]
    TruthTableTooLarge { components: usize, max: usize },

    #[error("invalid LP problem: {0}")]
    InvalidProblem(String),

    #[error("BudgetTooSmall: {requested} tests requested but the optimal proportions need at least N0 = {n_zero} (try N+ = {n_zero})")]
    BudgetTooSmall { requested: u64, n_zero: u64 },

    #[error("InvalidAlpha: alpha must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("SearchSpaceTooLarge: {count} allocations exceed the cap of {cap}")]
    SearchSpaceTooLarge { count: String, cap: u64 },

    #[error("TooManyConstraints: vertex enumeration needs rows + columns <= {max}, got {actual}")]
    TooManyConstraints { actual: usize, max: usize },

    #[error("N0 = {0} does not fit in a 64-bit integer")]
    NZeroOverflow(String),

    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Variant name, stable across releases.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidStructure(_) => "InvalidStructure",
            Error::NonCoherentStructure { .. } => "NonCoherentStructure",
            Error::DegenerateStructure { .. } => "DegenerateStructure",
            Error::TruthTableTooLarge { .. } => "TruthTableTooLarge",
            Error::InvalidProblem(_) => "InvalidProblem",
            Error::BudgetTooSmall { .. } => "BudgetTooSmall",
            Error::InvalidAlpha(_) => "InvalidAlpha",
            Error::InvalidPlan(_) => "InvalidPlan",
            Error::SearchSpaceTooLarge { .. } => "SearchSpaceTooLarge",
            Error::TooManyConstraints { .. } => "TooManyConstraints",
            Error::NZeroOverflow(_) => "NZeroOverflow",
            Error::UnknownStrategy { .. } => "UnknownStrategy",
            Error::Internal(_) => "Internal",
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BudgetTooSmall { .. } => ErrorKind::Budget,
            Error::Internal(_) | Error::NZeroOverflow(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
