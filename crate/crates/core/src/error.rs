use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("group order {order} exceeds the brute-force cap of {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("{count} {what} exceeds the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        count: u128,
        budget: u128,
    },

    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("not a lattice: {0}")]
    NotALattice(String),

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures that signal a broken internal invariant rather than
    /// bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
