use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element name `{0}`")]
    DuplicateName(String),

    #[error("carrier of {0} elements exceeds the 64-element limit")]
    TooLarge(usize),

    #[error("empty carrier")]
    EmptyCarrier,

    #[error("order is not antisymmetric: `{0}` and `{1}` refine each other")]
    NotAntisymmetric(String, String),

    #[error("{what}: {actual} exceeds the cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u128,
        actual: u128,
    },

    #[error("not a Boolean algebra: {0}")]
    NotBoolean(String),

    #[error("not a lattice: {0}")]
    NotLattice(String),

    #[error("not a locale: {0}")]
    NotLocale(String),

    #[error("degenerate algebra: at least two elements are required")]
    Degenerate,

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("not a nucleus: {0}")]
    NotNucleus(String),

    #[error("operator on index `{index}` does not distribute over finite meets: {witness}")]
    NotMultiplicative { index: String, witness: String },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("unknown modal index `{0}`")]
    UnknownIndex(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("arity mismatch for `{name}`: expected {expected}, found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("propositional quantifiers need a full frame")]
    NotFull,

    #[error("formula outside the supported fragment: {0}")]
    Fragment(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown condition `{0}`")]
    UnknownCondition(String),

    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

impl Error {
    pub(crate) fn cap(what: &'static str, limit: impl Into<u128>, actual: impl Into<u128>) -> Self {
        Error::CapExceeded {
            what,
            limit: limit.into(),
            actual: actual.into(),
        }
    }
}

/// A failed structural check: which condition broke, and a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: String,
    pub witness: String,
}

impl Violation {
    pub fn new(condition: impl Into<String>, witness: impl Into<String>) -> Self {
        Violation {
            condition: condition.into(),
            witness: witness.into(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails: {}", self.condition, self.witness)
    }
}

/// Outcome of a condition check; `Err` carries the first counterexample found.
pub type Verdict = std::result::Result<(), Violation>;
