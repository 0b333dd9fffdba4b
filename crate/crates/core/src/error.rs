use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element index {0} out of range for group of order {1}")]
    BadElement(usize, usize),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("group order {0} exceeds the supported cap {1}")]
    CapExceeded(usize, usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup of the given group")]
    NotSubgroup,
    #[error("the given set does not generate the group")]
    NotGenerating,
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("cannot shorten an empty word")]
    EmptyWord,
    #[error("walk is not closed in the quotient")]
    NotClosed,
    #[error("walk is not vertex-simple in the quotient")]
    NotSimple,
    #[error("voltage does not generate the required subgroup")]
    VoltageInsufficient,
    #[error("precondition violated: {0}")]
    BadInput(String),
    #[error("required edge or path pattern not found: {0}")]
    PatternNotFound(String),
    #[error("cycles are not vertex-disjoint")]
    NotDisjoint,
    #[error("parity condition violated: {0}")]
    BadParity(String),
    #[error("invalid family parameters: {0}")]
    BadAction(String),
    #[error("search exhausted after {nodes} nodes")]
    Exhausted { nodes: u64 },
    #[error("no hamiltonian cycle found: {0}")]
    NoCycleFound(String),
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
    #[error("invalid input format: {0}")]
    InvalidFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
