use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure of one of the group axioms, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    NotSquare { row: usize, len: usize, order: usize },
    OutOfRange { row: usize, col: usize, value: usize },
    RowNotPermutation { row: usize },
    ColumnNotPermutation { col: usize },
    NoIdentity,
    NotAssociative { a: usize, b: usize, c: usize },
    NoInverse { element: usize },
    Empty,
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::NotSquare { row, len, order } => {
                write!(f, "row {row} has length {len}, expected {order}")
            }
            AxiomViolation::OutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is not an element index")
            }
            AxiomViolation::RowNotPermutation { row } => write!(f, "row {row} is not a permutation"),
            AxiomViolation::ColumnNotPermutation { col } => {
                write!(f, "column {col} is not a permutation")
            }
            AxiomViolation::NoIdentity => write!(f, "no two-sided identity"),
            AxiomViolation::NotAssociative { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
            AxiomViolation::NoInverse { element } => {
                write!(f, "element {element} has no two-sided inverse")
            }
            AxiomViolation::Empty => write!(f, "empty table"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(AxiomViolation),
    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("{what} of order {order} exceeds the cap {cap}")]
    OrderCapExceeded { what: String, order: u128, cap: u128 },
    #[error("search of {nodes} nodes exceeds the cap {cap}")]
    SearchCapExceeded { nodes: u128, cap: u128 },
    #[error("{points} points exceeds the G-set scan cap {cap}")]
    SizeCapExceeded { points: u128, cap: u128 },
    #[error("letter {letter} is out of range for {generators} generators")]
    BadLetter { letter: i32, generators: usize },
    #[error("target group is not a wreath product")]
    TargetNotWreath,
    #[error("unsupported source group: {0}")]
    UnsupportedSource(String),
    #[error("source group is not finite")]
    SourceNotFinite,
    #[error("descriptor misses the subgroup class {0}")]
    MissingClass(String),
    #[error("descriptor covers the subgroup class {0} more than once")]
    DuplicateClass(String),
    #[error("conjugate keys for class {class} carry different values {first} and {second}")]
    ConjugacyConflict { class: String, first: i64, second: i64 },
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("homomorphism target does not match the descriptor group")]
    GroupMismatch,
    #[error("subgroup does not centralize the constraint set")]
    NotCentralizing,
    #[error("subgroup does not normalize the constraint subgroup")]
    NotNormalizing,
    #[error("non-integer orbit-space Euler characteristic {0}")]
    NonIntegerResult(String),
    #[error("constant term must be {expected}, found {found}")]
    BadConstantTerm { expected: i64, found: String },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for the resource-cap family of errors.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::SearchCapExceeded { .. }
                | Error::SizeCapExceeded { .. }
        )
    }
}
