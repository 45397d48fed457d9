use thiserror::Error;

/// Errors raised by group construction and the algorithms built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table has no identity element")]
    NoIdentity,
    #[error("table is not a latin square: {what} {index} repeats entry {entry}")]
    NotLatinSquare {
        what: &'static str,
        index: usize,
        entry: usize,
    },
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("generator {index} is not a permutation of {degree} points")]
    NotAPermutation { index: usize, degree: usize },
    #[error("closure exceeded the element cap of {cap}")]
    ClosureCapExceeded { cap: usize },
    #[error("order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("more than {cap} normal subgroups")]
    LatticeCapExceeded { cap: usize },
    #[error("more than {cap} subgroups")]
    SubgroupCountCapExceeded { cap: usize },
    #[error("isomorphism search exceeded {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unknown group atom `{0}`")]
    UnknownAtom(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("subset is not a normal subgroup")]
    NotNormal,
    #[error("group is not monolithic ({count} minimal normal subgroups)")]
    NotMonolithic { count: usize },
    #[error("group is not solvable")]
    NotSolvable,
    #[error("empty factor list")]
    EmptyProduct,
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("syntax error at offset {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("arity error at offset {position}: {message}")]
    Arity { position: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that signal an exhausted resource budget rather than a wrong input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::ClosureCapExceeded { .. }
                | Error::OrderCapExceeded { .. }
                | Error::LatticeCapExceeded { .. }
                | Error::SubgroupCountCapExceeded { .. }
                | Error::SearchBudgetExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
