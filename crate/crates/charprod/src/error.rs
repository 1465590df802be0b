use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("group is not abelian")]
    NotAbelian,

    #[error("enumeration bound exceeded: needed {needed} elements, bound is {bound}")]
    EnumerationBoundExceeded { needed: u128, bound: u128 },

    #[error("value is not a rational integer: {0}")]
    NotAnInteger(String),

    #[error("multiplicity is not a non-negative integer: {0}")]
    IntegralityViolation(String),

    #[error("class functions live on different groups")]
    GroupMismatch,

    #[error("action axioms fail: {0}")]
    InvalidAction(String),

    #[error("stabilizer violation: {0}")]
    StabilizerViolation(String),

    #[error("group is not in the expected semidirect normal form")]
    NormalFormUnavailable,

    #[error("irreducible search incomplete: found {found} of {expected} characters")]
    IncompleteIrrSet { found: usize, expected: usize },

    #[error("character is not irreducible (norm {0})")]
    NotIrreducible(String),

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
