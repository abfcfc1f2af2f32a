use thiserror::Error;

use crate::mvpoly::Poly;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands live over different fields or ambient rings")]
    Mismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("polynomial division is not exact")]
    NotDivisible { remainder: Box<Poly> },
    #[error("series division is not exact")]
    InexactDivision,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("element is not invariant under the subgroup")]
    NotInvariant,
    #[error("subgroup is not contained in the group")]
    NotSubgroup,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("work bound exceeded: {0}")]
    WorkBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
