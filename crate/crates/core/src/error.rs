use num_bigint::BigInt;
use thiserror::Error;

use crate::rootsys::Weight;

/// Errors raised by the library. Every variant is a domain error; malformed
/// command-line input is handled separately by the CLI layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown type {0}")]
    UnknownType(String),
    #[error("invalid type {series}{rank}")]
    InvalidType { series: char, rank: usize },
    #[error("weight {weight} has {found} coordinates, expected {expected}")]
    RankMismatch {
        weight: String,
        expected: usize,
        found: usize,
    },
    #[error("simple reflection index {index} out of range for rank {rank}")]
    BadIndex { index: usize, rank: usize },
    #[error("{0} is not a root")]
    NotARoot(Weight),
    #[error("{0} is not dominant integral")]
    NotDominant(Weight),
    #[error("{0} is not integral")]
    NotIntegral(Weight),
    #[error("invalid level: {0}")]
    InvalidLevel(String),
    #[error("translation {0} does not lie in pQ")]
    TranslationNotInLattice(Weight),
    #[error("{0} is not in the open fundamental alcove")]
    NotInAlcove(Weight),
    #[error("{weight} is singular at p={p}")]
    Singular { weight: Weight, p: u64 },
    #[error("invalid translation datum: {0}")]
    InvalidDatum(String),
    #[error("dimension product {product} exceeds cap {cap}")]
    DimensionCap { product: BigInt, cap: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("iteration cap exceeded in {0}")]
    IterationCap(&'static str),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
