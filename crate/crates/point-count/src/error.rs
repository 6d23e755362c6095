use exact_arith::{ArithError, BigInt};
use thiserror::Error;
use variety_model::ModelError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CountError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("torsor count {raw} over F_{q} is not divisible by (q-1)^{rank}")]
    NotDivisible { q: u64, raw: BigInt, rank: usize },
    #[error("brute force over F_{q} with {coords} coordinates exceeds the enumeration cap")]
    BruteCap { q: u64, coords: usize },
    #[error("interpolated count predicts {predicted} at q={q} but the direct count is {actual}")]
    HoldoutFailed { q: u64, predicted: BigInt, actual: BigInt },
    #[error("interpolated count is not an integer polynomial of degree <= {bound}")]
    NotPolynomial { bound: usize },
    #[error("no counting polynomial and F_{q} is out of reach for direct counting")]
    MissingCounts { q: String },
}
