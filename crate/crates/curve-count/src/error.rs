use exact_arith::ArithError;
use lattice_fan::FanError;
use point_count::CountError;
use thiserror::Error;
use variety_model::ModelError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("enumeration cap exceeded: {0}")]
    Cap(String),
    #[error("inconsistent degree data: {0}")]
    Degrees(String),
    #[error("admissible tuple count {raw} for y = {y:?} is not divisible by (q-1)^{rank}")]
    NotDivisible { y: Vec<i64>, raw: u64, rank: usize },
    #[error("solution count {count} is not a power of {q}")]
    NotPower { count: u128, q: u64 },
    #[error("unsupported descriptor: {0}")]
    Unsupported(String),
}
