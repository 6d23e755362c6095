use exact_arith::ArithError;
use point_count::CountError;
use thiserror::Error;
use variety_model::ModelError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("pattern has {got} entries, expected {want}")]
    PatternLength { got: usize, want: usize },
    #[error("pattern entries must be 0 or 1 here")]
    NotBinary,
    #[error("box bound {bound} with {vars} series variables is too large")]
    BoxTooLarge { bound: u32, vars: usize },
    #[error("exact evaluation needs each monomial to carry exactly one s-variable with exponent 1: {0}")]
    Unsupported(String),
    #[error("the series does not converge at t = 1/q")]
    Divergent,
    #[error("enumeration of {0} points exceeds the brute-force cap")]
    BruteCap(u64),
    #[error("malformed series dump: {0}")]
    Dump(String),
}
