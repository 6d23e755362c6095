use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone generator {0} is the zero vector")]
    ZeroGenerator(usize),
    #[error("maximal cone {0} is not full-dimensional")]
    NotFullDimensional(usize),
    #[error("the fan family needs n >= 3, got {0}")]
    InvalidN(usize),
    #[error("the anticanonical class is not in the interior of the effective cone")]
    NotInterior,
    #[error("the zero vector has no divisibility index")]
    ZeroVector,
    #[error("cone is not pointed or not full-dimensional; cannot triangulate its dual")]
    TriangulationFailure,
    #[error("gale data has {degrees} degrees for {rays} rays")]
    GaleShape { degrees: usize, rays: usize },
}
