use lattice_fan::FanError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("the family X_n needs n >= 3, got {0}")]
    InvalidN(usize),
    #[error("descriptor has {0} coordinates; at most 24 are supported")]
    TooManyCoordinates(usize),
    #[error("degree of {id} has length {got}, expected the Pic rank {rank}")]
    DegreeLength { id: String, got: usize, rank: usize },
    #[error("exponent matrix must be {rows} x {cols}")]
    ExponentShape { rows: usize, cols: usize },
    #[error("relation is not homogeneous: monomial {j} has degree {got:?}, expected {want:?}")]
    Inhomogeneous { j: usize, got: Vec<i64>, want: Vec<i64> },
    #[error("quasi-linear relations need at least two t-generators")]
    QuasiLinearTooSmall,
    #[error("the anticanonical class {0:?} is not in the interior of the effective cone")]
    NotInterior(Vec<i64>),
    #[error("no incidence data: supply a fan, an ample class or an explicit list")]
    NoIncidence,
    #[error("explicit incidence data must carry provenance \"external\", got {0:?}")]
    Provenance(String),
    #[error("unknown generator id {0:?}")]
    UnknownId(String),
    #[error("fan rays ({rays}) do not match the coordinates ({coords})")]
    FanShape { rays: usize, coords: usize },
    #[error("malformed descriptor: {0}")]
    Json(String),
    #[error(transparent)]
    Fan(#[from] FanError),
}
