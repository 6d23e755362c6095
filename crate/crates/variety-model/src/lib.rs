//! Cox data of the varieties studied here: generators, degrees, the single
//! relation, which coordinate divisors meet, the Moebius function `mu0` of
//! that incidence, and the cone-positivity conditions on the degrees.

pub mod descriptor;
mod error;
pub mod incidence;
pub mod mu;
pub mod positivity;

pub use descriptor::{
    builtin_by_name, builtin_dp6a2, builtin_xn, descriptor_to_json, parse_descriptor, Generator, IncidenceSource,
    RelationShape, VarietyDescriptor,
};
pub use error::ModelError;
pub use incidence::{is_f_face, rlv_and_incidence, xn_intersection_readings, Incidence};
pub use lattice_fan::PicVector;
pub use mu::{mu0, Mu0Table};
pub use positivity::{check_positivity, Condition, PositivityReport};
