//! Lattices, rational polyhedral cones, the smooth projective fans `Sigma_n`
//! with checkable certificates, Gale-dual cones, and the dual-cone constants
//! `alpha` and `delta`.

pub mod cone;
pub mod dual;
mod error;
pub mod fan;
pub mod gale;
pub mod pic;
pub mod qlinalg;

pub use cone::{Cone, HRep};
pub use dual::{alpha, delta, dual_cone_rays, enumerate_dual_points, LowerBound};
pub use error::FanError;
pub use fan::{build_sigma_n, check_fan, family_rank, CheckConfig, Fan, FanCertificate, FanOrigin};
pub use gale::{gale_dual_cones, projectivity_witness, GaleCone, GaleData};
pub use pic::PicVector;
