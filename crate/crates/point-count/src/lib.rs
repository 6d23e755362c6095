//! Point counts over finite fields: the bilinear hypersurfaces, torsor
//! counts of Cox-data varieties (brute force and stratum by stratum), the
//! counting polynomial in `q`, and truncated Euler products.

pub mod bilinear;
pub mod count;
mod error;
pub mod gamma;
pub mod interp;

pub use bilinear::{count_bilinear, count_bilinear_brute, count_bilinear_closed};
pub use count::{
    brute_allowed, count_open, count_points, points_exact, solutions_with_support, Method, PointCountReport,
};
pub use error::CountError;
pub use gamma::{gamma_truncated, places_of_degree, GammaReport};
pub use interp::{counting_polynomial, CountingPolynomial};
