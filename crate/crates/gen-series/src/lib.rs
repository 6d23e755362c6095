//! Generating series whose `rho`-exponent is a minimum (possibly with a
//! ceiling correction) of affine forms: truncated expansions, degree bounds,
//! exact values at `t = 1/q`, and the local identity comparing them with
//! point counts.

pub mod bounds;
pub mod dp6;
mod error;
pub mod exact;
pub mod exponent;
pub mod local;
pub mod series;

pub use bounds::{check_degree_bounds, convergence_certificate, min_shift_holds, ConvergenceReport, DegreeCertificate};
pub use dp6::{dp6a2_coeff, times_dp6a2_numerator};
pub use error::SeriesError;
pub use exact::{cross_check, exact_ftilde_at, truncated_ftilde_at, CrossCheck};
pub use exponent::ExponentForm;
pub use local::{check_local_identity, local_density, local_density_brute, local_factor, LocalIdentity};
pub use series::{parse_series_dump, series_truncate, TruncatedSeries};

pub(crate) fn ser_rational<S: serde::Serializer>(x: &exact_arith::BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
