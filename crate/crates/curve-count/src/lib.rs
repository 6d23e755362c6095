//! Morphisms from `P^1` over `F_q` into varieties given by Cox data: binary
//! forms and divisors, the kernels of the counting lemmas, the Moebius
//! function on divisor tuples, and two independent counts of morphisms of
//! bounded anticanonical degree (direct enumeration and the torsor lifting
//! formula).

pub mod brute;
pub mod divisor;
mod error;
pub mod form;
pub mod kernel;
pub mod lifting;
pub mod mu;
pub mod nde;
pub mod relation;
pub mod zeta;

pub use brute::{brute_force_n, CurveCount, MultidegreeCount};
pub use divisor::{divisor_count, ell, enumerate_divisors, EffDivisor, Place};
pub use error::CurveError;
pub use form::Form;
pub use kernel::{check_linear, check_quasi, kernel_count, kernel_dim, linear_suite, quasi_suite, SectionData, SuiteReport};
pub use lifting::{lifting_rhs, lifting_rhs_twisted};
pub use mu::MuDivCache;
pub use nde::{count_nde, count_nde_nonzero};
pub use zeta::{zeta_report, ZetaReport, ZetaRow};
