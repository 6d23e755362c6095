//! Exact arithmetic: prime fields and small extensions, univariate polynomials
//! over them, GF(q) linear algebra, integer polynomials in a formal mark, and
//! a few number-theoretic helpers.

mod degree;
mod error;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod numth;
pub mod poly;
mod primitive_table;
pub mod rational;
pub mod rho;

pub use degree::Degree;
pub use error::ArithError;
pub use factor::{factor, is_irreducible, monic_irreducibles, Factorization};
pub use field::{field_make, Elem, FiniteField};
pub use poly::FqPoly;
pub use rational::{BigInt, BigRational};
pub use rho::{rho_eval, RhoPolynomial};
