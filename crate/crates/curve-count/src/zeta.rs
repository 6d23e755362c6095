//! Curve counts next to the predicted main term `gamma_B #{y} q^m`.

use crate::brute::brute_force_n;
use crate::CurveError;
use exact_arith::{BigInt, BigRational};
use lattice_fan::enumerate_dual_points;
use num_traits::One;
use point_count::gamma_truncated;
use serde::Serialize;
use variety_model::VarietyDescriptor;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaRow {
    pub m: i64,
    #[serde(rename = "N")]
    pub n: String,
    pub main_term_num: String,
    pub main_term_den: String,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaReport {
    pub variety: String,
    pub q: u64,
    pub rows: Vec<ZetaRow>,
}

/// The main term with the Euler product truncated at places of degree
/// `euler_bound`.
pub fn main_term(v: &VarietyDescriptor, q: u64, m: i64, gamma: &BigRational) -> Result<BigRational, CurveError> {
    let ys = enumerate_dual_points(&v.eff_cone(), &v.anticanonical()?, m, &[])?;
    let qm = BigInt::from(q).pow(m.max(0) as u32);
    Ok(gamma * BigRational::from_integer(BigInt::from(ys.len()) * qm))
}

pub fn zeta_report(v: &VarietyDescriptor, q: u64, m_max: i64, euler_bound: u32) -> Result<ZetaReport, CurveError> {
    let gamma = gamma_truncated(v, q, euler_bound, None)?.partial_gamma.last().cloned().unwrap_or_else(BigRational::one);
    let mut rows = Vec::new();
    for m in 0..=m_max {
        let count = brute_force_n(v, q, m)?;
        let main = main_term(v, q, m, &gamma)?;
        rows.push(ZetaRow {
            m,
            n: count.total.to_string(),
            main_term_num: main.numer().to_string(),
            main_term_den: main.denom().to_string(),
            complete: count.complete(),
        });
    }
    Ok(ZetaReport { variety: v.name.clone(), q, rows })
}
