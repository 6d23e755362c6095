//! Truncated expansion of `prod_i (1 - t_i) F_{rho,e}(t)` with polynomial
//! coefficients in `rho`.

use crate::exponent::ExponentForm;
use crate::SeriesError;
use exact_arith::RhoPolynomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use variety_model::VarietyDescriptor;

pub const MAX_VARS: usize = 6;
pub const MAX_BOX: u32 = 32;
/// Upper limit on the number of exponent vectors in a box.
pub const MAX_BOX_POINTS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub e: Vec<u32>,
    pub bound: u32,
    pub vars: usize,
    /// Nonzero coefficients only, keyed by the exponent vector over the
    /// active s-variables.
    pub coeffs: BTreeMap<Vec<u32>, RhoPolynomial>,
}

impl TruncatedSeries {
    /// `None` outside the box.
    pub fn coeff(&self, d: &[u32]) -> Option<RhoPolynomial> {
        if d.len() != self.vars || d.iter().any(|&x| x > self.bound) {
            return None;
        }
        Some(self.coeffs.get(d).cloned().unwrap_or_default())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dump = SeriesDump {
            e: self.e.clone(),
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, p)| DumpEntry { d: d.clone(), rho_poly: p.coeffs().to_vec() })
                .collect(),
        };
        serde_json::to_value(dump).expect("plain data")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesDump {
    e: Vec<u32>,
    #[serde(rename = "box")]
    bound: u32,
    coeffs: Vec<DumpEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DumpEntry {
    d: Vec<u32>,
    rho_poly: Vec<i64>,
}

/// Reads back a dump written by [`TruncatedSeries::to_json`]. The number of
/// variables is taken from the entries (zero for an empty dump).
pub fn parse_series_dump(text: &str) -> Result<TruncatedSeries, SeriesError> {
    let dump: SeriesDump = serde_json::from_str(text).map_err(|e| SeriesError::Dump(e.to_string()))?;
    if dump.bound > MAX_BOX {
        return Err(SeriesError::Dump(format!("box {} exceeds {MAX_BOX}", dump.bound)));
    }
    let vars = dump.coeffs.first().map_or(0, |c| c.d.len());
    if vars > MAX_VARS {
        return Err(SeriesError::Dump(format!("{vars} variables")));
    }
    let mut coeffs = BTreeMap::new();
    for entry in dump.coeffs {
        if entry.d.len() != vars {
            return Err(SeriesError::Dump("exponent vectors of different lengths".into()));
        }
        if entry.d.iter().any(|&x| x > dump.bound) {
            return Err(SeriesError::Dump(format!("exponent {:?} outside the box", entry.d)));
        }
        let p = RhoPolynomial::from_coeffs(entry.rho_poly);
        if p.is_zero() {
            continue;
        }
        if coeffs.insert(entry.d.clone(), p).is_some() {
            return Err(SeriesError::Dump(format!("exponent {:?} repeated", entry.d)));
        }
    }
    Ok(TruncatedSeries { e: dump.e, bound: dump.bound, vars, coeffs })
}

fn box_points(bound: u32, vars: usize) -> Result<u64, SeriesError> {
    let side = bound as u64 + 1;
    let total = side.checked_pow(vars as u32).filter(|&t| t <= MAX_BOX_POINTS);
    match total {
        Some(t) if vars <= MAX_VARS && bound <= MAX_BOX => Ok(t),
        _ => Err(SeriesError::BoxTooLarge { bound, vars }),
    }
}

pub(crate) fn unrank(mut idx: u64, side: u64, vars: usize) -> Vec<u32> {
    let mut d = vec![0u32; vars];
    for x in d.iter_mut().rev() {
        *x = (idx % side) as u32;
        idx /= side;
    }
    d
}

/// Exponent of `rho` at every point of `[0, bound]^vars`, in mixed-radix order
/// (last coordinate fastest).
pub(crate) fn phi_table(form: &ExponentForm, bound: u32) -> Result<Vec<i64>, SeriesError> {
    let total = box_points(bound, form.vars())?;
    let side = bound as u64 + 1;
    Ok((0..total).into_par_iter().map(|idx| form.phi(&unrank(idx, side, form.vars()))).collect())
}

/// Coefficients of `prod (1 - t_i) F_{rho,e}` on `[0, bound]^I`. Every shift
/// `d - 1_S` of an in-box `d` stays in the box, so `F` on the box suffices.
pub fn series_truncate(v: &VarietyDescriptor, e: &[u32], bound: u32) -> Result<TruncatedSeries, SeriesError> {
    let form = ExponentForm::new(v, e)?;
    let vars = form.vars();
    let phi = phi_table(&form, bound)?;
    let side = bound as u64 + 1;
    let strides: Vec<u64> = (0..vars).map(|a| side.pow((vars - 1 - a) as u32)).collect();
    let coeffs: BTreeMap<Vec<u32>, RhoPolynomial> = (0..phi.len() as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let d = unrank(idx, side, vars);
            let support: Vec<usize> = (0..vars).filter(|&a| d[a] > 0).collect();
            let mut p = RhoPolynomial::zero();
            for sub in 0u32..1 << support.len() {
                let mut at = idx;
                for (bit, &a) in support.iter().enumerate() {
                    if sub >> bit & 1 == 1 {
                        at -= strides[a];
                    }
                }
                let sign = if sub.count_ones() % 2 == 0 { 1 } else { -1 };
                p.add_term(phi[at as usize] as u32, sign);
            }
            (!p.is_zero()).then_some((d, p))
        })
        .collect();
    Ok(TruncatedSeries { e: e.to_vec(), bound, vars, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use variety_model::{builtin_dp6a2, builtin_xn};

    #[test]
    fn x3_diagonal_coefficients() {
        let v = builtin_xn(3).unwrap();
        let s = series_truncate(&v, &[0; 7], 6).unwrap();
        assert_eq!(s.coeff(&[0, 0, 0]).unwrap(), RhoPolynomial::monomial(0, 1));
        assert_eq!(s.coeff(&[1, 1, 1]).unwrap(), RhoPolynomial::from_coeffs(vec![-1, 1]));
        assert!(s.coeff(&[1, 2, 1]).unwrap().is_zero());
        assert!(s.coeff(&[7, 0, 0]).is_none());
        assert_eq!(s.coeffs.len(), 7);
    }

    #[test]
    fn dp6a2_small_coefficients_vanish() {
        let v = builtin_dp6a2();
        let s = series_truncate(&v, &vec![0; v.coord_count()], 3).unwrap();
        for d in [[0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 0, 0]] {
            assert!(s.coeff(&d).unwrap().is_zero(), "{d:?}");
        }
        assert_eq!(s.coeff(&[0, 0, 0]).unwrap(), RhoPolynomial::monomial(0, 1));
    }

    #[test]
    fn constant_term_is_rho_to_the_min_offset() {
        let v = builtin_xn(4).unwrap();
        let mut e = vec![0; 9];
        for k in [1, 2, 3, 4, 5, 6, 7, 8] {
            e[k] = 1;
        }
        let s = series_truncate(&v, &e, 1).unwrap();
        assert_eq!(s.coeff(&[0; 4]).unwrap(), RhoPolynomial::monomial(2, 1));
    }

    #[test]
    fn box_limits() {
        let v = builtin_xn(6).unwrap();
        assert!(matches!(series_truncate(&v, &[0; 13], 32), Err(SeriesError::BoxTooLarge { .. })));
        assert!(series_truncate(&builtin_xn(7).unwrap(), &[0; 15], 1).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let v = builtin_dp6a2();
        let s = series_truncate(&v, &[0, 1, 0, 0, 0, 1, 0], 4).unwrap();
        let text = s.to_json().to_string();
        assert!(text.contains("\"box\":4"));
        assert_eq!(parse_series_dump(&text).unwrap(), s);
    }

    #[test]
    fn dump_rejects_bad_input() {
        assert!(parse_series_dump(r#"{"e":[],"box":2,"coeffs":[{"d":[3],"rho_poly":[1]}]}"#).is_err());
        assert!(parse_series_dump(r#"{"e":[],"box":2,"coeffs":[{"d":[1],"rho_poly":[1]},{"d":[1,1],"rho_poly":[1]}]}"#)
            .is_err());
        assert!(parse_series_dump(r#"{"e":[],"box":2,"coeffs":[],"x":1}"#).is_err());
        assert!(parse_series_dump(r#"{"e":[],"box":99,"coeffs":[]}"#).is_err());
    }
}
