//! Truncated Euler product for the constant `gamma(X)` over `P^1_{F_q}`:
//! `(q/(q-1))^r q^{dim X} prod_v (1 - q_v^{-1})^r #X(k_v) / q_v^{dim X}`,
//! with `r = rank Pic`, over the closed points `v` of degree at most `B`
//! (the point at infinity counts as one extra place of degree 1).

use crate::count::{points_exact, q_pow};
use crate::interp::CountingPolynomial;
use crate::CountError;
use exact_arith::numth::count_monic_irreducible;
use exact_arith::{BigInt, BigRational};
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use variety_model::VarietyDescriptor;

fn ser_q<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceFactor {
    pub degree: u32,
    pub places: String,
    pub points: String,
    /// `(1 - q^{-f})^r #X(F_{q^f}) / q^{f dim X}` for one place.
    #[serde(serialize_with = "ser_q")]
    pub factor: BigRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaReport {
    pub q: u64,
    pub bound: u32,
    pub factors: Vec<PlaceFactor>,
    /// Euler product over places of degree <= b, for b = 1..=bound.
    #[serde(serialize_with = "ser_vec_q")]
    pub partial_products: Vec<BigRational>,
    /// The same with the global normalising factor in front.
    #[serde(serialize_with = "ser_vec_q")]
    pub partial_gamma: Vec<BigRational>,
    /// Ratio of the last two partial products: a convergence indicator, not a bound.
    #[serde(serialize_with = "ser_q")]
    pub last_step_ratio: BigRational,
}

fn ser_vec_q<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

/// Number of closed points of `P^1` of degree `f`.
pub fn places_of_degree(q: u64, f: u32) -> BigInt {
    let finite = count_monic_irreducible(q, f);
    if f == 1 {
        finite + BigInt::one()
    } else {
        finite
    }
}

fn pow_q(x: &BigRational, e: &BigInt) -> BigRational {
    let e = e.to_u64().expect("place counts are small here");
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// `#X(F_{q^f})` from the polynomial when present, else by strata counting.
fn points_over(v: &VarietyDescriptor, poly: Option<&CountingPolynomial>, q: u64, f: u32) -> Result<BigInt, CountError> {
    let qf = q_pow(q, f);
    if let Some(p) = poly {
        return Ok(p.eval(&qf));
    }
    match qf.to_u64() {
        Some(small) if small < 1 << 40 => points_exact(v, small),
        _ => Err(CountError::MissingCounts { q: qf.to_string() }),
    }
}

pub fn gamma_truncated(
    v: &VarietyDescriptor,
    q: u64,
    bound: u32,
    poly: Option<&CountingPolynomial>,
) -> Result<GammaReport, CountError> {
    let r = v.pic_rank() as u32;
    let dim = v.dim() as u32;
    let mut factors = Vec::new();
    let mut partial = BigRational::one();
    let mut partial_products = Vec::new();
    for f in 1..=bound {
        let qf = q_pow(q, f);
        let pts = points_over(v, poly, q, f)?;
        let one_minus = BigRational::one() - BigRational::new(BigInt::one(), qf.clone());
        let local = pow_q(&one_minus, &BigInt::from(r)) * BigRational::new(pts.clone(), qf.pow(dim));
        let n_places = places_of_degree(q, f);
        partial *= pow_q(&local, &n_places);
        partial_products.push(partial.clone());
        factors.push(PlaceFactor { degree: f, places: n_places.to_string(), points: pts.to_string(), factor: local });
    }
    let qb = BigInt::from(q);
    let norm = pow_q(&BigRational::new(qb.clone(), qb.clone() - BigInt::one()), &BigInt::from(r))
        * BigRational::from_integer(qb.pow(dim));
    let partial_gamma = partial_products.iter().map(|p| p * &norm).collect();
    let last_step_ratio = match partial_products.as_slice() {
        [.., a, b] => b / a,
        _ => BigRational::one(),
    };
    Ok(GammaReport { q, bound, factors, partial_products, partial_gamma, last_step_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rational::{frac, rpow, to_f64};
    use variety_model::builtin_xn;

    #[test]
    fn x3_degree_one_places() {
        let v = builtin_xn(3).unwrap();
        let g = gamma_truncated(&v, 2, 1, None).unwrap();
        assert_eq!(g.factors[0].places, "3");
        let local = rpow(&frac(1, 2), 4) * frac(13, 4);
        assert_eq!(g.factors[0].factor, local);
        assert_eq!(g.partial_products[0], rpow(&local, 3));
    }

    #[test]
    fn one_place_of_degree_two_over_f2() {
        assert_eq!(places_of_degree(2, 2), BigInt::from(1));
        assert_eq!(places_of_degree(2, 1), BigInt::from(3));
    }

    #[test]
    fn successive_partials_settle() {
        let v = builtin_xn(3).unwrap();
        let g = gamma_truncated(&v, 2, 9, None).unwrap();
        for b in 4..9usize {
            let ratio = to_f64(&(&g.partial_products[b] / &g.partial_products[b - 1]));
            let tol = 4.0 * 2f64.powi(-(b as i32));
            assert!((ratio - 1.0).abs() <= tol, "B={b}: {ratio}");
        }
    }
}
