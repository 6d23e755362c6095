//! `#X(F_q)` as a polynomial in `q`, by exact interpolation at small prime
//! powers and validation at held-out ones.

use crate::count::points_exact;
use crate::CountError;
use exact_arith::numth::is_prime_power;
use exact_arith::{BigInt, BigRational};
use num_traits::{One, Zero};
use serde::Serialize;
use variety_model::VarietyDescriptor;

pub const HOLDOUTS: [u64; 2] = [7, 8];

#[derive(Clone, Debug, Serialize)]
pub struct CountingPolynomial {
    /// Ascending coefficients.
    #[serde(serialize_with = "ser_coeffs")]
    pub coeffs: Vec<BigInt>,
    pub nodes: Vec<u64>,
    pub holdouts: Vec<u64>,
}

fn ser_coeffs<S: serde::Serializer>(c: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(c.len()))?;
    for x in c {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl CountingPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }
}

/// Lagrange interpolation through `(x_i, y_i)`, ascending coefficients.
pub fn interpolate(points: &[(u64, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(BigInt::from(*xj));
            }
            basis = next;
            denom *= BigInt::from(*xi as i64 - *xj as i64);
        }
        let scale = BigRational::new(yi.clone(), denom);
        for (k, c) in basis.into_iter().enumerate() {
            out[k] += c * &scale;
        }
    }
    out
}

/// Interpolates at the first `2d + 2` prime powers other than the holdouts,
/// where `d = #coordinates - rank Pic`, then checks the holdouts.
pub fn counting_polynomial(v: &VarietyDescriptor) -> Result<CountingPolynomial, CountError> {
    let d = v.coord_count() - v.pic_rank();
    let nodes: Vec<u64> = (2u64..).filter(|&q| is_prime_power(q) && !HOLDOUTS.contains(&q)).take(2 * d + 2).collect();
    let samples: Vec<(u64, BigInt)> = nodes.iter().map(|&q| Ok((q, points_exact(v, q)?))).collect::<Result<_, CountError>>()?;
    let rational = interpolate(&samples);
    if rational.iter().any(|c| !c.is_integer()) {
        return Err(CountError::NotPolynomial { bound: d });
    }
    let mut coeffs: Vec<BigInt> = rational.into_iter().map(|c| c.to_integer()).collect();
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() > d + 1 {
        return Err(CountError::NotPolynomial { bound: d });
    }
    let poly = CountingPolynomial { coeffs, nodes, holdouts: HOLDOUTS.to_vec() };
    for q in HOLDOUTS {
        let actual = points_exact(v, q)?;
        let predicted = poly.eval(&BigInt::from(q));
        if predicted != actual {
            return Err(CountError::HoldoutFailed { q, predicted, actual });
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use variety_model::{builtin_dp6a2, builtin_xn};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn x3_is_blown_up_plane() {
        let p = counting_polynomial(&builtin_xn(3).unwrap()).unwrap();
        assert_eq!(p.coeffs, ints(&[1, 4, 1]));
        assert!(!p.nodes.contains(&7) && !p.nodes.contains(&8));
    }

    #[test]
    fn x4_cubic_with_constant_one() {
        let p = counting_polynomial(&builtin_xn(4).unwrap()).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.coeffs[0], BigInt::one());
    }

    #[test]
    fn dp6a2_interpolates() {
        let p = counting_polynomial(&builtin_dp6a2()).unwrap();
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn interpolation_recovers_a_cubic() {
        let pts: Vec<(u64, BigInt)> = [2u64, 3, 5, 9].iter().map(|&x| (x, BigInt::from(x * x * x - 2 * x + 7))).collect();
        let c = interpolate(&pts);
        let want = [7, -2, 0, 1];
        for (a, b) in c.iter().zip(want) {
            assert_eq!(*a, BigRational::from_integer(BigInt::from(b)));
        }
    }
}
