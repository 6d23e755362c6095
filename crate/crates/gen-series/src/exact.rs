//! Exact value of `prod (1 - t_i) F_{q,e}` at `t_i = 1/q`.
//!
//! After the substitution `y_j = d_j + nu_j` (one series variable per
//! monomial) the sum is `q^{|nu|} sum_{y >= nu} q^{phi(y) - |y|}`. It is split
//! by which `y_j` is the first minimiser (and, for the squared shape, whether
//! `y_0` lies below that minimum). Each piece is a finite sum below
//! `M = max nu + 1` plus a tail that is geometric in the minimum, or geometric
//! with period two when the ceiling is involved.

use crate::exponent::ExponentForm;
use crate::series::{phi_table, unrank};
use crate::SeriesError;
use exact_arith::rational::{int, qpow};
use exact_arith::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use variety_model::{RelationShape, VarietyDescriptor};

fn check_q(q: u64) -> Result<(), SeriesError> {
    if !exact_arith::numth::is_prime_power(q) {
        return Err(exact_arith::ArithError::NotPrimePower(q).into());
    }
    Ok(())
}

/// `1 / (1 - q^{-k})`.
fn geo(q: u64, k: i64) -> BigRational {
    (BigRational::one() - qpow(q, -k)).recip()
}

/// `sum_{y >= lo} q^{-y}`.
fn tail_from(q: u64, lo: i64) -> BigRational {
    qpow(q, -lo) * geo(q, 1)
}

fn sum_linear(q: u64, nu: &[i64]) -> Result<BigRational, SeriesError> {
    let k = nu.len() as i64;
    if k < 2 {
        return Err(SeriesError::Divergent);
    }
    let big_m = nu.iter().copied().max().unwrap_or(0) + 1;
    let term = |j0: usize, m: i64| -> BigRational {
        (0..nu.len())
            .filter(|&j| j != j0)
            .map(|j| tail_from(q, nu[j].max(m + (j < j0) as i64)))
            .fold(BigRational::one(), |a, b| a * b)
    };
    let mut total = BigRational::zero();
    for j0 in 0..nu.len() {
        for m in nu[j0]..big_m {
            total += term(j0, m);
        }
        total += term(j0, big_m) * geo(q, k - 1);
    }
    Ok(total)
}

/// Index 0 is the monomial with the squared `t`; the minimum `A` runs over
/// the others.
fn sum_quasi(q: u64, nu: &[i64]) -> Result<BigRational, SeriesError> {
    let big_k = nu.len() as i64 - 1;
    if big_k < 1 {
        return Err(SeriesError::Divergent);
    }
    let big_m = nu.iter().copied().max().unwrap_or(0) + 1;
    let others = |j0: usize, m: i64| -> BigRational {
        (1..nu.len())
            .filter(|&j| j != j0)
            .map(|j| tail_from(q, nu[j].max(m + (j < j0) as i64)))
            .fold(BigRational::one(), |a, b| a * b)
    };
    let mut total = BigRational::zero();
    for j0 in 1..nu.len() {
        // y_0 >= A = m: the exponent is m, leaving q^{-y_0 - others}.
        let above = |m: i64| tail_from(q, nu[0].max(m)) * others(j0, m);
        for m in nu[j0]..big_m {
            total += above(m);
        }
        total += above(big_m) * geo(q, big_k);

        // y_0 = b < A = m: the exponent is m - ceil((m - b)/2).
        let below = |b: i64, m: i64| qpow(q, -b - (m - b + 1).div_euclid(2)) * others(j0, m);
        let period = geo(q, 2 * big_k - 1);
        for b in nu[0]..big_m {
            for m in nu[j0].max(b + 1)..big_m {
                total += below(b, m);
            }
            total += (below(b, big_m) + below(b, big_m + 1)) * &period;
        }
        // b >= M: shifting b and m together by one multiplies by q^{-K}.
        total += (below(big_m, big_m + 1) + below(big_m, big_m + 2)) * &period * geo(q, big_k);
    }
    Ok(total)
}

/// `F~_{q,e}(1/q, ..., 1/q)` exactly.
pub fn exact_ftilde_at(v: &VarietyDescriptor, e: &[u32], q: u64) -> Result<BigRational, SeriesError> {
    check_q(q)?;
    let form = ExponentForm::new(v, e)?;
    let var_of = form.diagonal()?;
    debug_assert_eq!(var_of.len(), form.vars());
    let nu = &form.offsets;
    let sum = match form.shape {
        RelationShape::Linear => sum_linear(q, nu)?,
        RelationShape::QuasiLinearT1Squared => sum_quasi(q, nu)?,
    };
    if !sum.is_positive() {
        return Err(SeriesError::Divergent);
    }
    let k = form.vars() as u32;
    let prefactor = exact_arith::rational::rpow(&(BigRational::one() - qpow(q, -1)), k);
    Ok(prefactor * qpow(q, nu.iter().sum()) * sum)
}

/// `F~_{q,e}(1/q)` restricted to exponents in `[0, bound]^I`: a lower bound,
/// all terms being positive.
pub fn truncated_ftilde_at(v: &VarietyDescriptor, e: &[u32], q: u64, bound: u32) -> Result<BigRational, SeriesError> {
    check_q(q)?;
    let hist = exponent_histogram(v, e, bound)?;
    Ok(evaluate_histogram(&hist, q, ExponentForm::new(v, e)?.vars()))
}

/// Number of box points per value of `phi(d) - |d|`; independent of `q`.
pub fn exponent_histogram(v: &VarietyDescriptor, e: &[u32], bound: u32) -> Result<BTreeMap<i64, u64>, SeriesError> {
    let form = ExponentForm::new(v, e)?;
    let phi = phi_table(&form, bound)?;
    let side = bound as u64 + 1;
    let mut hist = BTreeMap::new();
    for (idx, &p) in phi.iter().enumerate() {
        let size: i64 = unrank(idx as u64, side, form.vars()).iter().map(|&x| x as i64).sum();
        *hist.entry(p - size).or_insert(0u64) += 1;
    }
    Ok(hist)
}

pub fn evaluate_histogram(hist: &BTreeMap<i64, u64>, q: u64, vars: usize) -> BigRational {
    let sum = hist.iter().fold(BigRational::zero(), |acc, (&x, &c)| acc + qpow(q, x) * int(c as i64));
    exact_arith::rational::rpow(&(BigRational::one() - qpow(q, -1)), vars as u32) * sum
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub q: u64,
    pub bound: u32,
    #[serde(serialize_with = "crate::ser_rational")]
    pub exact: BigRational,
    #[serde(serialize_with = "crate::ser_rational")]
    pub truncated: BigRational,
    /// `exact - truncated`, compared with `2 q^{-bound/2}`.
    #[serde(serialize_with = "crate::ser_rational")]
    pub gap: BigRational,
    pub pass: bool,
}

/// `0 <= exact - truncated <= 2 q^{-B/2}`, decided exactly by squaring.
pub fn within_tail_bound(gap: &BigRational, q: u64, bound: u32) -> bool {
    !gap.is_negative() && gap * gap <= int(4) * qpow(q, -(bound as i64))
}

pub fn cross_check(v: &VarietyDescriptor, e: &[u32], q: u64, bound: u32) -> Result<CrossCheck, SeriesError> {
    let exact = exact_ftilde_at(v, e, q)?;
    let truncated = truncated_ftilde_at(v, e, q, bound)?;
    let gap = &exact - &truncated;
    let pass = within_tail_bound(&gap, q, bound);
    Ok(CrossCheck { q, bound, exact, truncated, gap, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rational::frac;
    use variety_model::{builtin_dp6a2, builtin_xn};

    #[test]
    fn x3_closed_form() {
        let v = builtin_xn(3).unwrap();
        assert_eq!(exact_ftilde_at(&v, &[0; 7], 2).unwrap(), frac(7, 6));
        let mut e = vec![0; 7];
        e[0] = 1;
        assert_eq!(exact_ftilde_at(&v, &e, 2).unwrap(), frac(7, 6));
        // (1 - q^{-3}) / (1 - q^{-2}) in general.
        for q in [3u64, 4, 5, 7] {
            let want = (BigRational::one() - qpow(q, -3)) / (BigRational::one() - qpow(q, -2));
            assert_eq!(exact_ftilde_at(&v, &[0; 7], q).unwrap(), want);
        }
    }

    #[test]
    fn truncation_approaches_exact() {
        let v = builtin_dp6a2();
        for e in [vec![0; 7], vec![0, 1, 0, 1, 1, 0, 0], vec![1, 0, 0, 0, 1, 1, 1]] {
            let c = cross_check(&v, &e, 2, 16).unwrap();
            assert!(c.pass, "{e:?}: gap {}", c.gap);
        }
    }

    #[test]
    fn rejects_composite_q() {
        assert!(exact_ftilde_at(&builtin_xn(3).unwrap(), &[0; 7], 6).is_err());
    }
}
