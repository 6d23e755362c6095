//! `#X(F_q)` as the number of points of the universal torsor divided by
//! `(q-1)^rank Pic`, either by enumerating `F_q^N` or stratum by stratum.

use crate::CountError;
use exact_arith::numth::big_pow;
use exact_arith::{BigInt, FiniteField};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use variety_model::{incidence::surviving_monomials, rlv_and_incidence, VarietyDescriptor};

/// Brute-force caps: at most this many coordinates and `q^N <= 2^28`.
pub const BRUTE_MAX_COORDS: usize = 9;
pub const BRUTE_MAX_LOG2: u32 = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Strata,
    Auto,
    Polynomial,
}

pub(crate) fn ser_big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCountReport {
    pub q: u64,
    #[serde(serialize_with = "ser_big")]
    pub raw: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub points: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub open: BigInt,
    pub method: Method,
    pub notes: Vec<String>,
}

/// Number of zeros of the relation in `F_q^N` whose nonzero coordinates are
/// exactly `support`.
///
/// Every monomial carries its own `t_j`, so after fixing all other nonzero
/// coordinates the surviving monomials become independent nonzero values
/// `u_j`; the count of `k` nonzero values summing to zero is
/// `((q-1)^k + (-1)^k (q-1)) / q`. A squared `t_1` gives the same total
/// because the count of nonzero tuples with a fixed nonzero sum does not
/// depend on that sum.
pub fn solutions_with_support(v: &VarietyDescriptor, support: u32, q: u64) -> BigInt {
    let size = support.count_ones();
    let k = surviving_monomials(v, support) as u32;
    let qm1 = BigInt::from(q - 1);
    if k == 0 {
        return qm1.pow(size);
    }
    let sign = if k % 2 == 0 { qm1.clone() } else { -qm1.clone() };
    let zk = (qm1.pow(k) + sign) / BigInt::from(q);
    qm1.pow(size - k) * zk
}

fn divide_by_torus(v: &VarietyDescriptor, q: u64, raw: &BigInt) -> Result<BigInt, CountError> {
    let t = BigInt::from(q - 1).pow(v.pic_rank() as u32);
    if !(raw % &t).is_zero() {
        return Err(CountError::NotDivisible { q, raw: raw.clone(), rank: v.pic_rank() });
    }
    Ok(raw / t)
}

fn check_q(q: u64) -> Result<(), CountError> {
    if !exact_arith::numth::is_prime_power(q) {
        return Err(exact_arith::ArithError::NotPrimePower(q).into());
    }
    Ok(())
}

/// Raw torsor count and full-support count, stratum by stratum.
pub fn strata_counts(v: &VarietyDescriptor, q: u64) -> Result<(BigInt, BigInt), CountError> {
    check_q(q)?;
    let inc = rlv_and_incidence(v)?;
    let mut raw = BigInt::zero();
    for &s in &inc.rlv {
        raw += solutions_with_support(v, s, q);
    }
    let full = v.all_coords();
    let open = if inc.is_relevant(full) { solutions_with_support(v, full, q) } else { BigInt::zero() };
    Ok((raw, open))
}

pub fn brute_allowed(v: &VarietyDescriptor, q: u64) -> bool {
    let n = v.coord_count();
    n <= BRUTE_MAX_COORDS && (q as f64).log2() * n as f64 <= BRUTE_MAX_LOG2 as f64 + 1e-9
}

/// Raw torsor count and full-support count by enumerating `F_q^N`.
pub fn brute_counts(v: &VarietyDescriptor, q: u64) -> Result<(BigInt, BigInt), CountError> {
    if !brute_allowed(v, q) {
        return Err(CountError::BruteCap { q, coords: v.coord_count() });
    }
    let k = FiniteField::with_order(q)?;
    let inc = rlv_and_incidence(v)?;
    let n = v.coord_count();
    let relevant: Vec<bool> = (0..1u32 << n).map(|m| inc.is_relevant(m)).collect();
    let monomials = v.monomials();
    let full = v.all_coords();
    let (raw, open) = (0..q as u32)
        .into_par_iter()
        .map(|first| {
            let mut x = vec![0u32; n];
            x[0] = first;
            let (mut raw, mut open) = (0u64, 0u64);
            loop {
                let val = monomials.iter().fold(0, |acc, m| {
                    let term = m.iter().fold(1, |t, &(c, e)| k.mul(t, k.pow(x[c], e as u64)));
                    k.add(acc, term)
                });
                if val == 0 {
                    let mask = (0..n).fold(0u32, |mk, c| if x[c] != 0 { mk | 1 << c } else { mk });
                    if relevant[mask as usize] {
                        raw += 1;
                        if mask == full {
                            open += 1;
                        }
                    }
                }
                let mut pos = 1;
                loop {
                    if pos == n {
                        return (raw, open);
                    }
                    x[pos] += 1;
                    if x[pos] < q as u32 {
                        break;
                    }
                    x[pos] = 0;
                    pos += 1;
                }
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok((BigInt::from(raw), BigInt::from(open)))
}

pub fn count_points(v: &VarietyDescriptor, q: u64, method: Method) -> Result<PointCountReport, CountError> {
    check_q(q)?;
    let mut notes = Vec::new();
    let (used, (raw, open)) = match method {
        Method::Brute if brute_allowed(v, q) => (Method::Brute, brute_counts(v, q)?),
        Method::Brute => {
            notes.push(format!("brute force cap exceeded for q={q}; counted by strata"));
            (Method::Strata, strata_counts(v, q)?)
        }
        Method::Strata | Method::Auto | Method::Polynomial => (Method::Strata, strata_counts(v, q)?),
    };
    let points = divide_by_torus(v, q, &raw)?;
    let open = divide_by_torus(v, q, &open)?;
    debug_assert!(!open.is_negative() && open <= points);
    Ok(PointCountReport { q, raw, points, open, method: used, notes })
}

/// `#X_0(F_q)`: points with every coordinate nonzero.
pub fn count_open(v: &VarietyDescriptor, q: u64) -> Result<BigInt, CountError> {
    Ok(count_points(v, q, Method::Strata)?.open)
}

/// `#X(F_q)` by strata; valid for any prime power.
pub fn points_exact(v: &VarietyDescriptor, q: u64) -> Result<BigInt, CountError> {
    let (raw, _) = strata_counts(v, q)?;
    divide_by_torus(v, q, &raw)
}

pub(crate) fn q_pow(q: u64, e: u32) -> BigInt {
    if e == 0 {
        BigInt::one()
    } else {
        big_pow(q, e)
    }
}
