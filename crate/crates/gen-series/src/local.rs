//! The local identity at a place of residue field `F_q`:
//! `sum_e mu0(e) q^{-|e|} F~_{q,e}(1/q) = sum_e mu0(e) dens(e)
//!  = (1 - 1/q)^r #X(F_q) / q^{dim X}`.

use crate::exact::exact_ftilde_at;
use crate::exponent::check_pattern;
use crate::SeriesError;
use exact_arith::rational::{int, qpow, rpow};
use exact_arith::{BigInt, BigRational, FiniteField};
use num_traits::{One, Zero};
use point_count::{points_exact, solutions_with_support};
use serde::Serialize;
use variety_model::{mu0, rlv_and_incidence, VarietyDescriptor};

/// Cap on `q^{free coordinates}` for [`local_density_brute`].
pub const DENSITY_BRUTE_CAP: u64 = 1 << 22;

fn zero_mask(v: &VarietyDescriptor, e: &[u32]) -> Result<u32, SeriesError> {
    check_pattern(v, e)?;
    if e.iter().any(|&x| x > 1) {
        return Err(SeriesError::NotBinary);
    }
    Ok(e.iter().enumerate().fold(0, |m, (k, &x)| m | x << k))
}

/// `q^{-|e|} F~_{q,e}(1/q)`.
pub fn local_factor(v: &VarietyDescriptor, e: &[u32], q: u64) -> Result<BigRational, SeriesError> {
    let size: i64 = e.iter().map(|&x| x as i64).sum();
    Ok(qpow(q, -size) * exact_ftilde_at(v, e, q)?)
}

/// Zeros of the relation in `F_q^N` with the coordinates in `e` set to zero,
/// divided by `q^{N-1}`. Counted stratum by stratum.
pub fn local_density(v: &VarietyDescriptor, e: &[u32], q: u64) -> Result<BigRational, SeriesError> {
    let zero = zero_mask(v, e)?;
    if !exact_arith::numth::is_prime_power(q) {
        return Err(exact_arith::ArithError::NotPrimePower(q).into());
    }
    let free = v.all_coords() & !zero;
    let mut count = BigInt::zero();
    let mut s = free;
    loop {
        count += solutions_with_support(v, s, q);
        if s == 0 {
            break;
        }
        s = (s - 1) & free;
    }
    Ok(BigRational::from_integer(count) * qpow(q, 1 - v.coord_count() as i64))
}

/// The same count by enumerating the coordinate subspace.
pub fn local_density_brute(v: &VarietyDescriptor, e: &[u32], q: u64) -> Result<BigRational, SeriesError> {
    let zero = zero_mask(v, e)?;
    let k = FiniteField::with_order(q)?;
    let free: Vec<usize> = (0..v.coord_count()).filter(|&c| zero >> c & 1 == 0).collect();
    let size = (q as u128).checked_pow(free.len() as u32).filter(|&s| s <= DENSITY_BRUTE_CAP as u128);
    let Some(size) = size else {
        return Err(SeriesError::BruteCap(q.saturating_pow(free.len() as u32)));
    };
    let monomials = v.monomials();
    let mut x = vec![0u32; v.coord_count()];
    let mut count = 0i64;
    for mut code in 0..size as u64 {
        for &c in &free {
            x[c] = (code % q) as u32;
            code /= q;
        }
        let val = monomials.iter().fold(0, |acc, m| {
            k.add(acc, m.iter().fold(1, |t, &(c, ex)| k.mul(t, k.pow(x[c], ex as u64))))
        });
        count += (val == 0) as i64;
    }
    Ok(int(count) * qpow(q, 1 - v.coord_count() as i64))
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalIdentity {
    pub q: u64,
    /// Patterns with `mu0(e) != 0`.
    pub patterns: usize,
    #[serde(serialize_with = "crate::ser_rational")]
    pub l1: BigRational,
    #[serde(serialize_with = "crate::ser_rational")]
    pub l2: BigRational,
    #[serde(serialize_with = "crate::ser_rational")]
    pub r: BigRational,
    pub pass: bool,
}

pub fn check_local_identity(v: &VarietyDescriptor, q: u64) -> Result<LocalIdentity, SeriesError> {
    let inc = rlv_and_incidence(v)?;
    let mu = mu0(&inc);
    let n = v.coord_count();
    let (mut l1, mut l2) = (BigRational::zero(), BigRational::zero());
    let mut patterns = 0;
    for (mask, m) in mu.support() {
        let e: Vec<u32> = (0..n).map(|k| mask >> k & 1).collect();
        l1 += int(m) * local_factor(v, &e, q)?;
        l2 += int(m) * local_density(v, &e, q)?;
        patterns += 1;
    }
    let points = BigRational::from_integer(points_exact(v, q)?);
    let r = rpow(&(BigRational::one() - qpow(q, -1)), v.pic_rank() as u32) * points * qpow(q, -(v.dim() as i64));
    let pass = l1 == l2 && l2 == r;
    Ok(LocalIdentity { q, patterns, l1, l2, r, pass })
}
