//! `N_n(q) = #{(x, y) in F_q^n x F_q^n : sum x_i y_i = 0}`.

use exact_arith::{BigInt, FiniteField};
use num_traits::One;

/// By the recurrence `N_1 = 2q - 1`, `N_n = q N_{n-1} + (q-1) q^{2n-2}`.
pub fn count_bilinear(n: u32, q: u64) -> BigInt {
    assert!(n >= 1);
    let qb = BigInt::from(q);
    let mut value = BigInt::from(2 * q - 1);
    let mut q_pow = qb.clone() * &qb; // q^{2(k-1)} for k = 2
    for _ in 2..=n {
        value = &qb * &value + (&qb - BigInt::one()) * &q_pow;
        q_pow = q_pow * &qb * &qb;
    }
    value
}

/// `q^{2n-1} + q^n - q^{n-1}`.
pub fn count_bilinear_closed(n: u32, q: u64) -> BigInt {
    let qb = BigInt::from(q);
    qb.pow(2 * n - 1) + qb.pow(n) - qb.pow(n - 1)
}

/// Direct enumeration; `None` when `q^{2n} > 2^24`.
pub fn count_bilinear_brute(n: u32, q: u64) -> Option<u64> {
    let total = (q as u128).checked_pow(2 * n)?;
    if total > 1 << 24 {
        return None;
    }
    let k = FiniteField::with_order(q).ok()?;
    let m = 2 * n as usize;
    let mut x = vec![0u32; m];
    let mut count = 0u64;
    loop {
        let s = (0..n as usize).fold(0, |acc, i| k.add(acc, k.mul(x[i], x[n as usize + i])));
        if s == 0 {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return Some(count);
            }
            x[pos] += 1;
            if x[pos] < q as u32 {
                break;
            }
            x[pos] = 0;
            pos += 1;
        }
    }
}
