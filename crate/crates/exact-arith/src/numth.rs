//! Small-integer number theory by trial division.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some((p, f))` with `q = p^f`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let ps = prime_factors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut f = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        f += 1;
    }
    Some((p, f))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// The prime powers `>= 2` in increasing order, starting at `from`.
pub fn prime_powers_from(from: u64) -> impl Iterator<Item = u64> {
    (from.max(2)..).filter(|&q| is_prime_power(q))
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut m = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Number of monic irreducible polynomials of degree `d >= 1` over `F_q`.
pub fn count_monic_irreducible(q: u64, d: u32) -> BigInt {
    assert!(d >= 1);
    let mut total = BigInt::zero();
    for e in divisors(d as u64) {
        let mu = mobius(e);
        if mu != 0 {
            let term = num_traits::pow(BigInt::from(q), (d as u64 / e) as usize);
            total += BigInt::from(mu) * term;
        }
    }
    total / BigInt::from(d)
}

/// `base^exp` as a `BigInt`.
pub fn big_pow(base: u64, exp: u32) -> BigInt {
    let mut r = BigInt::one();
    let b = BigInt::from(base);
    for _ in 0..exp {
        r *= &b;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(2) && is_prime(1021) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        let first: Vec<u64> = prime_powers_from(2).take(8).collect();
        assert_eq!(first, vec![2, 3, 4, 5, 7, 8, 9, 11]);
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_monic_irreducible(2, 1), BigInt::from(2));
        assert_eq!(count_monic_irreducible(2, 2), BigInt::from(1));
        assert_eq!(count_monic_irreducible(2, 4), BigInt::from(3));
        assert_eq!(count_monic_irreducible(3, 2), BigInt::from(3));
    }
}
