//! Arbitrary-precision rationals (always reduced, positive denominator).

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `q^e` for any integer exponent.
pub fn qpow(q: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    let mut r = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        r *= &base;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

pub fn rpow(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// Lossy conversion, for diagnostics and numeric oracles only.
pub fn to_f64(x: &BigRational) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            // Scale down both sides to stay in range.
            let shift = n.bits().max(d.bits()).saturating_sub(900) as usize;
            let a = (n >> shift).to_f64().unwrap_or(0.0);
            let b = (d >> shift).to_f64().unwrap_or(1.0);
            a / b
        }
    }
}

pub fn is_positive(x: &BigRational) -> bool {
    x.is_positive()
}

pub fn is_zero(x: &BigRational) -> bool {
    x.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        assert_eq!(qpow(2, 3), int(8));
        assert_eq!(qpow(2, -2), frac(1, 4));
        assert_eq!(qpow(5, 0), int(1));
        assert_eq!(frac(2, -4), frac(-1, 2));
        assert!((to_f64(&frac(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
