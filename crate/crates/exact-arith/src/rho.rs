//! Integer polynomials in the formal mark `rho`.

use crate::{BigInt, BigRational, Degree};
use num_traits::Zero;
use std::fmt;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RhoPolynomial {
    coeffs: Vec<i64>,
}

impl fmt::Debug for RhoPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rho{:?}", self.coeffs)
    }
}

impl RhoPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Coefficients indexed by the exponent of `rho`; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        RhoPolynomial { coeffs }
    }

    /// `c * rho^e`.
    pub fn monomial(e: u32, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, e: u32) -> i64 {
        self.coeffs.get(e as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() as u32 - 1)
        }
    }

    pub fn add_term(&mut self, e: u32, c: i64) {
        if c == 0 {
            return;
        }
        let e = e as usize;
        if self.coeffs.len() <= e {
            self.coeffs.resize(e + 1, 0);
        }
        self.coeffs[e] = self.coeffs[e].checked_add(c).expect("rho coefficient overflow");
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in other.coeffs.iter().enumerate() {
            out.add_term(e as u32, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| a.checked_mul(c).expect("overflow")).collect())
    }

    /// Multiply by `c * rho^e`.
    pub fn shift(&self, e: u32, c: i64) -> Self {
        let mut v = vec![0; e as usize];
        v.extend(self.coeffs.iter().map(|&a| a.checked_mul(c).expect("overflow")));
        Self::from_coeffs(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out.add_term((i + j) as u32, a.checked_mul(b).expect("overflow"));
            }
        }
        out
    }

    pub fn eval_int(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, &c| acc * q + BigInt::from(c))
    }
}

/// Evaluate at `rho = q`.
pub fn rho_eval(p: &RhoPolynomial, q: u64) -> BigRational {
    BigRational::from_integer(p.eval_int(&BigInt::from(q)))
}
