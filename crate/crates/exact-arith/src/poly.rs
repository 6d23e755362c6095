//! Univariate polynomials over a [`FiniteField`].
//!
//! [`FqPoly`] carries its field and checks field agreement. The [`raw`]
//! functions work on trimmed coefficient slices and are meant for hot loops.

use crate::field::{Elem, FiniteField};
use crate::{ArithError, Degree};
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub struct FqPoly {
    field: Arc<FiniteField>,
    coeffs: Vec<Elem>,
}

impl PartialEq for FqPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}
impl Eq for FqPoly {}

impl std::hash::Hash for FqPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}*x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FqPoly {
    /// Coefficients low to high; trailing zeros are trimmed.
    pub fn new(field: Arc<FiniteField>, mut coeffs: Vec<Elem>) -> Self {
        raw::trim(&mut coeffs);
        FqPoly { field, coeffs }
    }

    pub fn zero(field: Arc<FiniteField>) -> Self {
        FqPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Arc<FiniteField>) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: Arc<FiniteField>, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: Arc<FiniteField>) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn degree(&self) -> Degree {
        raw::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    fn same_field(&self, other: &FqPoly) -> Result<(), ArithError> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(ArithError::MixedFields(self.field.order(), other.field.order()))
        }
    }

    fn wrap(&self, coeffs: Vec<Elem>) -> FqPoly {
        FqPoly::new(self.field.clone(), coeffs)
    }

    pub fn add(&self, other: &FqPoly) -> Result<FqPoly, ArithError> {
        self.same_field(other)?;
        Ok(self.wrap(raw::add(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &FqPoly) -> Result<FqPoly, ArithError> {
        self.same_field(other)?;
        Ok(self.wrap(raw::sub(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn mul(&self, other: &FqPoly) -> Result<FqPoly, ArithError> {
        self.same_field(other)?;
        Ok(self.wrap(raw::mul(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: Elem) -> FqPoly {
        self.wrap(raw::scale(&self.field, &self.coeffs, c))
    }

    pub fn divrem(&self, other: &FqPoly) -> Result<(FqPoly, FqPoly), ArithError> {
        self.same_field(other)?;
        let (q, r) = raw::divrem(&self.field, &self.coeffs, &other.coeffs)
            .ok_or(ArithError::DivisionByZero)?;
        Ok((self.wrap(q), self.wrap(r)))
    }

    pub fn rem(&self, other: &FqPoly) -> Result<FqPoly, ArithError> {
        Ok(self.divrem(other)?.1)
    }

    pub fn divides(&self, other: &FqPoly) -> Result<bool, ArithError> {
        if self.is_zero() {
            return Ok(other.is_zero());
        }
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &FqPoly) -> Result<FqPoly, ArithError> {
        self.same_field(other)?;
        Ok(self.wrap(raw::gcd(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn monic(&self) -> FqPoly {
        self.wrap(raw::monic(&self.field, &self.coeffs))
    }

    pub fn eval(&self, x: Elem) -> Elem {
        raw::eval(&self.field, &self.coeffs, x)
    }

    pub fn derivative(&self) -> FqPoly {
        let k = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| k.mul(k.from_int(i as i64), a))
            .collect();
        self.wrap(c)
    }

    pub fn pow(&self, mut e: u64) -> FqPoly {
        let mut result = FqPoly::one(self.field.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        result
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &FqPoly) -> Result<FqPoly, ArithError> {
        self.same_field(m)?;
        if m.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let mut result = FqPoly::one(self.field.clone()).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?.rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?.rem(m)?;
            }
        }
        Ok(result)
    }

    /// `self^q mod m` where `q` is the field order.
    pub fn frobenius_mod(&self, m: &FqPoly) -> Result<FqPoly, ArithError> {
        self.pow_mod(self.field.order() as u64, m)
    }

    /// Enumerate all polynomials of degree `<= d` (including zero), in code order.
    pub fn all_up_to_degree(field: &Arc<FiniteField>, d: i64) -> impl Iterator<Item = FqPoly> + '_ {
        let len = if d < 0 { 0 } else { d as u32 + 1 };
        let q = field.order() as u64;
        let total = q.checked_pow(len).expect("enumeration too large");
        (0..total).map(move |code| FqPoly::new(field.clone(), raw::from_code(q, len, code)))
    }

    /// Enumerate monic polynomials of degree exactly `d`.
    pub fn monic_of_degree(field: &Arc<FiniteField>, d: u32) -> impl Iterator<Item = FqPoly> + '_ {
        let q = field.order() as u64;
        let total = q.checked_pow(d).expect("enumeration too large");
        (0..total).map(move |code| {
            let mut c = raw::from_code(q, d, code);
            c.resize(d as usize, 0);
            c.push(1);
            FqPoly::new(field.clone(), c)
        })
    }
}

/// Slice-level arithmetic. Inputs are assumed trimmed; outputs are trimmed.
pub mod raw {
    use super::*;

    pub fn trim(c: &mut Vec<Elem>) {
        while c.last() == Some(&0) {
            c.pop();
        }
    }

    pub fn degree(c: &[Elem]) -> Degree {
        if c.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(c.len() as u32 - 1)
        }
    }

    /// Base-`q` digits of `code` as `len` coefficients (trimmed).
    pub fn from_code(q: u64, len: u32, mut code: u64) -> Vec<Elem> {
        let mut c = Vec::with_capacity(len as usize);
        for _ in 0..len {
            c.push((code % q) as Elem);
            code /= q;
        }
        trim(&mut c);
        c
    }

    pub fn add(k: &FiniteField, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let mut out: Vec<Elem> = (0..n)
            .map(|i| k.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn add_assign(k: &FiniteField, acc: &mut Vec<Elem>, b: &[Elem]) {
        if acc.len() < b.len() {
            acc.resize(b.len(), 0);
        }
        for (x, &y) in acc.iter_mut().zip(b) {
            *x = k.add(*x, y);
        }
        trim(acc);
    }

    pub fn sub(k: &FiniteField, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let mut out: Vec<Elem> = (0..n)
            .map(|i| k.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    pub fn scale(k: &FiniteField, a: &[Elem], c: Elem) -> Vec<Elem> {
        if c == 0 {
            return Vec::new();
        }
        a.iter().map(|&x| k.mul(x, c)).collect()
    }

    pub fn mul(k: &FiniteField, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    /// `None` on division by zero.
    pub fn divrem(k: &FiniteField, a: &[Elem], b: &[Elem]) -> Option<(Vec<Elem>, Vec<Elem>)> {
        let lb = *b.last()?;
        let inv = k.inv(lb)?;
        let mut r = a.to_vec();
        if a.len() < b.len() {
            return Some((Vec::new(), r));
        }
        let mut q = vec![0; a.len() - b.len() + 1];
        for i in (0..q.len()).rev() {
            let c = k.mul(r[i + b.len() - 1], inv);
            q[i] = c;
            if c != 0 {
                for (j, &y) in b.iter().enumerate() {
                    r[i + j] = k.sub(r[i + j], k.mul(c, y));
                }
            }
        }
        trim(&mut r);
        trim(&mut q);
        Some((q, r))
    }

    pub fn monic(k: &FiniteField, a: &[Elem]) -> Vec<Elem> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => scale(k, a, k.inv(l).expect("nonzero leading coefficient")),
        }
    }

    pub fn gcd(k: &FiniteField, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(k, &x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        monic(k, &x)
    }

    pub fn eval(k: &FiniteField, a: &[Elem], x: Elem) -> Elem {
        a.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
    }
}
