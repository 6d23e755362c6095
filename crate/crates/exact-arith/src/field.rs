//! Finite fields `F_{p^f}` with `p^f <= 2^20`.
//!
//! Elements are `u32` codes: the base-`p` digits of a code are the
//! coefficients (low to high) of a polynomial in `x` modulo a fixed primitive
//! defining polynomial. Multiplication goes through discrete log tables.

use crate::numth::{is_prime, prime_factors, prime_power};
use crate::primitive_table::PRIMITIVE;
use crate::ArithError;
use std::fmt;

pub type Elem = u32;

pub const FIELD_CAP: u64 = 1 << 20;
const ADD_TABLE_CAP: u32 = 256;

pub struct FiniteField {
    p: u32,
    f: u32,
    q: u32,
    /// Non-leading coefficients of the monic defining polynomial (empty if `f = 1`).
    modulus: Vec<u32>,
    /// `exp[k] = g^k` for `0 <= k < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_tab: Option<Vec<u32>>,
    neg_tab: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        // The defining polynomial is a function of (p, f).
        self.p == other.p && self.f == other.f
    }
}
impl Eq for FiniteField {}

/// Build `F_{p^f}`.
pub fn field_make(p: u64, f: u32) -> Result<FiniteField, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if f == 0 {
        return Err(ArithError::ZeroDegree);
    }
    let mut q: u64 = 1;
    for _ in 0..f {
        q = q.saturating_mul(p);
        if q > FIELD_CAP {
            return Err(ArithError::FieldTooLarge { p, f });
        }
    }
    let (p, q) = (p as u32, q as u32);
    let modulus = if f == 1 {
        Vec::new()
    } else {
        PRIMITIVE
            .iter()
            .find(|(pp, ff, _)| *pp == p && *ff == f)
            .map(|(_, _, c)| c.to_vec())
            .ok_or(ArithError::MissingDefiningPolynomial { p, f })?
    };

    let mut field = FiniteField {
        p,
        f,
        q,
        modulus,
        exp: Vec::new(),
        log: Vec::new(),
        add_tab: None,
        neg_tab: Vec::new(),
    };
    field.neg_tab = (0..q).map(|a| field.neg_digits(a)).collect();
    if q <= ADD_TABLE_CAP {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = field.add_digits(a, b);
            }
        }
        field.add_tab = Some(t);
    }
    field.build_log_tables()?;
    Ok(field)
}

impl FiniteField {
    /// Build the field with `q` elements.
    pub fn with_order(q: u64) -> Result<FiniteField, ArithError> {
        let (p, f) = prime_power(q).ok_or(ArithError::NotPrimePower(q))?;
        field_make(p, f)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.f
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn defining_polynomial(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.q
    }

    pub fn nonzero(&self) -> std::ops::Range<Elem> {
        1..self.q
    }

    /// The generator of the multiplicative group used for the log tables.
    pub fn generator(&self) -> Elem {
        self.exp[1]
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        if self.f == 1 {
            return (a + b) % self.p;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.f {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.f {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    /// Multiply a code by `x` (for `f > 1`) or by the primitive root (for `f = 1`).
    fn times_generator_raw(&self, a: u32, g: u32) -> u32 {
        if self.f == 1 {
            return ((a as u64 * g as u64) % self.p as u64) as u32;
        }
        let p = self.p;
        let mut digits = Vec::with_capacity(self.f as usize + 1);
        let mut m = a;
        digits.push(0);
        for _ in 0..self.f {
            digits.push(m % p);
            m /= p;
        }
        let top = digits.pop().unwrap();
        for (k, c) in self.modulus.iter().enumerate() {
            digits[k] = (digits[k] + (p - (top * c) % p)) % p;
        }
        digits.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    fn build_log_tables(&mut self) -> Result<(), ArithError> {
        let n = (self.q - 1) as usize;
        let g = if self.f == 1 { primitive_root(self.p) } else { self.p };
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = 1u32;
        for k in 0..n {
            if k > 0 && cur == 1 {
                return Err(ArithError::NotPrimitive { p: self.p, f: self.f });
            }
            exp[k] = cur;
            log[cur as usize] = k as u32;
            cur = self.times_generator_raw(cur, g);
        }
        if cur != 1 {
            return Err(ArithError::NotPrimitive { p: self.p, f: self.f });
        }
        for k in n..2 * n {
            exp[k] = exp[k - n];
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add_tab {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg_tab[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            let n = self.q - 1;
            Some(self.exp[((n - self.log[a as usize]) % n) as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let k = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[k as usize]
    }

    /// The Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// The `p`-th root (inverse Frobenius).
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.pow(a, (self.q / self.p) as u64)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Discrete logarithm with respect to [`FiniteField::generator`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }
}

fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let n = (p - 1) as u64;
    let fs = prime_factors(n);
    (2..p)
        .find(|&g| {
            fs.iter()
                .all(|&r| modpow(g as u64, n / r, p as u64) != 1)
        })
        .expect("every prime has a primitive root")
}

fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
