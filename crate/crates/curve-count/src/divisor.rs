//! Effective divisors on `P^1` over `F_q` and their canonical sections.

use crate::form::{poly_deg, Form};
use crate::CurveError;
use exact_arith::field::{Elem, FiniteField};
use exact_arith::poly::raw;
use exact_arith::{factor, monic_irreducibles, FqPoly};
use std::sync::Arc;

/// Cap on `q^{d+1}` for [`enumerate_divisors`].
pub const DIVISOR_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// A monic irreducible polynomial, constant term first.
    Finite(Vec<Elem>),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> i64 {
        match self {
            Place::Finite(p) => poly_deg(p),
            Place::Infinity => 1,
        }
    }

    /// Order of vanishing of a nonzero form at this place.
    pub fn valuation(&self, k: &FiniteField, f: &Form) -> i64 {
        match self {
            Place::Infinity => f.order_at_infinity().expect("nonzero form"),
            Place::Finite(p) => {
                let mut rest = f.poly.clone();
                let mut v = 0;
                loop {
                    match raw::divrem(k, &rest, p) {
                        Some((quo, rem)) if rem.is_empty() => {
                            rest = quo;
                            v += 1;
                        }
                        _ => return v,
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EffDivisor {
    /// Sorted by place, multiplicities at least 1.
    pub parts: Vec<(Place, u32)>,
}

impl EffDivisor {
    pub fn zero() -> EffDivisor {
        EffDivisor::default()
    }

    pub fn from_parts(mut parts: Vec<(Place, u32)>) -> EffDivisor {
        parts.retain(|(_, m)| *m > 0);
        parts.sort();
        let mut out: Vec<(Place, u32)> = Vec::with_capacity(parts.len());
        for (p, m) in parts {
            match out.last_mut() {
                Some((last, acc)) if *last == p => *acc += m,
                _ => out.push((p, m)),
            }
        }
        EffDivisor { parts: out }
    }

    pub fn degree(&self) -> i64 {
        self.parts.iter().map(|(p, m)| p.degree() * *m as i64).sum()
    }

    pub fn multiplicity(&self, p: &Place) -> u32 {
        self.parts.iter().find(|(x, _)| x == p).map_or(0, |(_, m)| *m)
    }

    pub fn add(&self, other: &EffDivisor) -> EffDivisor {
        EffDivisor::from_parts(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    /// Divisor of a nonzero form.
    pub fn of_form(k: &Arc<FiniteField>, f: &Form) -> Result<EffDivisor, CurveError> {
        let inf = f.order_at_infinity().ok_or_else(|| CurveError::Degrees("divisor of the zero form".into()))?;
        let mut parts = vec![(Place::Infinity, inf as u32)];
        if poly_deg(&f.poly) > 0 {
            let fac = factor(&FqPoly::new(k.clone(), f.poly.clone()))?;
            for (p, m) in fac.factors {
                parts.push((Place::Finite(p.into_coeffs()), m));
            }
        }
        Ok(EffDivisor::from_parts(parts))
    }

    /// The canonical section: monic finite part, the point at infinity
    /// accounted for by the form degree.
    pub fn section(&self, k: &FiniteField) -> Form {
        let mut poly = vec![1];
        for (p, m) in &self.parts {
            if let Place::Finite(f) = p {
                for _ in 0..*m {
                    poly = raw::mul(k, &poly, f);
                }
            }
        }
        Form { poly, deg: self.degree() }
    }
}

/// `l(D)` on `P^1`.
pub fn ell(d: i64) -> i64 {
    (d + 1).max(0)
}

/// Every effective divisor of degree `d`, as pairs `(multiplicity at
/// infinity, monic finite part)`.
pub fn divisor_sections(q: u64, d: i64) -> Result<Vec<Form>, CurveError> {
    if d < 0 {
        return Ok(Vec::new());
    }
    check_cap(q, d)?;
    let mut out = Vec::new();
    for a in 0..=d {
        let free = (d - a) as u32;
        for code in 0..q.pow(free) {
            let mut poly = raw::from_code(q, free, code);
            poly.resize(free as usize, 0);
            poly.push(1);
            out.push(Form { poly, deg: d });
        }
    }
    Ok(out)
}

fn check_cap(q: u64, d: i64) -> Result<(), CurveError> {
    match q.checked_pow(d as u32 + 1) {
        Some(s) if s <= DIVISOR_CAP => Ok(()),
        _ => Err(CurveError::Cap(format!("{q}^{} divisors of degree {d}", d + 1))),
    }
}

/// All effective divisors of degree `d`, factored.
pub fn enumerate_divisors(q: u64, d: i64) -> Result<Vec<EffDivisor>, CurveError> {
    let k = Arc::new(FiniteField::with_order(q)?);
    divisor_sections(q, d)?.iter().map(|f| EffDivisor::of_form(&k, f)).collect()
}

/// Number of effective divisors of degree `d`: `(q^{d+1} - 1) / (q - 1)`.
pub fn divisor_count(q: u64, d: i64) -> u128 {
    if d < 0 {
        return 0;
    }
    (0..=d as u32).map(|e| (q as u128).pow(e)).sum()
}

/// Closed points of degree at most `d`, infinity first.
pub fn places_up_to(k: &Arc<FiniteField>, d: i64) -> Vec<Place> {
    let mut out = Vec::new();
    if d >= 1 {
        out.push(Place::Infinity);
    }
    for e in 1..=d.max(0) as u32 {
        out.extend(monic_irreducibles(k, e).into_iter().map(|p| Place::Finite(p.into_coeffs())));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_divisors(2, 2).unwrap().len(), 7);
        assert_eq!(divisor_count(2, 2), 7);
        let d = enumerate_divisors(3, 1).unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.contains(&EffDivisor::from_parts(vec![(Place::Infinity, 1)])));
        assert_eq!(divisor_count(3, 4), 121);
        assert!(enumerate_divisors(2, 30).is_err());
        assert_eq!((ell(3), ell(-1), ell(0)), (4, 0, 1));
    }

    #[test]
    fn divisors_are_distinct_and_have_the_right_degree() {
        for (q, d) in [(2, 3), (3, 2), (4, 2)] {
            let all = enumerate_divisors(q, d).unwrap();
            assert_eq!(all.len() as u128, divisor_count(q, d));
            let set: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            assert!(all.iter().all(|e| e.degree() == d));
        }
    }

    #[test]
    fn section_round_trip() {
        let k = Arc::new(FiniteField::with_order(2).unwrap());
        // x^2 (x + 1) z
        let f = Form::new(vec![0, 0, 1, 1], 4).unwrap();
        let e = EffDivisor::of_form(&k, &f).unwrap();
        assert_eq!(e.multiplicity(&Place::Infinity), 1);
        assert_eq!(e.multiplicity(&Place::Finite(vec![0, 1])), 2);
        assert_eq!(e.section(&k), f);
        assert_eq!(Place::Finite(vec![0, 1]).valuation(&k, &f), 2);
        assert_eq!(places_up_to(&k, 2).len(), 1 + 2 + 1);
    }
}
