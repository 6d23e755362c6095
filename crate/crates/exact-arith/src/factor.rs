//! Factorization over `F_q`: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting with a fixed-seed
//! RNG so results are reproducible.

use crate::field::{Elem, FiniteField};
use crate::poly::FqPoly;
use crate::{ArithError, Degree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

const EDF_SEED: u64 = 0x6d61_6e69_6e6c_6162;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    /// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    /// Reassemble `unit * prod f^m`.
    pub fn expand(&self, field: &Arc<FiniteField>) -> FqPoly {
        self.factors.iter().fold(FqPoly::constant(field.clone(), self.unit), |acc, (f, m)| {
            acc.mul(&f.pow(*m as u64)).expect("same field")
        })
    }
}

/// Factor a nonzero polynomial.
pub fn factor(f: &FqPoly) -> Result<Factorization, ArithError> {
    let unit = f.leading().ok_or(ArithError::DivisionByZero)?;
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut factors = Vec::new();
    for (part, mult) in squarefree(&monic) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(f: &FqPoly) -> bool {
    let n = match f.degree() {
        Degree::Finite(n) if n >= 1 => n,
        _ => return false,
    };
    let m = f.monic();
    let d = m.derivative();
    if d.is_zero() || m.gcd(&d).expect("same field").degree() != Degree::Finite(0) {
        return false;
    }
    let parts = distinct_degree(&m);
    parts.len() == 1 && parts[0].1 == n
}

/// All monic irreducibles of degree `d` over the field, in code order.
pub fn monic_irreducibles(field: &Arc<FiniteField>, d: u32) -> Vec<FqPoly> {
    FqPoly::monic_of_degree(field, d).filter(is_irreducible).collect()
}

fn one(k: &Arc<FiniteField>) -> FqPoly {
    FqPoly::one(k.clone())
}

fn exact_div(a: &FqPoly, b: &FqPoly) -> FqPoly {
    let (q, r) = a.divrem(b).expect("nonzero divisor");
    debug_assert!(r.is_zero());
    q
}

fn pth_root(f: &FqPoly) -> FqPoly {
    let k = f.field();
    let p = k.characteristic() as usize;
    let c = f.coeffs().iter().step_by(p).map(|&a| k.pth_root(a)).collect();
    FqPoly::new(k.clone(), c)
}

/// Squarefree parts `(g_i, i)` with `f = prod g_i^i`; `f` monic.
fn squarefree(f: &FqPoly) -> Vec<(FqPoly, u32)> {
    let k = f.field().clone();
    let p = k.characteristic();
    let mut out = Vec::new();
    if f.degree() <= Degree::Finite(0) {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree(&pth_root(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d).expect("same field");
    let mut w = exact_div(f, &c);
    let mut i = 1;
    while w != one(&k) {
        let y = w.gcd(&c).expect("same field");
        let z = exact_div(&w, &y);
        if z != one(&k) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = exact_div(&c, &w);
    }
    if c != one(&k) {
        for (g, m) in squarefree(&pth_root(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Split a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &FqPoly) -> Vec<(FqPoly, u32)> {
    let k = f.field().clone();
    let x = FqPoly::x(k.clone());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest).expect("nonzero");
    let mut i = 1u32;
    while let Degree::Finite(n) = rest.degree() {
        if n < 2 * i {
            break;
        }
        h = h.frobenius_mod(&rest).expect("nonzero");
        let g = rest.gcd(&h.sub(&x).expect("same field")).expect("same field");
        if g != one(&k) {
            rest = exact_div(&rest, &g);
            h = h.rem(&rest).expect("nonzero");
            out.push((g, i));
        }
        i += 1;
    }
    if let Degree::Finite(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    out
}

fn equal_degree(f: &FqPoly, d: u32, rng: &mut ChaCha8Rng) -> Vec<FqPoly> {
    let n = match f.degree() {
        Degree::Finite(n) => n,
        Degree::NegInf => return Vec::new(),
    };
    if n == d {
        return vec![f.clone()];
    }
    let k = f.field().clone();
    loop {
        let coeffs: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..k.order())).collect();
        let a = FqPoly::new(k.clone(), coeffs);
        if a.degree() < Degree::Finite(1) {
            continue;
        }
        let b = splitting_element(&a, f, d);
        let g = f.gcd(&b).expect("same field");
        if let Degree::Finite(m) = g.degree() {
            if m > 0 && m < n {
                let mut out = equal_degree(&g, d, rng);
                out.extend(equal_degree(&exact_div(f, &g), d, rng));
                return out;
            }
        }
    }
}

/// An element whose gcd with `f` is a proper factor with probability about 1/2.
fn splitting_element(a: &FqPoly, f: &FqPoly, d: u32) -> FqPoly {
    let k = f.field();
    if k.characteristic() == 2 {
        // Absolute trace from F_{q^d} down to F_2.
        let steps = k.degree() * d;
        let mut term = a.rem(f).expect("nonzero");
        let mut acc = term.clone();
        for _ in 1..steps {
            term = term.pow_mod(2, f).expect("nonzero");
            acc = acc.add(&term).expect("same field");
        }
        acc
    } else {
        // a^((q^d - 1)/2) = (prod_k a^(q^k))^((q - 1)/2)
        let mut conj = a.rem(f).expect("nonzero");
        let mut norm = conj.clone();
        for _ in 1..d {
            conj = conj.frobenius_mod(f).expect("nonzero");
            norm = norm.mul(&conj).expect("same field").rem(f).expect("nonzero");
        }
        let half = (k.order() as u64 - 1) / 2;
        norm.pow_mod(half, f).expect("nonzero").sub(&one(k)).expect("same field")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_make;

    fn f(p: u64, e: u32) -> Arc<FiniteField> {
        Arc::new(field_make(p, e).unwrap())
    }

    #[test]
    fn x2_x_1_irreducible_over_f2() {
        let k = f(2, 1);
        let g = FqPoly::new(k, vec![1, 1, 1]);
        assert!(is_irreducible(&g));
        let fz = factor(&g).unwrap();
        assert_eq!(fz.factors, vec![(g, 1)]);
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        let k = f(3, 1);
        let x = FqPoly::x(k.clone());
        let xp1 = FqPoly::new(k.clone(), vec![1, 1]);
        // x^3 (x+1)^2 (x^2+1)
        let g = FqPoly::new(k.clone(), vec![1, 0, 1]);
        let prod = x.pow(3).mul(&xp1.pow(2)).unwrap().mul(&g).unwrap().scale(2);
        let fz = factor(&prod).unwrap();
        assert_eq!(fz.unit, 2);
        assert_eq!(fz.factors, vec![(x, 3), (xp1, 2), (g, 1)]);
        assert_eq!(fz.expand(&k), prod);
    }

    #[test]
    fn irreducible_counts_match_formula() {
        for (p, e, d) in [(2, 1, 4), (3, 1, 3), (2, 2, 3), (5, 1, 2)] {
            let k = f(p, e);
            let n = monic_irreducibles(&k, d).len() as u64;
            let want = crate::numth::count_monic_irreducible(k.order() as u64, d);
            assert_eq!(num_bigint::BigInt::from(n), want, "q={} d={d}", k.order());
        }
    }

    #[test]
    fn zero_polynomial_has_no_factorization() {
        assert!(factor(&FqPoly::zero(f(2, 1))).is_err());
    }
}
