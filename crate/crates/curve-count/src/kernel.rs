//! Kernels of `(t_j) -> sum_j t_j s_j` and of the quasi-linear variant
//! `(t_j) -> t_1^2 s_1 + sum_{k>=2} t_k s_k`, with the dimension bounds they
//! satisfy on `P^1`.

use crate::divisor::Place;
use crate::form::{inf_of, poly_deg, Form};
use crate::relation::Relation;
use crate::CurveError;
use exact_arith::field::FiniteField;
use exact_arith::poly::raw;
use exact_arith::{factor, FqPoly};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;
use variety_model::RelationShape;

/// Nonzero sections `s_j` of degree `H_j` (the form degree) together with
/// the degrees `H'_j` of the unknowns and the target degree `H`.
#[derive(Clone, Debug)]
pub struct SectionData {
    pub s: Vec<Form>,
    pub h_prime: Vec<i64>,
    pub h: i64,
}

impl SectionData {
    fn check(&self, shape: RelationShape) -> Result<(), CurveError> {
        if self.s.len() != self.h_prime.len() || self.s.is_empty() {
            return Err(CurveError::Degrees("one H' per section expected".into()));
        }
        for (j, (s, &hp)) in self.s.iter().zip(&self.h_prime).enumerate() {
            let e = if j == 0 && shape == RelationShape::QuasiLinearT1Squared { 2 } else { 1 };
            if s.is_zero() || poly_deg(&s.poly) > s.deg || s.deg + e * hp != self.h {
                return Err(CurveError::Degrees(format!("section {j}: H_j = {}, H'_j = {hp}, H = {}", s.deg, self.h)));
            }
        }
        Ok(())
    }

    fn relation(&self, shape: RelationShape) -> Relation {
        Relation {
            coeffs: self.s.iter().map(|s| s.poly.clone()).collect(),
            lens: self.h_prime.iter().map(|&h| (h + 1).max(0) as usize).collect(),
            squared_first: shape == RelationShape::QuasiLinearT1Squared,
        }
    }
}

/// Number of elements of the kernel.
pub fn kernel_count(k: &FiniteField, data: &SectionData, shape: RelationShape) -> Result<u128, CurveError> {
    data.check(shape)?;
    Ok(data.relation(shape).count(k, u32::MAX))
}

/// `Delta_s`: the kernel dimension, or `log_q` of the solution count in the
/// quasi-linear case (an error if that count is not a power of `q`).
pub fn kernel_dim(k: &FiniteField, data: &SectionData, shape: RelationShape) -> Result<u32, CurveError> {
    let count = kernel_count(k, data, shape)?;
    let q = k.order() as u128;
    exact_log(count, q).ok_or(CurveError::NotPower { count, q: q as u64 })
}

fn exact_log(mut n: u128, q: u128) -> Option<u32> {
    let mut e = 0;
    while n > 1 && n % q == 0 {
        n /= q;
        e += 1;
    }
    (n == 1).then_some(e)
}

/// `count <= q^{num/den}` (`den` is 1 or 2 here).
fn count_at_most(count: u128, q: u64, num: i64, den: u32) -> bool {
    if num < 0 {
        return count == 0;
    }
    let lhs = exact_arith::BigInt::from(count).pow(den);
    lhs <= exact_arith::BigInt::from(q).pow(num as u32)
}

#[derive(Clone, Debug, Serialize)]
pub struct LinearCheck {
    pub q: u64,
    pub h: i64,
    pub h_prime: Vec<i64>,
    pub inf_degree: i64,
    pub delta: u32,
    pub bound_avg: bool,
    pub bound_split: bool,
    /// Whether the consecutive-sum hypothesis of the exact formula holds.
    pub exact_case: bool,
    pub exact: Option<bool>,
    pub image: Option<bool>,
}

impl LinearCheck {
    pub fn pass(&self) -> bool {
        self.bound_avg && self.bound_split && self.exact != Some(false) && self.image != Some(false)
    }
}

/// Checks `Delta_s` against the general bounds and, when the hypothesis of
/// the exact case holds, against the exact value and the description of
/// the image as the multiples of the common divisor.
pub fn check_linear(k: &FiniteField, data: &SectionData) -> Result<LinearCheck, CurveError> {
    data.check(RelationShape::Linear)?;
    let n = data.s.len() as i64;
    let delta = exact_arith::linalg::nullity(k, &image_matrix(data), col_count(data)) as u32;
    let d = delta as i64;
    let sum_hp: i64 = data.h_prime.iter().sum();
    let refs: Vec<&Form> = data.s.iter().collect();
    let (g, inf_order) = inf_of(k, &refs);
    let inf_degree = poly_deg(&g) + inf_order;
    // n d <= n (n - 1) + (n - 1) sum H'
    let bound_avg = n * d <= n * (n - 1) + (n - 1) * sum_hp;
    let first = d <= n - 1 + inf_degree - data.h + sum_hp;
    let second = if n >= 2 { (n - 1) * d <= (n - 1) * (n - 2) + (n - 2) * sum_hp } else { false };
    let bound_split = first || second;
    let exact_case = data.h_prime.windows(2).all(|w| w[0] + w[1] >= data.h - inf_degree - 1);
    let (mut exact, mut image) = (None, None);
    if exact_case {
        exact = Some(d == (n - 1) + inf_degree - data.h + sum_hp);
        image = Some(image_is_multiples(k, data, &g, inf_order, delta));
    }
    Ok(LinearCheck {
        q: k.order() as u64,
        h: data.h,
        h_prime: data.h_prime.clone(),
        inf_degree,
        delta,
        bound_avg,
        bound_split,
        exact_case,
        exact,
        image,
    })
}

fn col_count(data: &SectionData) -> usize {
    data.h_prime.iter().map(|&h| (h + 1).max(0) as usize).sum()
}

fn image_matrix(data: &SectionData) -> Vec<Vec<u32>> {
    let c: Vec<&[u32]> = data.s.iter().map(|s| s.poly.as_slice()).collect();
    let lens: Vec<usize> = data.h_prime.iter().map(|&h| (h + 1).max(0) as usize).collect();
    crate::form::multiplication_matrix(&c, &lens, (data.h + 1).max(1) as usize)
}

/// Every generator `x^a s_j` of the image is a multiple of the common
/// divisor (as a form of degree `H`), and the image has dimension
/// `H - deg Inf + 1`.
fn image_is_multiples(k: &FiniteField, data: &SectionData, g: &[u32], inf_order: i64, delta: u32) -> bool {
    for (s, &hp) in data.s.iter().zip(&data.h_prime) {
        if hp < 0 {
            continue;
        }
        let divisible = raw::divrem(k, &s.poly, g).is_some_and(|(_, r)| r.is_empty());
        // x^a s_j has order H - a - deg s_j >= inf_order at infinity for a <= H'_j.
        if !divisible || data.h - hp - poly_deg(&s.poly) < inf_order {
            return false;
        }
    }
    let rank = col_count(data) as i64 - delta as i64;
    rank == data.h - (poly_deg(g) + inf_order) + 1
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiCheck {
    pub q: u64,
    pub h: i64,
    pub h_prime: Vec<i64>,
    /// Solution counts for `(s_1, s_2)` and `(s_1, s_2, s_3)`.
    pub count_two: String,
    pub count_three: String,
    /// Degrees of `Inf(s_2, s_3)` and of the rounded-up half difference.
    pub inf23: i64,
    pub ceil_half: i64,
    pub bound_two: bool,
    pub bound_three: bool,
    pub exact_case: bool,
    pub exact: Option<bool>,
}

impl QuasiCheck {
    pub fn pass(&self) -> bool {
        self.bound_two && self.bound_three && self.exact != Some(false)
    }
}

/// `deg ceil((Inf(s_2, s_3) - Inf(s_1, s_2, s_3)) / 2)`, from per-place
/// valuations.
pub fn ceil_half_difference(k: &Arc<FiniteField>, s: &[Form]) -> Result<i64, CurveError> {
    let (g23, inf23) = inf_of(k, &[&s[1], &s[2]]);
    let (g123, inf123) = inf_of(k, &[&s[0], &s[1], &s[2]]);
    let mut total = (inf23 - inf123 + 1).div_euclid(2);
    if poly_deg(&g23) > 0 {
        let g123 = Form { deg: poly_deg(&g123), poly: g123 };
        for (p, a) in factor(&FqPoly::new(k.clone(), g23))?.factors {
            let place = Place::Finite(p.into_coeffs());
            let b = place.valuation(k, &g123);
            total += place.degree() * (a as i64 - b + 1).div_euclid(2);
        }
    }
    Ok(total)
}

pub fn check_quasi(k: &Arc<FiniteField>, data: &SectionData) -> Result<QuasiCheck, CurveError> {
    let shape = RelationShape::QuasiLinearT1Squared;
    if data.s.len() != 3 {
        return Err(CurveError::Degrees("three sections expected".into()));
    }
    data.check(shape)?;
    let q = k.order() as u64;
    let hp = &data.h_prime;
    let two = SectionData { s: data.s[..2].to_vec(), h_prime: hp[..2].to_vec(), h: data.h };
    let count_two = kernel_count(k, &two, shape)?;
    let count_three = kernel_count(k, data, shape)?;
    let inf23 = {
        let (g, o) = inf_of(k, &[&data.s[1], &data.s[2]]);
        poly_deg(&g) + o
    };
    let ceil_half = ceil_half_difference(k, &data.s)?;
    let sum_hp: i64 = hp.iter().sum();
    let bound_two = count_at_most(count_two, q, 2 + hp[0] + hp[1], 2);
    let generic = 2 + sum_hp - data.h + inf23 - ceil_half;
    let bound_three = count_at_most(count_three, q, 1 + hp[0], 1) || count_at_most(count_three, q, generic, 1);
    let exact_case = hp[1] + hp[2] >= data.h - inf23 - 1 && hp[0] >= ceil_half - 1;
    let exact = exact_case.then(|| generic >= 0 && exact_log(count_three, q as u128) == Some(generic as u32));
    Ok(QuasiCheck {
        q,
        h: data.h,
        h_prime: hp.clone(),
        count_two: count_two.to_string(),
        count_three: count_three.to_string(),
        inf23,
        ceil_half,
        bound_two,
        bound_three,
        exact_case,
        exact,
    })
}

fn random_form(rng: &mut ChaCha8Rng, q: u64, deg: i64) -> Form {
    loop {
        let poly: Vec<u32> = (0..=deg).map(|_| rng.gen_range(0..q) as u32).collect();
        if let Ok(f) = Form::new(poly, deg) {
            if !f.is_zero() {
                return f;
            }
        }
    }
}

/// Random sections, with a shared factor half of the time so that the
/// common divisor is often nontrivial.
fn random_sections(rng: &mut ChaCha8Rng, k: &FiniteField, q: u64, degs: &[i64]) -> Vec<Form> {
    let min = *degs.iter().min().expect("at least one section");
    let common = if min > 0 && rng.gen_bool(0.5) {
        let d = rng.gen_range(1..=min);
        random_form(rng, q, d)
    } else {
        Form::one()
    };
    degs.iter().map(|&d| common.mul(k, &random_form(rng, q, d - common.deg))).collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub instances: usize,
    pub exact_cases: usize,
    pub violations: Vec<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Random linear instances with `n in {2,3,4}` and `q in {2,3}`.
pub fn linear_suite(seed: u64, instances: usize) -> Result<SuiteReport, CurveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [FiniteField::with_order(2)?, FiniteField::with_order(3)?];
    let mut report = SuiteReport { instances, ..Default::default() };
    for i in 0..instances {
        let k = &fields[rng.gen_range(0..2)];
        let q = k.order() as u64;
        let n = rng.gen_range(2..=4);
        let h = rng.gen_range(0..=6i64);
        let h_prime: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=h)).collect();
        let degs: Vec<i64> = h_prime.iter().map(|&x| h - x).collect();
        let data = SectionData { s: random_sections(&mut rng, k, q, &degs), h_prime, h };
        let c = check_linear(k, &data)?;
        report.exact_cases += c.exact_case as usize;
        if !c.pass() {
            report.violations.push(format!("instance {i}: {c:?}"));
        }
    }
    Ok(report)
}

/// Random instances of `t_1^2 s_1 + t_2 s_2 + t_3 s_3` with `q in {2,3,4,5}`.
pub fn quasi_suite(seed: u64, instances: usize) -> Result<SuiteReport, CurveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields: Vec<Arc<FiniteField>> =
        [2, 3, 4, 5].iter().map(|&q| FiniteField::with_order(q).map(Arc::new)).collect::<Result<_, _>>()?;
    let mut report = SuiteReport { instances, ..Default::default() };
    for i in 0..instances {
        let k = &fields[rng.gen_range(0..fields.len())];
        let q = k.order() as u64;
        let h = rng.gen_range(0..=7i64);
        let h1 = rng.gen_range(0..=h / 2);
        let h_prime = vec![h1, rng.gen_range(0..=h), rng.gen_range(0..=h)];
        let degs = vec![h - 2 * h1, h - h_prime[1], h - h_prime[2]];
        let data = SectionData { s: random_sections(&mut rng, k, q, &degs), h_prime, h };
        let c = check_quasi(k, &data)?;
        report.exact_cases += c.exact_case as usize;
        if !c.pass() {
            report.violations.push(format!("instance {i}: {c:?}"));
        }
    }
    Ok(report)
}
