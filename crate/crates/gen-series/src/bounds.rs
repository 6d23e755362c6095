//! Degree bounds on the coefficients of a truncated series, and the finite
//! convergence condition on the patterns carried by `mu0`.

use crate::exponent::ExponentForm;
use crate::series::TruncatedSeries;
use crate::SeriesError;
use exact_arith::Degree;
use serde::Serialize;
use variety_model::{mu0, rlv_and_incidence, RelationShape, VarietyDescriptor};

/// `eta` in `(1 - eta)|d| >= 1 + eta + deg P_{0,d}`, as a fraction.
pub const ETA: (i64, i64) = (1, 16);

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCertificate {
    pub bound: u32,
    pub eta: (i64, i64),
    /// Nonzero coefficients with `d != 0` inside the box.
    pub checked: usize,
    /// `(1 - eta)|d| >= 1 + eta + deg`: only meaningful for `e = 0`.
    pub growth: Option<bool>,
    /// `deg P_{e,d} <= phi(d)`, the exponent before the shifts.
    pub exponent_bound: bool,
    /// `c` and whether `deg P_{e,d} <= |d| + c` held everywhere.
    pub shift_constant: i64,
    pub shift_bound: bool,
    /// Quasi-linear shape only: `deg P_{e,d} <= |d| + 1/2`.
    pub half_bound: Option<bool>,
    /// `max (deg P_{e,d} - |d|)` over the checked coefficients.
    pub max_excess: Option<i64>,
    /// A few exponent vectors where a required bound failed.
    pub violations: Vec<Vec<u32>>,
    pub pass: bool,
}

pub fn check_degree_bounds(s: &TruncatedSeries, v: &VarietyDescriptor) -> Result<DegreeCertificate, SeriesError> {
    let form = ExponentForm::new(v, &s.e)?;
    if form.vars() != s.vars {
        return Err(SeriesError::Dump(format!("series has {} variables, descriptor {}", s.vars, form.vars())));
    }
    let is_zero_pattern = s.e.iter().all(|&x| x == 0);
    let c = form.shift_bound();
    let (mut growth, mut exponent_bound, mut shift_bound, mut half) = (true, true, true, true);
    let mut max_excess: Option<i64> = None;
    let mut violations = Vec::new();
    let mut checked = 0;
    for (d, p) in &s.coeffs {
        let size: i64 = d.iter().map(|&x| x as i64).sum();
        if size == 0 {
            continue;
        }
        let Degree::Finite(deg) = p.degree() else { continue };
        let deg = deg as i64;
        checked += 1;
        max_excess = Some(max_excess.map_or(deg - size, |m| m.max(deg - size)));
        let g = ETA.1 * (deg + 1) + ETA.0 <= (ETA.1 - ETA.0) * size;
        let x = deg <= form.phi(d);
        let sb = deg <= size + c;
        half &= 2 * deg <= 2 * size + 1;
        growth &= g;
        exponent_bound &= x;
        shift_bound &= sb;
        if (!g && is_zero_pattern || !x || !sb) && violations.len() < 8 {
            violations.push(d.clone());
        }
    }
    let growth = is_zero_pattern.then_some(growth);
    let pass = growth.unwrap_or(true) && exponent_bound && shift_bound;
    Ok(DegreeCertificate {
        bound: s.bound,
        eta: ETA,
        checked,
        growth,
        exponent_bound,
        shift_constant: c,
        shift_bound,
        half_bound: matches!(v.shape, RelationShape::QuasiLinearT1Squared).then_some(half),
        max_excess,
        violations,
        pass,
    })
}

/// `min_i (d_i + nu_i) <= |d| + min_i nu_i` for nonnegative `d`.
pub fn min_shift_holds(nu: &[i64], d: &[i64]) -> bool {
    let lhs = nu.iter().zip(d).map(|(n, x)| n + x).min().unwrap_or(0);
    let rhs = d.iter().sum::<i64>() + nu.iter().copied().min().unwrap_or(0);
    lhs <= rhs
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    /// Nonzero patterns `e` with `mu0(e) != 0`.
    pub checked: usize,
    /// Largest value of `2 (c(e) - |e|)` seen, where `deg P_{e,d} <= |d| + c(e)`
    /// and `c(e)` may be a half-integer.
    pub worst_doubled: Option<i64>,
    pub failures: Vec<u32>,
    pub pass: bool,
}

/// Every nonzero pattern in the support of `mu0` must satisfy
/// `c(e) - |e| < -1`, which makes the Euler product over those patterns
/// converge absolutely.
pub fn convergence_certificate(v: &VarietyDescriptor) -> Result<ConvergenceReport, SeriesError> {
    let inc = rlv_and_incidence(v)?;
    let mu = mu0(&inc);
    let n = v.coord_count();
    let mut worst: Option<i64> = None;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (mask, _) in mu.support().filter(|&(m, _)| m != 0) {
        let e: Vec<u32> = (0..n).map(|k| mask >> k & 1).collect();
        let val = ExponentForm::new(v, &e)?.shift_bound_doubled() - 2 * mask.count_ones() as i64;
        checked += 1;
        worst = Some(worst.map_or(val, |w| w.max(val)));
        if val >= -2 {
            failures.push(mask);
        }
    }
    Ok(ConvergenceReport { checked, worst_doubled: worst, pass: failures.is_empty(), failures })
}
