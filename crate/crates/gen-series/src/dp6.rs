//! Closed form of the coefficients of
//! `(1 - rho t_2^2 t_3^2)(1 - rho t_1 t_2 t_3) prod (1 - t_i) G_{rho,nu}` for the
//! degree 6 del Pezzo surface with an `A_2` singularity, where
//! `G_{rho,nu} = sum_d rho^{floor((min(x_2,x_3) + min(x_1,x_2,x_3))/2)} t^d`
//! and `x_j = d_j + nu_j`.

use crate::series::TruncatedSeries;
use exact_arith::RhoPolynomial;
use std::collections::BTreeMap;

/// Signed sum over `(gamma, mu) in {0,1}^2 x {0,1}^3` with
/// `mu_1 + gamma_1 <= d_1`, `mu_j + gamma_1 + 2 gamma_2 <= d_j` (`j = 2, 3`).
pub fn dp6a2_coeff(nu: [u32; 3], d: [u32; 3]) -> RhoPolynomial {
    let (nu, d) = (nu.map(i64::from), d.map(i64::from));
    let mut p = RhoPolynomial::zero();
    for gamma in 0..4u32 {
        let (g1, g2) = ((gamma & 1) as i64, (gamma >> 1) as i64);
        for mu in 0..8u32 {
            let m = [0, 1, 2].map(|i| (mu >> i & 1) as i64);
            if m[0] + g1 > d[0] || m[1] + g1 + 2 * g2 > d[1] || m[2] + g1 + 2 * g2 > d[2] {
                continue;
            }
            let y = [0, 1, 2].map(|i| d[i] + nu[i] - m[i]);
            let a = y[1].min(y[2]);
            let b = y[0].min(y[1] - 2 * g2).min(y[2] - 2 * g2);
            let phi = a - (a - b + 1).div_euclid(2);
            let sign = if (gamma.count_ones() + mu.count_ones()) % 2 == 0 { 1 } else { -1 };
            p.add_term(phi as u32, sign);
        }
    }
    p
}

/// Multiplies a three-variable truncated series by
/// `(1 - rho t_2^2 t_3^2)(1 - rho t_1 t_2 t_3)`, keeping the box.
pub fn times_dp6a2_numerator(s: &TruncatedSeries) -> TruncatedSeries {
    assert_eq!(s.vars, 3, "three series variables expected");
    let mut out: BTreeMap<Vec<u32>, RhoPolynomial> = BTreeMap::new();
    for (d, p) in &s.coeffs {
        for gamma in 0..4u32 {
            let (g1, g2) = (gamma & 1, gamma >> 1);
            let shifted = vec![d[0] + g1, d[1] + g1 + 2 * g2, d[2] + g1 + 2 * g2];
            if shifted.iter().any(|&x| x > s.bound) {
                continue;
            }
            let sign = if gamma.count_ones() % 2 == 0 { 1 } else { -1 };
            let term = p.shift(gamma.count_ones(), sign);
            let entry = out.entry(shifted).or_default();
            *entry = entry.add(&term);
        }
    }
    out.retain(|_, p| !p.is_zero());
    TruncatedSeries { e: s.e.clone(), bound: s.bound, vars: 3, coeffs: out }
}
