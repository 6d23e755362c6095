//! The right side of the torsor lifting formula, coefficient by
//! coefficient: `sum_y sum_E mu(E) sum_D N(D, E)`.

use crate::brute::{coordinate_degrees, CurveCount, MultidegreeCount, BRUTE_CAP};
use crate::divisor::{divisor_count, divisor_sections, places_up_to, EffDivisor, Place};
use crate::form::Form;
use crate::mu::MuDivCache;
use crate::nde::{all_nonzero_by_inclusion_exclusion, pic_coordinates, plug_in, twisted};
use crate::CurveError;
use exact_arith::field::{Elem, FiniteField};
use lattice_fan::enumerate_dual_points;
use rayon::prelude::*;
use std::sync::Arc;
use variety_model::VarietyDescriptor;

/// A divisor tuple `E` with nonzero `mu`, one squarefree pattern per place.
#[derive(Clone, Debug)]
pub struct MuTerm {
    pub places: Vec<(Place, u32)>,
    pub mu: i64,
}

impl MuTerm {
    pub fn divisors(&self, coords: usize) -> Vec<EffDivisor> {
        (0..coords)
            .map(|c| {
                EffDivisor::from_parts(self.places.iter().filter(|(_, m)| m >> c & 1 == 1).map(|(p, _)| (p.clone(), 1)).collect())
            })
            .collect()
    }
}

/// Every `E` with `mu(E) != 0` and `deg E_k <= budget[k]`.
pub fn mu_terms(k: &Arc<FiniteField>, cache: &MuDivCache, budget: &[i64]) -> Vec<MuTerm> {
    let max = budget.iter().copied().max().unwrap_or(0);
    let places = places_up_to(k, max);
    let patterns: Vec<(u32, i64)> = cache.table.support().filter(|&(m, _)| m != 0).collect();
    let mut out = Vec::new();
    let mut used = vec![0i64; budget.len()];
    let mut chosen = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        idx: usize,
        places: &[Place],
        patterns: &[(u32, i64)],
        budget: &[i64],
        used: &mut Vec<i64>,
        chosen: &mut Vec<(Place, u32)>,
        mu: i64,
        out: &mut Vec<MuTerm>,
    ) {
        if idx == places.len() {
            out.push(MuTerm { places: chosen.clone(), mu });
            return;
        }
        rec(idx + 1, places, patterns, budget, used, chosen, mu, out);
        let deg = places[idx].degree();
        for &(mask, value) in patterns {
            let fits = (0..budget.len()).all(|c| mask >> c & 1 == 0 || used[c] + deg <= budget[c]);
            if !fits {
                continue;
            }
            for (c, u) in used.iter_mut().enumerate() {
                *u += deg * (mask >> c & 1) as i64;
            }
            chosen.push((places[idx].clone(), mask));
            rec(idx + 1, places, patterns, budget, used, chosen, mu * value, out);
            chosen.pop();
            for (c, u) in used.iter_mut().enumerate() {
                *u -= deg * (mask >> c & 1) as i64;
            }
        }
    }
    rec(0, &places, &patterns, budget, &mut used, &mut chosen, 1, &mut out);
    out
}

/// `sum_D N(D, E)` for one multidegree, sections scaled by `twist^{deg}`.
fn sum_over_d(k: &FiniteField, v: &VarietyDescriptor, y_degs: &[i64], e: &[EffDivisor], twist: Elem) -> Result<i128, CurveError> {
    let q = k.order() as u64;
    let (ns, nt) = (v.s.len(), v.t.len());
    let se: Vec<Form> = e.iter().map(|d| twisted(k, d, twist)).collect();
    let d_deg: Vec<i64> = (0..ns).map(|i| y_degs[i] - se[i].deg).collect();
    let t_deg: Vec<i64> = (0..nt).map(|j| y_degs[ns + j] - se[ns + j].deg).collect();
    let active: Vec<usize> = (0..ns).filter(|&i| v.b[i].iter().any(|&x| x > 0)).collect();
    // Sections of the inactive D_i do not enter the relation.
    let mut passive: i128 = 1;
    for i in (0..ns).filter(|i| !active.contains(i)) {
        passive *= divisor_count(q, d_deg[i]) as i128;
    }
    let choices: Vec<Vec<Form>> = active
        .iter()
        .map(|&i| {
            Ok(divisor_sections(q, d_deg[i])?
                .into_iter()
                .map(|f| {
                    let c = k.pow(twist, f.deg as u64);
                    f.scale(k, c)
                })
                .collect())
        })
        .collect::<Result<_, CurveError>>()?;
    let total_d: usize = choices.iter().map(Vec::len).product();
    let g = &se[ns..];
    let sum: i128 = (0..total_d)
        .into_par_iter()
        .map(|mut code| {
            let mut s: Vec<Form> = se[..ns].to_vec();
            for (a, &i) in active.iter().enumerate() {
                let n = choices[a].len();
                s[i] = choices[a][code % n].mul(k, &se[i]);
                code /= n;
            }
            all_nonzero_by_inclusion_exclusion(k, &plug_in(k, v, &s, g, &t_deg))
        })
        .sum();
    Ok(passive * sum)
}

/// Coefficient of `t^m` on the lifted side, with canonical sections scaled
/// by `twist^{deg}` (`twist = 1` is the plain monic choice).
pub fn lifting_rhs_twisted(v: &VarietyDescriptor, q: u64, m: i64, twist: Elem) -> Result<CurveCount, CurveError> {
    let k = Arc::new(FiniteField::with_order(q)?);
    if twist == 0 || twist >= k.order() {
        return Err(CurveError::Degrees(format!("twist {twist} is not a unit of F_{q}")));
    }
    pic_coordinates(v)?;
    let cache = MuDivCache::new(v)?;
    let ys = enumerate_dual_points(&v.eff_cone(), &v.anticanonical()?, m, &[])?;
    let mut out = CurveCount { m, total: 0, per_y: Vec::new(), skipped: Vec::new() };
    for y in ys {
        let degs = coordinate_degrees(v, &y);
        let size = degs.iter().try_fold(1u128, |acc, &d| acc.checked_mul((q as u128).checked_pow((d + 1).max(0) as u32)?));
        if size.is_none_or(|s| s > BRUTE_CAP) {
            out.skipped.push(y);
            continue;
        }
        let mut total = 0i128;
        for term in mu_terms(&k, &cache, &degs) {
            total += term.mu as i128 * sum_over_d(&k, v, &degs, &term.divisors(v.coord_count()), twist)?;
        }
        out.total += total;
        out.per_y.push(MultidegreeCount { y, count: total });
    }
    Ok(out)
}

pub fn lifting_rhs(v: &VarietyDescriptor, q: u64, m: i64) -> Result<CurveCount, CurveError> {
    lifting_rhs_twisted(v, q, m, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use variety_model::builtin_xn;

    #[test]
    fn terms_respect_budgets_and_mu() {
        let v = builtin_xn(3).unwrap();
        let k = Arc::new(FiniteField::with_order(2).unwrap());
        let cache = MuDivCache::new(&v).unwrap();
        let budget = [0, 1, 1, 0, 1, 2, 1];
        let terms = mu_terms(&k, &cache, &budget);
        assert_eq!(terms.iter().filter(|t| t.places.is_empty()).count(), 1);
        for t in &terms {
            let e = t.divisors(7);
            assert!(e.iter().zip(&budget).all(|(d, &b)| d.degree() <= b));
            assert_eq!(cache.mu_div(&e).unwrap(), t.mu);
            assert_ne!(t.mu, 0);
        }
    }

    #[test]
    fn constant_maps_agree() {
        let v = builtin_xn(3).unwrap();
        for q in [2, 3] {
            assert_eq!(lifting_rhs(&v, q, 0).unwrap().total, crate::brute::brute_force_n(&v, q, 0).unwrap().total);
        }
    }
}
