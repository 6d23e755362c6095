//! Morphisms `P^1 -> X` landing in the open torus-orbit part, counted
//! directly as Cox tuples of forms up to the Neron-Severi torus.

use crate::form::{common_zero, Form};
use crate::nde::plug_in;
use crate::CurveError;
use exact_arith::field::FiniteField;
use exact_arith::poly::raw;
use lattice_fan::enumerate_dual_points;
use rayon::prelude::*;
use serde::Serialize;
use variety_model::{rlv_and_incidence, Incidence, VarietyDescriptor};

/// Cap on `prod_k q^{deg u_k + 1}` per multidegree.
pub const BRUTE_CAP: u128 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultidegreeCount {
    pub y: Vec<i64>,
    pub count: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCount {
    pub m: i64,
    pub total: i128,
    pub per_y: Vec<MultidegreeCount>,
    /// Multidegrees left out because of the caps.
    pub skipped: Vec<Vec<i64>>,
}

impl CurveCount {
    pub fn complete(&self) -> bool {
        self.skipped.is_empty()
    }
}

/// Degrees `<y, deg u_k>` of every coordinate.
pub fn coordinate_degrees(v: &VarietyDescriptor, y: &[i64]) -> Vec<i64> {
    (0..v.coord_count()).map(|c| v.degree(c).0.iter().zip(y).map(|(a, b)| a * b).sum()).collect()
}

/// Minimal sets of coordinates whose divisors do not meet.
pub fn minimal_non_meeting(inc: &Incidence, coords: usize) -> Vec<u32> {
    (1..1u32 << coords)
        .filter(|&m| !inc.holds(m) && (0..coords).all(|b| m >> b & 1 == 0 || inc.holds(m ^ (1 << b))))
        .collect()
}

/// At every closed point the coordinates vanishing there index divisors
/// that meet: no minimal non-meeting set has a common zero.
pub fn admissible(k: &FiniteField, forms: &[Form], blocks: &[u32]) -> bool {
    blocks.iter().all(|&b| {
        let chosen: Vec<&Form> = forms.iter().enumerate().filter(|(c, _)| b >> c & 1 == 1).map(|(_, f)| f).collect();
        !common_zero(k, &chosen)
    })
}

fn space_size(q: u64, degs: &[i64]) -> Option<u128> {
    degs.iter().try_fold(1u128, |acc, &d| acc.checked_mul((q as u128).checked_pow((d + 1).max(0) as u32)?))
}

/// Admissible tuples of nonzero forms of multidegree `y` (before dividing
/// by the torus).
pub fn raw_count(k: &FiniteField, v: &VarietyDescriptor, blocks: &[u32], y: &[i64]) -> u128 {
    let q = k.order() as u64;
    let degs = coordinate_degrees(v, y);
    let ns = v.s.len();
    if degs.iter().any(|&d| d < 0) {
        return 0;
    }
    let sizes: Vec<u64> = degs[..ns].iter().map(|&d| q.pow(d as u32 + 1) - 1).collect();
    let total: u64 = sizes.iter().product();
    let t_deg = &degs[ns..];
    let g = vec![Form::one(); v.t.len()];
    (0..total)
        .into_par_iter()
        .map(|mut code| {
            let s: Vec<Form> = degs[..ns]
                .iter()
                .zip(&sizes)
                .map(|(&d, &size)| {
                    let c = code % size + 1;
                    code /= size;
                    Form { poly: raw::from_code(q, d as u32 + 1, c), deg: d }
                })
                .collect();
            let rel = plug_in(k, v, &s, &g, t_deg);
            let mut n = 0u128;
            let mut forms = s.clone();
            forms.extend(t_deg.iter().map(|&d| Form { poly: Vec::new(), deg: d }));
            rel.for_each_solution(k, u32::MAX, |t| {
                if t.iter().any(|x| x.is_empty()) {
                    return;
                }
                for (j, tj) in t.iter().enumerate() {
                    forms[ns + j].poly.clone_from(tj);
                }
                n += admissible(k, &forms, blocks) as u128;
            });
            n
        })
        .sum()
}

/// `N(m)`: morphisms of anticanonical degree `m` with all coordinates
/// nonzero, summed over the multidegrees `y` with `<y, -K> = m`.
pub fn brute_force_n(v: &VarietyDescriptor, q: u64, m: i64) -> Result<CurveCount, CurveError> {
    let k = FiniteField::with_order(q)?;
    let inc = rlv_and_incidence(v)?;
    let blocks = minimal_non_meeting(&inc, v.coord_count());
    let ys = enumerate_dual_points(&v.eff_cone(), &v.anticanonical()?, m, &[])?;
    let torus = (q as u128 - 1).pow(v.pic_rank() as u32);
    let mut out = CurveCount { m, total: 0, per_y: Vec::new(), skipped: Vec::new() };
    for y in ys {
        if space_size(q, &coordinate_degrees(v, &y)).is_none_or(|s| s > BRUTE_CAP) {
            out.skipped.push(y);
            continue;
        }
        let raw = raw_count(&k, v, &blocks, &y);
        if raw % torus != 0 {
            return Err(CurveError::NotDivisible { y, raw: raw as u64, rank: v.pic_rank() });
        }
        out.total += (raw / torus) as i128;
        out.per_y.push(MultidegreeCount { y, count: (raw / torus) as i128 });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use variety_model::builtin_xn;

    #[test]
    fn x3_blocks() {
        let v = builtin_xn(3).unwrap();
        let inc = rlv_and_incidence(&v).unwrap();
        let blocks = minimal_non_meeting(&inc, 7);
        assert!(!blocks.is_empty());
        assert!(blocks.iter().all(|&b| b.count_ones() >= 2));
    }

    #[test]
    fn constant_maps() {
        let v = builtin_xn(3).unwrap();
        for q in [2, 3] {
            let n = brute_force_n(&v, q, 0).unwrap();
            assert_eq!(exact_arith::BigInt::from(n.total), point_count::count_open(&v, q).unwrap());
        }
        assert_eq!(brute_force_n(&v, 2, 0).unwrap().total, 0);
    }
}
