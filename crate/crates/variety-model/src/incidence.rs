//! F-faces, relevant supports and the incidence of coordinate divisors.
//!
//! A support pattern is the set of coordinates that are nonzero. A point of
//! the Cox variety with support `S` lies over `X` exactly when `S` is
//! relevant, and the divisors `E_k`, `k in V`, meet iff some relevant `S`
//! avoids `V`.

use crate::descriptor::{IncidenceSource, VarietyDescriptor};
use crate::ModelError;
use exact_arith::rational::int;
use lattice_fan::Cone;
use serde::Serialize;

/// Does the relation admit a zero with exactly the coordinates in `support`
/// nonzero? Over an algebraically closed field this happens iff the number
/// of monomials supported in `support` is not exactly one.
pub fn is_f_face(v: &VarietyDescriptor, support: u32) -> bool {
    surviving_monomials(v, support) != 1
}

pub fn surviving_monomials(v: &VarietyDescriptor, support: u32) -> usize {
    v.monomials().iter().filter(|m| m.iter().all(|&(k, _)| support >> k & 1 == 1)).count()
}

#[derive(Clone, Debug, Serialize)]
pub struct Incidence {
    pub coords: usize,
    /// Minimal elements of the covering collection (empty for external data).
    pub cov: Vec<u32>,
    /// All relevant supports, sorted.
    pub rlv: Vec<u32>,
    /// `meets[V]`: the divisors indexed by `V` have a common point.
    #[serde(skip)]
    meets: Vec<bool>,
}

impl Incidence {
    pub fn holds(&self, vanishing: u32) -> bool {
        self.meets[vanishing as usize]
    }

    pub fn is_relevant(&self, support: u32) -> bool {
        self.rlv.binary_search(&support).is_ok()
    }

    fn from_rlv(coords: usize, cov: Vec<u32>, mut rlv: Vec<u32>) -> Incidence {
        rlv.sort_unstable();
        rlv.dedup();
        let full = ((1u64 << coords) - 1) as u32;
        // V meets iff V is a subset of the complement of a relevant support.
        let mut meets = vec![false; 1 << coords];
        for &r in &rlv {
            meets[(full & !r) as usize] = true;
        }
        for bit in 0..coords {
            for m in (0..1usize << coords).rev() {
                if m >> bit & 1 == 1 && meets[m] {
                    meets[m ^ (1 << bit)] = true;
                }
            }
        }
        Incidence { coords, cov, rlv, meets }
    }
}

fn minimal(mut sets: Vec<u32>) -> Vec<u32> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut out: Vec<u32> = Vec::new();
    for s in sets {
        if !out.iter().any(|&m| m & s == m) {
            out.push(s);
        }
    }
    out.sort_unstable();
    out
}

/// The relevant supports and the incidence predicate.
pub fn rlv_and_incidence(v: &VarietyDescriptor) -> Result<Incidence, ModelError> {
    let n = v.coord_count();
    let full = v.all_coords();
    match v.incidence.as_ref().ok_or(ModelError::NoIncidence)? {
        IncidenceSource::Fan(fan) => {
            if fan.rays.len() != n {
                return Err(ModelError::FanShape { rays: fan.rays.len(), coords: n });
            }
            let cov = minimal(fan.cones.iter().map(|c| full & !c.iter().fold(0u32, |m, &k| m | 1 << k)).collect());
            let rlv = (0..=full).filter(|&s| cov.iter().any(|&c| c & s == c) && is_f_face(v, s)).collect();
            Ok(Incidence::from_rlv(n, cov, rlv))
        }
        IncidenceSource::Ample(w) => {
            let wq: Vec<_> = w.0.iter().map(|&x| int(x)).collect();
            let mut rlv = Vec::new();
            for s in 0..=full {
                if s.count_ones() as usize >= v.pic_rank() && is_f_face(v, s) {
                    let gens: Vec<Vec<i64>> = (0..n).filter(|k| s >> k & 1 == 1).map(|k| v.degree(k).0.clone()).collect();
                    if Cone::new(v.pic_rank(), gens)?.contains_interior(&wq)? {
                        rlv.push(s);
                    }
                }
            }
            let cov = minimal(rlv.clone());
            Ok(Incidence::from_rlv(n, cov, rlv))
        }
        IncidenceSource::External(sets) => {
            let base = minimal(sets.clone());
            let rlv = (0..=full).filter(|&s| base.iter().any(|&c| c & s == c) && is_f_face(v, s)).collect();
            Ok(Incidence::from_rlv(n, base, rlv))
        }
    }
}

/// Readings of "the intersection of the F_i and G_i (1 <= i <= n) is empty"
/// on `X_n`, each with its computed truth value.
pub fn xn_intersection_readings(v: &VarietyDescriptor, inc: &Incidence) -> Vec<(String, bool)> {
    let n = v.t.len();
    let s_mask: u32 = (1..=n).fold(0, |m, i| m | 1 << i);
    let t_mask: u32 = (0..n).fold(0, |m, j| m | 1 << v.t_coord(j));
    let mut out = vec![
        ("all F_i and G_i (1<=i<=n) together are empty".to_string(), !inc.holds(s_mask | t_mask)),
        ("all F_i (1<=i<=n) together are empty".to_string(), !inc.holds(s_mask)),
        ("all G_i together are empty".to_string(), !inc.holds(t_mask)),
    ];
    let each = (1..=n).all(|i| !inc.holds(1 << i | 1 << v.t_coord(i - 1)));
    out.push(("F_i and G_i are disjoint for every i".to_string(), each));
    out
}
