//! Sufficient cone-positivity conditions on the degrees of the t-generators.
//!
//! Linear relations: `G_j + G_k - D_tot` must lie in `C_eff \ {0}` for
//! consecutive indices of some ordering of `J`, and the averaged class
//! `1/(|J|-1) sum G_j - D_tot` as well. Quasi-linear relations with three
//! t-generators use the strict variants with a fixed small `eps`.

use crate::descriptor::{RelationShape, VarietyDescriptor};
use crate::incidence::rlv_and_incidence;
use exact_arith::rational::{frac, int};
use exact_arith::BigRational;
use lattice_fan::Cone;
use num_traits::{One, Zero};
use serde::Serialize;

/// `eps` used for the strict quasi-linear conditions.
pub const EPSILON: (i64, i64) = (1, 1000);

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub name: String,
    pub vector: Vec<String>,
    pub in_cone: bool,
    pub nonzero: bool,
    /// Nonnegative coefficients on the effective-cone generators.
    pub coefficients: Option<Vec<String>>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub conditions: Vec<Condition>,
    /// Linear shape: an ordering of `J` (1-based) whose consecutive pairs pass.
    pub ordering: Option<Vec<usize>>,
    /// Whether all t-divisors have a common point (premise of the averaged condition).
    pub t_divisors_meet: Option<bool>,
    pub notes: Vec<String>,
    pub pass: bool,
}

fn show(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn condition(eff: &Cone, name: String, vector: Vec<BigRational>) -> Condition {
    let nonzero = vector.iter().any(|x| !x.is_zero());
    let cert = eff.certificate(&vector).expect("dimension checked at load");
    let in_cone = cert.is_some();
    Condition { name, vector: show(&vector), in_cone, nonzero, coefficients: cert.map(|c| show(&c)), pass: in_cone && nonzero }
}

fn combo(v: &VarietyDescriptor, weights: &[BigRational]) -> Vec<BigRational> {
    let d = v.d_tot();
    (0..v.pic_rank())
        .map(|c| {
            let s = weights.iter().enumerate().fold(BigRational::zero(), |acc, (j, w)| acc + w * int(v.t[j].degree.0[c]));
            s - int(d.0[c])
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn check_positivity(v: &VarietyDescriptor) -> PositivityReport {
    let eff = v.eff_cone();
    let nj = v.t.len();
    let t_mask = (0..nj).fold(0u32, |m, j| m | 1 << v.t_coord(j));
    let t_divisors_meet = rlv_and_incidence(v).ok().map(|inc| inc.holds(t_mask));
    let mut notes = Vec::new();
    let mut conditions = Vec::new();
    let unit = |j: usize, w: BigRational| {
        let mut ws = vec![BigRational::zero(); nj];
        ws[j] = w;
        ws
    };
    let add = |a: Vec<BigRational>, b: Vec<BigRational>| a.into_iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    match v.shape {
        RelationShape::Linear => {
            let mut ok_pair = vec![vec![false; nj]; nj];
            for a in 0..nj {
                for b in a + 1..nj {
                    let w = add(unit(a, BigRational::one()), unit(b, BigRational::one()));
                    let c = condition(&eff, format!("G{} + G{} - D_tot", a + 1, b + 1), combo(v, &w));
                    ok_pair[a][b] = c.pass;
                    ok_pair[b][a] = c.pass;
                    conditions.push(c);
                }
            }
            let ordering = if nj <= 8 {
                permutations(nj).into_iter().find(|p| p.windows(2).all(|w| ok_pair[w[0]][w[1]]))
            } else {
                notes.push("too many t-generators to search orderings".into());
                None
            };
            let avg = if nj >= 2 { frac(1, nj as i64 - 1) } else { BigRational::one() };
            let c = condition(&eff, format!("1/{} sum G_j - D_tot", nj.saturating_sub(1)), combo(v, &vec![avg; nj]));
            let avg_ok = c.pass;
            conditions.push(c);
            if t_divisors_meet == Some(false) {
                notes.push("the t-divisors do not meet; the averaged condition is not sufficient".into());
            }
            let pass = ordering.is_some() && avg_ok && t_divisors_meet != Some(false);
            PositivityReport {
                conditions,
                ordering: ordering.map(|p| p.into_iter().map(|j| j + 1).collect()),
                t_divisors_meet,
                notes,
                pass,
            }
        }
        RelationShape::QuasiLinearT1Squared => {
            if nj != 3 {
                notes.push(format!("quasi-linear checks need exactly 3 t-generators, found {nj}"));
                return PositivityReport { conditions, ordering: None, t_divisors_meet, notes, pass: false };
            }
            let half = frac(1, 2);
            let one = BigRational::one();
            let eps = frac(EPSILON.0, EPSILON.1);
            let mut push = |name: String, w: Vec<BigRational>| conditions.push(condition(&eff, name, combo(v, &w)));
            push("G2 + G3 - D_tot".into(), vec![BigRational::zero(), one.clone(), one.clone()]);
            push("G1 + 1/2 G2 + 1/2 G3 - D_tot".into(), vec![one.clone(), half.clone(), half.clone()]);
            for i in 0..3 {
                let mut w = vec![half.clone(); 3];
                w[i] = &one - &eps;
                push(format!("(1-eps) G{} + 1/2 G_j + 1/2 G_k - D_tot", i + 1), w);
            }
            push("(1-eps) G2 + (1-eps) G3 - D_tot".into(), vec![BigRational::zero(), &one - &eps, &one - &eps]);
            let all = conditions.iter().all(|c| c.pass);
            if !all {
                notes.push(format!("fails at eps={}/{}", EPSILON.0, EPSILON.1));
            }
            if t_divisors_meet == Some(false) {
                notes.push("the t-divisors do not meet; the strict conditions are not sufficient".into());
            }
            PositivityReport { conditions, ordering: None, t_divisors_meet, notes, pass: all && t_divisors_meet != Some(false) }
        }
    }
}
