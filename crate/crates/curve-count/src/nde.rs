//! Counting `t`-tuples on the torsor over fixed divisor data `(D, E)`.
//!
//! With `s_i = sigma_{D_i} sigma_{E_{F_i}}` and `u_j = t_j sigma_{E_{G_j}}`,
//! `N_K(D, E)` counts the `t_j` of degree
//! `sum_i a_ij (deg D_i + deg E_{F_i}) - deg E_{G_j}` that vanish outside `K`
//! and satisfy the relation; `N(D, E)` asks all `t_j` to be nonzero.

use crate::divisor::EffDivisor;
use crate::form::Form;
use crate::relation::Relation;
use crate::CurveError;
use exact_arith::field::{Elem, FiniteField};
use exact_arith::poly::raw;
use exact_arith::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use variety_model::{RelationShape, VarietyDescriptor};

/// `a[i][j]`: coordinates of `deg t_j` in the basis `deg s_i`. Requires the
/// s-degrees to be a basis of the lattice (determinant `+-1`).
pub fn pic_coordinates(v: &VarietyDescriptor) -> Result<Vec<Vec<i64>>, CurveError> {
    let r = v.pic_rank();
    if v.s.len() != r {
        return Err(CurveError::Unsupported(format!("{} s-generators for Picard rank {r}", v.s.len())));
    }
    // Augmented system [F | G] with F's columns the s-degrees.
    let cols = r + v.t.len();
    let mut m: Vec<Vec<BigRational>> = (0..r)
        .map(|row| {
            (0..cols)
                .map(|c| {
                    let x = if c < r { v.s[c].degree.0[row] } else { v.t[c - r].degree.0[row] };
                    BigRational::from_integer(x.into())
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for c in 0..r {
        let p = (c..r).find(|&row| !m[row][c].is_zero());
        let Some(p) = p else {
            return Err(CurveError::Unsupported("s-degrees are not a basis".into()));
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for x in m[c].iter_mut() {
            *x /= &pivot;
        }
        for row in 0..r {
            if row != c && !m[row][c].is_zero() {
                let f = m[row][c].clone();
                for col in 0..cols {
                    let sub = &f * &m[c][col];
                    m[row][col] -= sub;
                }
            }
        }
    }
    if !det.abs().is_one() {
        return Err(CurveError::Unsupported(format!("s-degrees span a sublattice of index {det}")));
    }
    Ok((0..r).map(|i| (0..v.t.len()).map(|j| m[i][r + j].to_integer().to_i64().expect("small")).collect()).collect())
}

/// The relation with the s-sections and `t`-multipliers plugged in; `t_j`
/// has `t_deg[j] + 1` coefficients.
pub fn plug_in(k: &FiniteField, v: &VarietyDescriptor, s: &[Form], g: &[Form], t_deg: &[i64]) -> Relation {
    let coeffs = (0..v.t.len())
        .map(|j| {
            let mut c: Vec<Elem> = vec![1];
            for (i, si) in s.iter().enumerate() {
                for _ in 0..v.b[i][j] {
                    c = raw::mul(k, &c, &si.poly);
                }
            }
            for _ in 0..v.t_exponent(j) {
                c = raw::mul(k, &c, &g[j].poly);
            }
            c
        })
        .collect();
    Relation {
        coeffs,
        lens: t_deg.iter().map(|&d| (d + 1).max(0) as usize).collect(),
        squared_first: v.shape == RelationShape::QuasiLinearT1Squared,
    }
}

/// Counts over the subsets `K` of the t-indices, combined by
/// inclusion-exclusion into the all-nonzero count.
pub fn all_nonzero_by_inclusion_exclusion(k: &FiniteField, rel: &Relation) -> i128 {
    let nt = rel.lens.len();
    let full = (1u32 << nt) - 1;
    let mut total = 0i128;
    for mask in 0..=full {
        let sign = if (nt as u32 - mask.count_ones()) % 2 == 0 { 1 } else { -1 };
        total += sign * rel.count(k, mask) as i128;
    }
    total
}

/// The all-nonzero count by listing the solutions.
pub fn all_nonzero_direct(k: &FiniteField, rel: &Relation) -> u128 {
    let mut n = 0;
    rel.for_each_solution(k, u32::MAX, |t| n += t.iter().all(|x| !x.is_empty()) as u128);
    n
}

pub(crate) struct Sections {
    pub s: Vec<Form>,
    pub g: Vec<Form>,
    pub t_deg: Vec<i64>,
}

/// `sigma_D` scaled by `twist^{deg D}`.
pub(crate) fn twisted(k: &FiniteField, d: &EffDivisor, twist: Elem) -> Form {
    let f = d.section(k);
    let c = k.pow(twist, f.deg as u64);
    f.scale(k, c)
}

pub(crate) fn sections(
    k: &FiniteField,
    v: &VarietyDescriptor,
    d: &[EffDivisor],
    e: &[EffDivisor],
    twist: Elem,
) -> Result<Sections, CurveError> {
    let (ns, nt) = (v.s.len(), v.t.len());
    if d.len() != ns || e.len() != ns + nt {
        return Err(CurveError::Degrees(format!("D has {} entries, E has {}", d.len(), e.len())));
    }
    let a = pic_coordinates(v)?;
    let s: Vec<Form> = (0..ns).map(|i| twisted(k, &d[i], twist).mul(k, &twisted(k, &e[i], twist))).collect();
    let g: Vec<Form> = (0..nt).map(|j| twisted(k, &e[ns + j], twist)).collect();
    let t_deg = (0..nt).map(|j| (0..ns).map(|i| a[i][j] * s[i].deg).sum::<i64>() - g[j].deg).collect();
    Ok(Sections { s, g, t_deg })
}

/// `N_K(D, E)`: solutions with `t_j = 0` for `j` outside `K` (zeros
/// allowed inside).
pub fn count_nde(v: &VarietyDescriptor, q: u64, d: &[EffDivisor], e: &[EffDivisor], k_mask: u32) -> Result<u128, CurveError> {
    let k = FiniteField::with_order(q)?;
    let sec = sections(&k, v, d, e, 1)?;
    Ok(plug_in(&k, v, &sec.s, &sec.g, &sec.t_deg).count(&k, k_mask))
}

/// `N(D, E)`: every `t_j` nonzero.
pub fn count_nde_nonzero(v: &VarietyDescriptor, q: u64, d: &[EffDivisor], e: &[EffDivisor]) -> Result<u128, CurveError> {
    let k = FiniteField::with_order(q)?;
    let sec = sections(&k, v, d, e, 1)?;
    Ok(all_nonzero_direct(&k, &plug_in(&k, v, &sec.s, &sec.g, &sec.t_deg)))
}
