//! The dual of the effective cone: lattice points graded by `-K`, the
//! constant `alpha`, and the divisibility index `delta`.

use crate::cone::Cone;
use crate::pic::PicVector;
use crate::qlinalg::{det_i64, dot_i, to_q, to_qmat, transpose};
use crate::FanError;
use exact_arith::{BigInt, BigRational};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Extra constraint `<y, class> >= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub class: PicVector,
    pub bound: i64,
}

/// Primitive rays of the dual cone, i.e. the inner facet normals of `eff`.
pub fn dual_cone_rays(eff: &Cone) -> Result<Vec<Vec<i64>>, FanError> {
    if !eff.is_full_dimensional() {
        return Err(FanError::TriangulationFailure);
    }
    Ok(eff.h_rep().facets)
}

fn check_interior(eff: &Cone, anti_k: &PicVector) -> Result<(), FanError> {
    if anti_k.rank() != eff.dim() {
        return Err(FanError::DimensionMismatch { expected: eff.dim(), got: anti_k.rank() });
    }
    if !eff.contains_interior(&to_q(anti_k.as_slice()))? {
        return Err(FanError::NotInterior);
    }
    Ok(())
}

/// All `y` in the dual cone with `<y, -K> = m` and the extra lower bounds,
/// sorted lexicographically.
pub fn enumerate_dual_points(
    eff: &Cone,
    anti_k: &PicVector,
    m: i64,
    extras: &[LowerBound],
) -> Result<Vec<Vec<i64>>, FanError> {
    check_interior(eff, anti_k)?;
    for e in extras {
        if e.class.rank() != eff.dim() {
            return Err(FanError::DimensionMismatch { expected: eff.dim(), got: e.class.rank() });
        }
    }
    if m < 0 {
        return Ok(Vec::new());
    }
    let rays = dual_cone_rays(eff)?;
    let r = eff.dim();
    let k = anti_k.as_slice();
    // y = sum lambda_l u_l with lambda_l <= m / <u_l, -K>.
    let mut bound = vec![0i64; r];
    for u in &rays {
        let a = dot_i(u, k) as i64;
        for c in 0..r {
            bound[c] += Integer::div_ceil(&(m * u[c].abs()), &a);
        }
    }
    let solve_for = (0..r).rev().find(|&c| k[c] != 0).expect("antiK is interior, hence nonzero");
    let mut out = Vec::new();
    let mut y = vec![0i64; r];
    let free: Vec<usize> = (0..r).filter(|&c| c != solve_for).collect();
    fn rec(
        depth: usize,
        free: &[usize],
        y: &mut Vec<i64>,
        bound: &[i64],
        solve_for: usize,
        k: &[i64],
        m: i64,
        accept: &dyn Fn(&[i64]) -> bool,
        out: &mut Vec<Vec<i64>>,
    ) {
        if depth == free.len() {
            let partial: i64 = free.iter().map(|&c| y[c] * k[c]).sum();
            let rest = m - partial;
            if rest % k[solve_for] != 0 {
                return;
            }
            y[solve_for] = rest / k[solve_for];
            if y[solve_for].abs() <= bound[solve_for] && accept(y) {
                out.push(y.clone());
            }
            return;
        }
        let c = free[depth];
        for v in -bound[c]..=bound[c] {
            y[c] = v;
            rec(depth + 1, free, y, bound, solve_for, k, m, accept, out);
        }
        y[c] = 0;
    }
    let gens = eff.gens().to_vec();
    let accept = |y: &[i64]| {
        gens.iter().all(|g| dot_i(g, y) >= 0) && extras.iter().all(|e| dot_i(e.class.as_slice(), y) >= e.bound as i128)
    };
    rec(0, &free, &mut y, &bound, solve_for, k, m, &accept, &mut out);
    out.sort();
    Ok(out)
}

/// `lim_{t -> 1} (1-t)^r sum_{y in dual cone} t^{<y,-K>}`, computed exactly
/// from a unimodular triangulation of the dual cone.
pub fn alpha(eff: &Cone, anti_k: &PicVector) -> Result<BigRational, FanError> {
    check_interior(eff, anti_k)?;
    let rays = dual_cone_rays(eff)?;
    let cones = unimodular_triangulation(&rays, eff.dim())?;
    let k = anti_k.as_slice();
    let mut total = BigRational::zero();
    for c in cones {
        let mut term = BigRational::one();
        for u in &c {
            let a = dot_i(u, k);
            term /= BigRational::from_integer(BigInt::from(a));
        }
        total += term;
    }
    Ok(total)
}

/// Largest `d` with `-K` in `d * Pic`: the gcd of the coordinates.
pub fn delta(anti_k: &PicVector) -> Result<u64, FanError> {
    if anti_k.is_zero() {
        return Err(FanError::ZeroVector);
    }
    Ok(anti_k.as_slice().iter().fold(0i64, |g, &x| g.gcd(&x)).unsigned_abs())
}

/// Pulling triangulation of the cone over `rays`, refined by stellar
/// subdivision until every cone is unimodular. Returns each maximal cone as
/// its list of generators.
pub fn unimodular_triangulation(rays: &[Vec<i64>], dim: usize) -> Result<Vec<Vec<Vec<i64>>>, FanError> {
    let all: Vec<usize> = (0..rays.len()).collect();
    let full = Cone::new(dim, rays.to_vec())?;
    if !full.is_full_dimensional() {
        return Err(FanError::TriangulationFailure);
    }
    let simplices = pulling(rays, dim, all);
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Vec<i64>>> =
        simplices.into_iter().map(|s| s.into_iter().map(|i| rays[i].clone()).collect()).collect();
    while let Some(c) = stack.pop() {
        let d = det_i64(&c).abs();
        if d.is_zero() {
            return Err(FanError::TriangulationFailure);
        }
        if d.is_one() {
            out.push(c);
            continue;
        }
        let (v, lambda) = parallelepiped_point(&c).ok_or(FanError::TriangulationFailure)?;
        for (i, l) in lambda.iter().enumerate() {
            if l.is_positive() {
                let mut next = c.clone();
                next[i] = v.clone();
                stack.push(next);
            }
        }
    }
    Ok(out)
}

fn pulling(rays: &[Vec<i64>], dim: usize, idx: Vec<usize>) -> Vec<Vec<usize>> {
    let cone = Cone::new(dim, idx.iter().map(|&i| rays[i].clone()).collect()).expect("nonzero rays");
    let k = cone.span_dim();
    if idx.len() == k {
        return vec![idx];
    }
    let apex = idx[0];
    let mut out = Vec::new();
    for f in cone.h_rep().facets {
        let face: Vec<usize> = idx.iter().copied().filter(|&i| dot_i(&f, &rays[i]) == 0).collect();
        if face.contains(&apex) {
            continue;
        }
        for mut s in pulling(rays, dim, face) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

/// A nonzero lattice point `sum lambda_i c_i` with `0 <= lambda_i < 1`,
/// minimising `sum lambda_i` (ties broken lexicographically on the point).
fn parallelepiped_point(c: &[Vec<i64>]) -> Option<(Vec<i64>, Vec<BigRational>)> {
    let dim = c.len();
    let cols = to_qmat(&transpose(c));
    let mut span = vec![0i64; dim];
    for g in c {
        for k in 0..dim {
            span[k] += g[k].abs();
        }
    }
    let mut best: Option<(BigRational, Vec<i64>, Vec<BigRational>)> = None;
    let mut x = vec![0i64; dim];
    fn rec(
        k: usize,
        x: &mut Vec<i64>,
        span: &[i64],
        cols: &crate::qlinalg::QMat,
        best: &mut Option<(BigRational, Vec<i64>, Vec<BigRational>)>,
    ) {
        if k == x.len() {
            if x.iter().all(|&v| v == 0) {
                return;
            }
            let Some(lambda) = crate::qlinalg::solve(cols, &to_q(x)) else { return };
            let one = BigRational::one();
            if lambda.iter().any(|l| l.is_negative() || *l >= one) {
                return;
            }
            let s: BigRational = lambda.iter().sum();
            let better = match best {
                None => true,
                Some((bs, bx, _)) => s < *bs || (s == *bs && x < bx),
            };
            if better {
                *best = Some((s, x.clone(), lambda));
            }
            return;
        }
        for v in -span[k]..=span[k] {
            x[k] = v;
            rec(k + 1, x, span, cols, best);
        }
        x[k] = 0;
    }
    rec(0, &mut x, &span, &cols, &mut best);
    best.map(|(_, v, l)| (v, l))
}

/// Lossy helper for diagnostics.
pub fn alpha_f64(a: &BigRational) -> f64 {
    a.to_f64().unwrap_or(f64::NAN)
}
