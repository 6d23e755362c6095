//! The fans `Sigma_n` and their certificates.
//!
//! Rays live in `Z^n` with coordinates `x_i` dual to the basis `g_i`:
//! `h = -sum g_i` and `f_i = h + g_i`. The maximal cones are
//! `C = cone{g_i}`, `C_i = cone{h, f_j : j != i}`, and for every removed
//! index `i` and pivot `p != i` the simplicial cone
//! `{g_k : k < p} + {f_p, g_p} + {f_k : k > p}` (indices `k != i`), which
//! subdivide `C_{I - i} = cone{f_j, g_j : j != i}`.

use crate::cone::{subsets_of_size, Cone, HRep};
use crate::gale::GaleData;
use crate::qlinalg::{det_i64, dot_i, rank_i64, to_qmat, transpose};
use crate::FanError;
use exact_arith::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FanOrigin {
    SigmaN(usize),
    User,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub ray_labels: Vec<String>,
    /// Maximal cones as sorted ray indices.
    pub cones: Vec<Vec<usize>>,
    pub origin: FanOrigin,
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
    pub sample_bound: i64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { samples: 10_000, seed: 0x5eed, sample_bound: 1_000_000 }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FanCertificate {
    pub simplicial: bool,
    pub smooth: bool,
    pub complete: bool,
    pub separated: bool,
    pub projective: bool,
    pub samples_checked: usize,
    /// `Some` for the built-in family: outcome of the min-coordinate case split replay.
    pub case_split: Option<bool>,
    pub adjacent_pairs: usize,
    pub failures: Vec<String>,
}

impl FanCertificate {
    pub fn all_pass(&self) -> bool {
        self.simplicial && self.smooth && self.complete && self.separated && self.projective
    }
}

impl Fan {
    pub fn ray_index(&self, label: &str) -> Option<usize> {
        self.ray_labels.iter().position(|l| l == label)
    }

    pub fn cone(&self, idx: usize) -> Cone {
        Cone::new(self.dim, self.cones[idx].iter().map(|&r| self.rays[r].clone()).collect())
            .expect("rays are nonzero and sized")
    }

    /// Replace one maximal cone, e.g. to build counterexamples. The result is
    /// no longer treated as a member of the built-in family.
    pub fn with_cone_replaced(&self, idx: usize, labels: &[&str]) -> Fan {
        let mut out = self.clone();
        let mut c: Vec<usize> = labels.iter().map(|l| self.ray_index(l).expect("known label")).collect();
        c.sort_unstable();
        out.cones[idx] = c;
        out.origin = FanOrigin::User;
        out
    }

    /// Index of the subdivision cone for removed index `i` and pivot `p` (1-based), if present.
    pub fn subdivision_cone(&self, n: usize, i: usize, p: usize) -> Option<usize> {
        let want = sigma_subdivision_cone(n, i, p);
        self.cones.iter().position(|c| *c == want)
    }
}

fn h_idx() -> usize {
    0
}
fn f_idx(i: usize) -> usize {
    i
}
fn g_idx(n: usize, i: usize) -> usize {
    n + i
}

fn sigma_subdivision_cone(n: usize, removed: usize, pivot: usize) -> Vec<usize> {
    let mut c = Vec::with_capacity(n);
    for k in (1..=n).filter(|&k| k != removed) {
        if k < pivot {
            c.push(g_idx(n, k));
        } else if k == pivot {
            c.push(f_idx(k));
            c.push(g_idx(n, k));
        } else {
            c.push(f_idx(k));
        }
    }
    c.sort_unstable();
    c
}

/// The smooth projective fan `Sigma_n` (`n >= 3`).
pub fn build_sigma_n(n: usize) -> Result<Fan, FanError> {
    if n < 3 {
        return Err(FanError::InvalidN(n));
    }
    let mut rays = vec![vec![-1; n]];
    let mut labels = vec!["h".to_string()];
    for i in 1..=n {
        let mut f = vec![-1; n];
        f[i - 1] = 0;
        rays.push(f);
        labels.push(format!("f{i}"));
    }
    for i in 1..=n {
        let mut g = vec![0; n];
        g[i - 1] = 1;
        rays.push(g);
        labels.push(format!("g{i}"));
    }
    let mut cones = vec![(1..=n).map(|i| g_idx(n, i)).collect::<Vec<_>>()];
    for i in 1..=n {
        let mut c: Vec<usize> = std::iter::once(h_idx()).chain((1..=n).filter(|&j| j != i).map(f_idx)).collect();
        c.sort_unstable();
        cones.push(c);
    }
    for i in 1..=n {
        for p in (1..=n).filter(|&p| p != i) {
            cones.push(sigma_subdivision_cone(n, i, p));
        }
    }
    Ok(Fan { dim: n, rays, ray_labels: labels, cones, origin: FanOrigin::SigmaN(n) })
}

/// Rank of `{g_i : i in i1} + {f_i : i in i2}` in `Sigma_n`'s lattice.
pub fn family_rank(n: usize, i1: &[usize], i2: &[usize]) -> usize {
    let fan = build_sigma_n(n).expect("n >= 3");
    let rows: Vec<Vec<i64>> = i1
        .iter()
        .map(|&i| fan.rays[g_idx(n, i)].clone())
        .chain(i2.iter().map(|&i| fan.rays[f_idx(i)].clone()))
        .collect();
    if rows.is_empty() {
        return 0;
    }
    rank_i64(&rows, n)
}

pub fn check_fan(fan: &Fan, gale: Option<&GaleData>, cfg: &CheckConfig) -> Result<FanCertificate, FanError> {
    let mut cert = FanCertificate::default();
    let cones: Vec<Cone> = (0..fan.cones.len()).map(|i| fan.cone(i)).collect();
    for (i, c) in cones.iter().enumerate() {
        if !c.is_full_dimensional() {
            return Err(FanError::NotFullDimensional(i));
        }
    }

    cert.simplicial = true;
    cert.smooth = true;
    for (i, c) in cones.iter().enumerate() {
        if !c.is_simplicial() {
            cert.simplicial = false;
            cert.smooth = false;
            cert.failures.push(format!("cone {i} is not simplicial"));
            continue;
        }
        let d = det_i64(c.gens());
        if d.abs() != 1.into() {
            cert.smooth = false;
            cert.failures.push(format!("cone {i} has |det| = {}", d.abs()));
        }
    }

    let (sampled_ok, agreement_ok) = sample_completeness(fan, &cones, cfg, &mut cert);
    cert.samples_checked = cfg.samples;
    let mut complete = sampled_ok && agreement_ok;
    if let FanOrigin::SigmaN(n) = fan.origin {
        let ok = replay_case_split(fan, n, &mut cert);
        cert.case_split = Some(ok);
        complete &= ok;
    }
    cert.complete = complete;

    cert.separated = check_separation(fan, &cones, &mut cert);

    cert.projective = match gale {
        None => {
            cert.failures.push("no Gale data supplied; projectivity not certified".into());
            false
        }
        Some(g) => check_projective(fan, g, &mut cert)?,
    };
    Ok(cert)
}

/// Inverse of a simplicial full-dimensional cone's generator matrix as
/// `(adjugate, det)`, so that `lambda = adj * x / det`.
fn barycentric(c: &Cone) -> Option<(Vec<Vec<i128>>, i128)> {
    if !c.is_simplicial() {
        return None;
    }
    let cols = transpose(c.gens());
    let det = det_i64(&cols);
    let n = cols.len();
    let qm = to_qmat(&cols);
    let mut adj = vec![vec![0i128; n]; n];
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::from_integer(1.into());
        let col = crate::qlinalg::solve(&qm, &e)?;
        for i in 0..n {
            let v = &col[i] * BigRational::from_integer(det.clone());
            adj[i][j] = v.to_integer().to_i128()?;
        }
    }
    Some((adj, det.to_i128()?))
}

fn sample_completeness(fan: &Fan, cones: &[Cone], cfg: &CheckConfig, cert: &mut FanCertificate) -> (bool, bool) {
    let bary: Vec<Option<(Vec<Vec<i128>>, i128)>> = cones.iter().map(barycentric).collect();
    let hreps: Vec<HRep> = cones.iter().map(|c| c.h_rep()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut covered, mut agree) = (true, true);
    for s in 0..cfg.samples {
        let x: Vec<i64> = (0..fan.dim).map(|_| rng.gen_range(-cfg.sample_bound..=cfg.sample_bound)).collect();
        let mut hits = Vec::new();
        for (ci, b) in bary.iter().enumerate() {
            let inside = match b {
                Some((adj, det)) => adj.iter().all(|row| {
                    let v: i128 = row.iter().zip(&x).map(|(a, &xi)| a * xi as i128).sum();
                    v * det.signum() >= 0
                }),
                None => hreps[ci].contains_int(&x),
            };
            if inside {
                hits.push(ci);
            }
        }
        if hits.is_empty() {
            covered = false;
            if cert.failures.len() < 20 {
                cert.failures.push(format!("sample {s} {x:?} lies in no maximal cone"));
            }
            continue;
        }
        if let (FanOrigin::SigmaN(n), [only]) = (fan.origin, hits.as_slice()) {
            let predicted = coarse_cell(n, &x);
            if !coarse_cell_of_cone(fan, n, *only).contains(&predicted) {
                agree = false;
                cert.failures.push(format!("sample {x:?} classified {predicted:?} but found in cone {only}"));
            }
        }
    }
    (covered, agree)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Positive,
    Star(usize),
    Subdivided(usize),
}

/// Case split on the minimal coordinate (1-based cell indices).
fn coarse_cell(n: usize, x: &[i64]) -> Cell {
    let (imin, &xi) = x.iter().enumerate().min_by_key(|(_, v)| **v).expect("nonempty");
    if xi >= 0 {
        return Cell::Positive;
    }
    let s: i128 = x.iter().enumerate().filter(|(j, _)| *j != imin).map(|(_, &v)| v as i128).sum::<i128>()
        - (n as i128 - 2) * xi as i128;
    if s <= 0 {
        Cell::Star(imin + 1)
    } else {
        Cell::Subdivided(imin + 1)
    }
}

fn coarse_cell_of_cone(fan: &Fan, n: usize, ci: usize) -> Vec<Cell> {
    let c = &fan.cones[ci];
    if c.iter().all(|&r| r > n) {
        return vec![Cell::Positive];
    }
    if c.contains(&h_idx()) {
        let missing = (1..=n).find(|&i| !c.contains(&f_idx(i))).expect("one f is missing");
        return vec![Cell::Star(missing)];
    }
    let missing = (1..=n).find(|&i| !c.contains(&f_idx(i)) && !c.contains(&g_idx(n, i)));
    missing.map(Cell::Subdivided).into_iter().collect()
}

fn normals(v: Vec<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    v.into_iter().collect()
}

/// Replays the coverage argument for `Sigma_n`: the three kinds of coarse
/// cells have exactly the inequality descriptions used by the case split on
/// the minimal coordinate, and the subdivision cones triangulate each `C_{I-i}`.
fn replay_case_split(fan: &Fan, n: usize, cert: &mut FanCertificate) -> bool {
    let mut ok = true;
    let unit = |k: usize, c: i64| {
        let mut v = vec![0i64; n];
        v[k] = c;
        v
    };
    let c_pos = Cone::new(n, (1..=n).map(|i| fan.rays[g_idx(n, i)].clone()).collect()).unwrap();
    let want: BTreeSet<Vec<i64>> = (0..n).map(|k| unit(k, 1)).collect();
    if normals(c_pos.h_rep().facets) != want {
        ok = false;
        cert.failures.push("C is not the positive orthant".into());
    }
    for i in 1..=n {
        let ii = i - 1;
        // s_i(x) = sum_{j != i} x_j - (n-2) x_i
        let s_i: Vec<i64> = (0..n).map(|k| if k == ii { -(n as i64 - 2) } else { 1 }).collect();
        let diffs: Vec<Vec<i64>> = (0..n)
            .filter(|&k| k != ii)
            .map(|k| {
                let mut v = unit(k, 1);
                v[ii] = -1;
                v
            })
            .collect();

        let star = Cone::new(n, std::iter::once(h_idx()).chain((1..=n).filter(|&j| j != i).map(f_idx)).map(|r| fan.rays[r].clone()).collect()).unwrap();
        let mut want: BTreeSet<Vec<i64>> = diffs.iter().cloned().collect();
        want.insert(s_i.iter().map(|v| -v).collect());
        if normals(star.h_rep().facets) != want {
            ok = false;
            cert.failures.push(format!("C_{i} does not match x_j >= x_i, s_i <= 0"));
        }

        let big = Cone::new(
            n,
            (1..=n).filter(|&j| j != i).flat_map(|j| [fan.rays[f_idx(j)].clone(), fan.rays[g_idx(n, j)].clone()]).collect(),
        )
        .unwrap();
        let big_h = big.h_rep();
        let mut want: BTreeSet<Vec<i64>> = diffs.iter().cloned().collect();
        want.insert(s_i.clone());
        want.insert(unit(ii, -1));
        if normals(big_h.facets.clone()) != want {
            ok = false;
            cert.failures.push(format!("C_(I-{i}) does not match x_i <= 0, s_i >= 0, x_j >= x_i"));
        }

        let parts: Vec<usize> = (1..=n).filter(|&p| p != i).filter_map(|p| fan.subdivision_cone(n, i, p)).collect();
        if parts.len() != n - 1 {
            ok = false;
            cert.failures.push(format!("subdivision of C_(I-{i}) is incomplete"));
            continue;
        }
        if !triangulates(fan, &parts, &big_h) {
            ok = false;
            cert.failures.push(format!("subdivision cones do not triangulate C_(I-{i})"));
        }
    }
    ok
}

/// Pseudomanifold test: every facet of every simplicial piece lies on the
/// boundary of the big cone or is shared with exactly one other piece on the
/// opposite side, and a generic interior point is covered exactly once.
fn triangulates(fan: &Fan, parts: &[usize], big: &HRep) -> bool {
    let n = fan.dim;
    for &a in parts {
        let ca = &fan.cones[a];
        for drop in ca {
            let face: Vec<usize> = ca.iter().copied().filter(|r| r != drop).collect();
            let on_boundary = big.facets.iter().any(|f| face.iter().all(|&r| dot_i(f, &fan.rays[r]) == 0));
            let partners: Vec<usize> = parts
                .iter()
                .copied()
                .filter(|&b| b != a && face.iter().all(|r| fan.cones[b].contains(r)))
                .collect();
            match (on_boundary, partners.as_slice()) {
                (true, []) => {}
                (false, [b]) => {
                    let other = *fan.cones[*b].iter().find(|r| !face.contains(r)).unwrap();
                    let Some(normal) = face_normal(fan, &face) else { return false };
                    let sa = dot_i(&normal, &fan.rays[*drop]).signum();
                    let sb = dot_i(&normal, &fan.rays[other]).signum();
                    if sa * sb != -1 {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    // Generic interior point: weighted sum of all rays of the pieces.
    let rays: BTreeSet<usize> = parts.iter().flat_map(|&p| fan.cones[p].iter().copied()).collect();
    let mut x = vec![0i64; n];
    for (w, r) in rays.iter().enumerate() {
        for k in 0..n {
            x[k] += (w as i64 * 7 + 3) * fan.rays[*r][k];
        }
    }
    let xq: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    let hits = parts.iter().filter(|&&p| fan.cone(p).h_rep().contains_relative_interior(&xq)).count();
    hits == 1
}

fn face_normal(fan: &Fan, face: &[usize]) -> Option<Vec<i64>> {
    let rows: Vec<Vec<i64>> = face.iter().map(|&r| fan.rays[r].clone()).collect();
    let ns = crate::qlinalg::nullspace(&to_qmat(&rows), fan.dim);
    (ns.len() == 1).then(|| crate::qlinalg::primitive_integer(&ns[0]))
}

/// Candidate separating hyperplanes from the coverage proof, as normals.
fn listed_hyperplanes(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        out.push(v);
        for k in i + 1..n {
            let mut v = vec![0; n];
            v[i] = 1;
            v[k] = -1;
            out.push(v);
        }
        out.push((0..n).map(|k| if k == i { -(n as i64 - 2) } else { 1 }).collect());
    }
    out
}

fn separates(fan: &Fan, normal: &[i64], a: &[usize], b: &[usize]) -> bool {
    let side = |c: &[usize]| -> (bool, bool) {
        let vals: Vec<i128> = c.iter().map(|&r| dot_i(normal, &fan.rays[r])).collect();
        (vals.iter().all(|&v| v >= 0), vals.iter().all(|&v| v <= 0))
    };
    let (a_pos, a_neg) = side(a);
    let (b_pos, b_neg) = side(b);
    (a_pos && b_neg) || (a_neg && b_pos)
}

fn check_separation(fan: &Fan, cones: &[Cone], cert: &mut FanCertificate) -> bool {
    let listed = listed_hyperplanes(fan.dim);
    let mut ok = true;
    let mut pairs = 0;
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            let (ca, cb) = (&fan.cones[a], &fan.cones[b]);
            let common: Vec<usize> = ca.iter().copied().filter(|r| cb.contains(r)).collect();
            if common.len() + 1 != fan.dim {
                continue;
            }
            pairs += 1;
            let found = listed.iter().any(|h| separates(fan, h, ca, cb))
                || face_normal(fan, &common).is_some_and(|h| separates(fan, &h, ca, cb));
            if !found {
                ok = false;
                cert.failures.push(format!(
                    "cones {a} {:?} and {b} {:?} are not separated",
                    ca.iter().map(|&r| &fan.ray_labels[r]).collect::<Vec<_>>(),
                    cb.iter().map(|&r| &fan.ray_labels[r]).collect::<Vec<_>>()
                ));
            }
        }
    }
    cert.adjacent_pairs = pairs;
    ok
}

fn check_projective(fan: &Fan, gale: &GaleData, cert: &mut FanCertificate) -> Result<bool, FanError> {
    if gale.degrees.len() != fan.rays.len() {
        return Err(FanError::GaleShape { degrees: gale.degrees.len(), rays: fan.rays.len() });
    }
    let r = gale.witness.len();
    // Exactness: sum_k deg_k (x) ray_k = 0 and the degrees span a rank #rays - dim lattice.
    for a in 0..r {
        for b in 0..fan.dim {
            let s: i64 = gale.degrees.iter().zip(&fan.rays).map(|(d, v)| d[a] * v[b]).sum();
            if s != 0 {
                cert.failures.push("Gale data is not dual to the rays".into());
                return Ok(false);
            }
        }
    }
    if rank_i64(&gale.degrees, r) != fan.rays.len() - fan.dim {
        cert.failures.push("Gale degrees have the wrong rank".into());
        return Ok(false);
    }
    let w: Vec<BigRational> = gale.witness.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    let mut ok = true;
    for (ci, c) in fan.cones.iter().enumerate() {
        let gens: Vec<Vec<i64>> = (0..fan.rays.len()).filter(|k| !c.contains(k)).map(|k| gale.degrees[k].clone()).collect();
        let dual = Cone::new(r, gens)?;
        if !dual.contains_relative_interior(&w)? {
            ok = false;
            cert.failures.push(format!("witness outside the relative interior of the Gale dual of cone {ci}"));
        }
    }
    Ok(ok)
}

/// All `k`-subsets helper re-exported for callers building custom fans.
pub fn ray_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets_of_size(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gale::gale_data_sigma_n;

    #[test]
    fn sigma_3_shape() {
        let fan = build_sigma_n(3).unwrap();
        assert_eq!(fan.rays.len(), 7);
        assert_eq!(fan.cones.len(), 10);
        let h = &fan.rays[0];
        let g: Vec<&Vec<i64>> = (4..7).map(|k| &fan.rays[k]).collect();
        for k in 0..3 {
            assert_eq!(h[k], -(g[0][k] + g[1][k] + g[2][k]));
            for i in 0..3 {
                assert_eq!(fan.rays[1 + i][k], h[k] + g[i][k]);
            }
        }
        assert_eq!(build_sigma_n(4).unwrap().cones.len(), 17);
        assert_eq!(build_sigma_n(2).unwrap_err(), FanError::InvalidN(2));
    }

    #[test]
    fn sigma_3_certificates() {
        let fan = build_sigma_n(3).unwrap();
        let cfg = CheckConfig { samples: 2000, ..Default::default() };
        let cert = check_fan(&fan, Some(&gale_data_sigma_n(3)), &cfg).unwrap();
        assert!(cert.all_pass(), "{:?}", cert.failures);
        assert_eq!(cert.case_split, Some(true));
    }

    #[test]
    fn forbidden_mixed_cone_is_not_separated() {
        let fan = build_sigma_n(3).unwrap();
        let idx = fan.subdivision_cone(3, 3, 2).unwrap();
        assert_eq!(fan.cones[idx], vec![fan.ray_index("f2").unwrap(), 4, 5]);
        let bad = fan.with_cone_replaced(idx, &["f1", "g1", "g2"]);
        let cfg = CheckConfig { samples: 500, ..Default::default() };
        let cert = check_fan(&bad, None, &cfg).unwrap();
        assert!(!cert.separated);
    }

    #[test]
    fn family_rank_examples() {
        assert_eq!(family_rank(3, &[1, 2], &[]), 2);
        assert_eq!(family_rank(3, &[1], &[1]), 2);
        assert_eq!(family_rank(3, &[], &[1, 2, 3]), 3);
    }
}
