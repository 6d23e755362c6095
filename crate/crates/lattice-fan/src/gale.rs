//! Gale duality between `Sigma_n` and the Picard lattice of `X_n`.
//!
//! A ray of `Sigma_n` corresponds to a Cox coordinate, whose degree lives in
//! `Pic = Z^{n+1}` with basis `F_0..F_n`: `h -> F_0`, `f_i -> F_i`, and
//! `g_i -> G_i = F_0 + sum_{j != i} F_j`. The Gale dual of a maximal cone is
//! the cone spanned by the degrees of the complementary coordinates; the fan
//! is projective when all those cones share an interior point.

use crate::cone::{Cone, HRep};
use crate::fan::build_sigma_n;
use crate::qlinalg::dot_i;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaleData {
    /// One degree per ray, in the fan's ray order.
    pub degrees: Vec<Vec<i64>>,
    pub witness: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaleCone {
    /// Index of the maximal cone of `Sigma_n` this is dual to.
    pub fan_cone: usize,
    pub generator_labels: Vec<String>,
    pub generators: Vec<Vec<i64>>,
    pub inequalities: HRep,
}

impl GaleCone {
    pub fn cone(&self) -> Cone {
        Cone::new(self.generators[0].len(), self.generators.clone()).expect("degrees are nonzero")
    }

    /// Strict membership in the relative interior.
    pub fn holds_strictly(&self, y: &[i64]) -> bool {
        self.inequalities.equations.iter().all(|e| dot_i(e, y) == 0)
            && self.inequalities.facets.iter().all(|f| dot_i(f, y) > 0)
    }
}

/// Degrees of `h, f_1..f_n, g_1..g_n`.
pub fn sigma_n_degrees(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(2 * n + 1);
    for i in 0..=n {
        let mut v = vec![0; n + 1];
        v[i] = 1;
        out.push(v);
    }
    for i in 1..=n {
        let mut v = vec![1; n + 1];
        v[i] = 0;
        out.push(v);
    }
    out
}

/// `(y_0, y_i = (n-1)/n y_0 + (n-i) eps)` with `y_0 = n`, `eps = 1/(4n^2)`,
/// scaled by `4n^2`.
pub fn projectivity_witness(n: usize) -> Vec<i64> {
    let n = n as i64;
    let mut w = vec![4 * n * n * n];
    w.extend((1..=n).map(|i| 4 * n * n * (n - 1) + (n - i)));
    w
}

pub fn gale_data_sigma_n(n: usize) -> GaleData {
    GaleData { degrees: sigma_n_degrees(n), witness: projectivity_witness(n) }
}

fn degree_label(k: usize, n: usize) -> String {
    if k <= n {
        format!("F{k}")
    } else {
        format!("G{}", k - n)
    }
}

pub fn gale_dual_cones(n: usize) -> Vec<GaleCone> {
    let fan = build_sigma_n(n.max(3)).expect("n >= 3");
    let degrees = sigma_n_degrees(fan.dim);
    fan.cones
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let comp: Vec<usize> = (0..fan.rays.len()).filter(|k| !c.contains(k)).collect();
            let generators: Vec<Vec<i64>> = comp.iter().map(|&k| degrees[k].clone()).collect();
            let cone = Cone::new(fan.dim + 1, generators.clone()).expect("nonzero degrees");
            GaleCone {
                fan_cone: ci,
                generator_labels: comp.iter().map(|&k| degree_label(k, fan.dim)).collect(),
                generators,
                inequalities: cone.h_rep(),
            }
        })
        .collect()
}
