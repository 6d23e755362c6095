//! The exponent of `rho` in the series attached to a pattern `e`.
//!
//! With `x_j(d) = eps_j g_j + sum_i b_ij (d_i + f_i)` (one value per
//! monomial), the exponent is `min_j x_j` for a linear relation and
//! `floor((min_{j>=1} x_j + min_j x_j) / 2)` when the first monomial carries
//! a squared `t`. Only the s-variables that occur in some monomial enter;
//! the others factor out of `prod (1 - t_i) F` and are dropped.

use crate::SeriesError;
use variety_model::{RelationShape, VarietyDescriptor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentForm {
    pub shape: RelationShape,
    /// s-indices of the series variables, increasing.
    pub active: Vec<usize>,
    /// `x_j(0)` for every monomial.
    pub offsets: Vec<i64>,
    /// `weights[j][a]`: coefficient of `d_{active[a]}` in `x_j`.
    pub weights: Vec<Vec<i64>>,
}

pub fn check_pattern(v: &VarietyDescriptor, e: &[u32]) -> Result<(), SeriesError> {
    if e.len() != v.coord_count() {
        return Err(SeriesError::PatternLength { got: e.len(), want: v.coord_count() });
    }
    Ok(())
}

impl ExponentForm {
    pub fn new(v: &VarietyDescriptor, e: &[u32]) -> Result<ExponentForm, SeriesError> {
        check_pattern(v, e)?;
        let active: Vec<usize> = (0..v.s.len()).filter(|&i| v.b[i].iter().any(|&x| x > 0)).collect();
        let offsets = (0..v.t.len())
            .map(|j| {
                let g = v.t_exponent(j) as i64 * e[v.t_coord(j)] as i64;
                g + (0..v.s.len()).map(|i| v.b[i][j] as i64 * e[i] as i64).sum::<i64>()
            })
            .collect();
        let weights = (0..v.t.len()).map(|j| active.iter().map(|&i| v.b[i][j] as i64).collect()).collect();
        Ok(ExponentForm { shape: v.shape, active, offsets, weights })
    }

    pub fn vars(&self) -> usize {
        self.active.len()
    }

    fn x(&self, j: usize, d: &[u32]) -> i64 {
        self.offsets[j] + self.weights[j].iter().zip(d).map(|(&w, &di)| w * di as i64).sum::<i64>()
    }

    pub fn phi(&self, d: &[u32]) -> i64 {
        let m = self.offsets.len();
        match self.shape {
            RelationShape::Linear => (0..m).map(|j| self.x(j, d)).min().unwrap_or(0),
            RelationShape::QuasiLinearT1Squared => {
                let x0 = self.x(0, d);
                let a = (1..m).map(|j| self.x(j, d)).min().unwrap_or(x0);
                (a + a.min(x0)).div_euclid(2)
            }
        }
    }

    /// The constant `c` in `deg P_{e,d} <= |d| + c`: the smallest offset among
    /// the monomials that govern the exponent's leading part.
    pub fn shift_bound(&self) -> i64 {
        let skip = matches!(self.shape, RelationShape::QuasiLinearT1Squared) as usize;
        self.offsets.iter().skip(skip).copied().min().unwrap_or(0)
    }

    /// Twice the best constant `c'` with `deg P_{e,d} <= |d| + c'`. For the
    /// squared shape `phi(d) <= (|d| + c + x_0(0)) / 2` also holds when every
    /// monomial has its own variable, which can halve the constant.
    pub fn shift_bound_doubled(&self) -> i64 {
        let c = self.shift_bound();
        match self.shape {
            RelationShape::QuasiLinearT1Squared if self.diagonal().is_ok() => (2 * c).min(c + self.offsets[0]),
            _ => 2 * c,
        }
    }

    /// For exact evaluation: `var_of[j]`, the unique series variable in
    /// monomial `j`, when each monomial has exactly one and with weight 1.
    pub fn diagonal(&self) -> Result<Vec<usize>, SeriesError> {
        let k = self.vars();
        if self.offsets.len() != k {
            return Err(SeriesError::Unsupported(format!("{} monomials, {k} s-variables", self.offsets.len())));
        }
        let mut var_of = Vec::with_capacity(k);
        let mut seen = vec![false; k];
        for (j, w) in self.weights.iter().enumerate() {
            let nz: Vec<usize> = (0..k).filter(|&a| w[a] != 0).collect();
            if nz.len() != 1 || w[nz[0]] != 1 || seen[nz[0]] {
                return Err(SeriesError::Unsupported(format!("monomial {j}")));
            }
            seen[nz[0]] = true;
            var_of.push(nz[0]);
        }
        Ok(var_of)
    }
}
