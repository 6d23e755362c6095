//! Solving `sum_j c_j t_j^{eps_j} = 0` for polynomials `t_j` of bounded
//! degree, where only the first exponent may be 2.

use crate::form::multiplication_matrix;
use exact_arith::field::{Elem, FiniteField};
use exact_arith::linalg::{nullspace, solve_affine};
use exact_arith::poly::raw;

#[derive(Clone, Debug)]
pub struct Relation {
    /// Coefficient polynomial of each monomial.
    pub coeffs: Vec<Vec<Elem>>,
    /// Number of coefficients of each `t_j` (0 forces `t_j = 0`).
    pub lens: Vec<usize>,
    pub squared_first: bool,
}

impl Relation {
    fn out_len(&self) -> usize {
        let mut out = 1;
        for (j, (c, &len)) in self.coeffs.iter().zip(&self.lens).enumerate() {
            if len == 0 || c.is_empty() {
                continue;
            }
            let e = if j == 0 && self.squared_first { 2 } else { 1 };
            out = out.max(c.len() + e * (len - 1));
        }
        out
    }

    /// Indices entering linearly, restricted to `allowed`.
    fn linear_vars(&self, allowed: u32) -> Vec<usize> {
        let skip = self.squared_first as usize;
        (skip..self.lens.len()).filter(|&j| allowed >> j & 1 == 1 && self.lens[j] > 0).collect()
    }

    fn matrix(&self, vars: &[usize]) -> (Vec<Vec<Elem>>, usize) {
        let c: Vec<&[Elem]> = vars.iter().map(|&j| self.coeffs[j].as_slice()).collect();
        let lens: Vec<usize> = vars.iter().map(|&j| self.lens[j]).collect();
        (multiplication_matrix(&c, &lens, self.out_len()), lens.iter().sum())
    }

    fn square_free(&self, allowed: u32) -> bool {
        !self.squared_first || allowed & 1 == 0 || self.lens[0] == 0
    }

    /// Number of solutions with `t_j = 0` outside `allowed`.
    pub fn count(&self, k: &FiniteField, allowed: u32) -> u128 {
        let q = k.order() as u128;
        let vars = self.linear_vars(allowed);
        let (m, ncols) = self.matrix(&vars);
        if self.square_free(allowed) {
            return q.pow(exact_arith::linalg::nullity(k, &m, ncols) as u32);
        }
        let rhs_len = self.out_len();
        let mut total = 0;
        for code in 0..(q as u64).pow(self.lens[0] as u32) {
            let t0 = raw::from_code(q as u64, self.lens[0] as u32, code);
            let rhs = self.square_term(k, &t0, rhs_len);
            if let Some((_, dim)) = solve_affine(k, &m, &rhs, ncols) {
                total += q.pow(dim as u32);
            }
        }
        total
    }

    /// `-c_0 t_0^2`, padded to `len`.
    fn square_term(&self, k: &FiniteField, t0: &[Elem], len: usize) -> Vec<Elem> {
        let sq = raw::mul(k, &raw::mul(k, t0, t0), &self.coeffs[0]);
        let mut rhs: Vec<Elem> = sq.iter().map(|&a| k.neg(a)).collect();
        rhs.resize(len, 0);
        rhs
    }

    /// Calls `f` on every solution with `t_j = 0` outside `allowed`; each
    /// `t_j` is trimmed.
    pub fn for_each_solution(&self, k: &FiniteField, allowed: u32, mut f: impl FnMut(&[Vec<Elem>])) {
        let q = k.order() as u64;
        let vars = self.linear_vars(allowed);
        let (m, ncols) = self.matrix(&vars);
        let basis = nullspace(k, &m, ncols);
        let mut t = vec![Vec::new(); self.lens.len()];
        let mut emit = |t0: Option<&[Elem]>, particular: &[Elem], t: &mut Vec<Vec<Elem>>| {
            for code in 0..q.pow(basis.len() as u32) {
                let c = raw::from_code(q, basis.len() as u32, code);
                let mut x = particular.to_vec();
                for (b, &ci) in basis.iter().zip(&c) {
                    for (xi, &bi) in x.iter_mut().zip(b) {
                        *xi = k.add(*xi, k.mul(ci, bi));
                    }
                }
                let mut col = 0;
                for &j in &vars {
                    let mut tj = x[col..col + self.lens[j]].to_vec();
                    raw::trim(&mut tj);
                    t[j] = tj;
                    col += self.lens[j];
                }
                if let Some(t0) = t0 {
                    t[0] = t0.to_vec();
                }
                f(t);
            }
        };
        if self.square_free(allowed) {
            emit(None, &vec![0; ncols], &mut t);
            return;
        }
        let rhs_len = self.out_len();
        for code in 0..q.pow(self.lens[0] as u32) {
            let t0 = raw::from_code(q, self.lens[0] as u32, code);
            let rhs = self.square_term(k, &t0, rhs_len);
            if let Some((x, _)) = solve_affine(k, &m, &rhs, ncols) {
                emit(Some(&t0), &x, &mut t);
            }
        }
    }
}
