//! Finitely generated rational cones and their inequality descriptions.
//!
//! The facet system is found by brute force over `(k-1)`-subsets of the
//! generators, where `k` is the dimension of the span. That is exact and
//! cheap at the ranks used here (at most about a dozen generators in rank 7).

use crate::qlinalg::{dot_i, dot_q, nullspace, primitive_integer, rank_i64, to_qmat, QMat};
use crate::FanError;
use exact_arith::{BigInt, BigRational};
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    gens: Vec<Vec<i64>>,
}

/// `{x : eq . x = 0 for every equation, f . x >= 0 for every facet normal}`.
///
/// Facet normals are primitive integer vectors lying in the span of the cone,
/// so they are canonical and can be compared across computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HRep {
    pub equations: Vec<Vec<i64>>,
    pub facets: Vec<Vec<i64>>,
}

impl HRep {
    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.equations.iter().all(|e| dot_q(e, v).is_zero())
            && self.facets.iter().all(|f| !dot_q(f, v).is_negative())
    }

    pub fn contains_relative_interior(&self, v: &[BigRational]) -> bool {
        self.equations.iter().all(|e| dot_q(e, v).is_zero())
            && self.facets.iter().all(|f| dot_q(f, v).is_positive())
    }

    pub fn contains_int(&self, v: &[i64]) -> bool {
        self.equations.iter().all(|e| dot_i(e, v) == 0) && self.facets.iter().all(|f| dot_i(f, v) >= 0)
    }
}

impl Cone {
    pub fn new(dim: usize, gens: Vec<Vec<i64>>) -> Result<Cone, FanError> {
        for (i, g) in gens.iter().enumerate() {
            if g.len() != dim {
                return Err(FanError::DimensionMismatch { expected: dim, got: g.len() });
            }
            if g.iter().all(|&x| x == 0) {
                return Err(FanError::ZeroGenerator(i));
            }
        }
        Ok(Cone { dim, gens })
    }

    /// The positive orthant of rank `dim`.
    pub fn orthant(dim: usize) -> Cone {
        let gens = (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect();
        Cone { dim, gens }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Vec<i64>] {
        &self.gens
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        rank_i64(&self.gens, self.dim)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.span_dim() == self.dim
    }

    pub fn is_simplicial(&self) -> bool {
        self.span_dim() == self.gens.len()
    }

    pub fn h_rep(&self) -> HRep {
        let gq = to_qmat(&self.gens);
        let equations: Vec<Vec<i64>> = nullspace(&gq, self.dim).iter().map(|v| primitive_integer(v)).collect();
        let basis = independent_rows(&self.gens, self.dim);
        let k = basis.len();
        let mut facets: Vec<Vec<i64>> = Vec::new();
        if k == 0 {
            return HRep { equations, facets };
        }
        for subset in subsets_of_size(self.gens.len(), k - 1) {
            let s: Vec<Vec<i64>> = subset.iter().map(|&i| self.gens[i].clone()).collect();
            if rank_i64(&s, self.dim) != k - 1 {
                continue;
            }
            // u = sum_a c_a basis_a, with u . s = 0 for every s in the subset.
            let system: QMat = s
                .iter()
                .map(|sv| basis.iter().map(|b| BigRational::from_integer(BigInt::from(dot_i(b, sv)))).collect())
                .collect();
            let sol = if system.is_empty() {
                let mut e = vec![BigRational::zero(); k];
                e[0] = BigRational::from_integer(1.into());
                vec![e]
            } else {
                nullspace(&system, k)
            };
            let c = &sol[0];
            let u: Vec<BigRational> = (0..self.dim)
                .map(|j| {
                    basis
                        .iter()
                        .zip(c)
                        .fold(BigRational::zero(), |acc, (b, ca)| acc + ca * BigRational::from_integer(b[j].into()))
                })
                .collect();
            let u = primitive_integer(&u);
            let vals: Vec<i128> = self.gens.iter().map(|g| dot_i(&u, g)).collect();
            let normal = if vals.iter().all(|&x| x >= 0) {
                u
            } else if vals.iter().all(|&x| x <= 0) {
                u.iter().map(|x| -x).collect()
            } else {
                continue;
            };
            if !facets.contains(&normal) {
                facets.push(normal);
            }
        }
        facets.sort();
        HRep { equations, facets }
    }

    pub fn contains(&self, v: &[BigRational]) -> Result<bool, FanError> {
        self.check_len(v.len())?;
        Ok(self.h_rep().contains(v))
    }

    pub fn contains_relative_interior(&self, v: &[BigRational]) -> Result<bool, FanError> {
        self.check_len(v.len())?;
        Ok(self.h_rep().contains_relative_interior(v))
    }

    /// Topological interior: requires a full-dimensional cone.
    pub fn contains_interior(&self, v: &[BigRational]) -> Result<bool, FanError> {
        self.check_len(v.len())?;
        Ok(self.is_full_dimensional() && self.h_rep().contains_relative_interior(v))
    }

    /// Coefficients `lambda >= 0` with `v = sum lambda_a gen_a`, if any; this is
    /// the explicit certificate behind a positive membership answer.
    pub fn certificate(&self, v: &[BigRational]) -> Result<Option<Vec<BigRational>>, FanError> {
        self.check_len(v.len())?;
        let n = self.gens.len();
        let k = self.span_dim();
        for size in 0..=k {
            for subset in subsets_of_size(n, size) {
                let cols: Vec<Vec<i64>> = subset.iter().map(|&i| self.gens[i].clone()).collect();
                if rank_i64(&cols, self.dim) != size {
                    continue;
                }
                // Solve sum lambda_a col_a = v in least-squares-free exact form.
                let mut aug: QMat = (0..self.dim)
                    .map(|r| {
                        let mut row: Vec<BigRational> =
                            cols.iter().map(|c| BigRational::from_integer(c[r].into())).collect();
                        row.push(v[r].clone());
                        row
                    })
                    .collect();
                let piv = crate::qlinalg::rref(&mut aug, size + 1);
                if piv.contains(&size) {
                    continue;
                }
                let mut lambda = vec![BigRational::zero(); size];
                for (row, &pc) in piv.iter().enumerate() {
                    lambda[pc] = aug[row][size].clone();
                }
                if lambda.iter().all(|l| !l.is_negative()) {
                    let mut full = vec![BigRational::zero(); n];
                    for (a, &i) in subset.iter().enumerate() {
                        full[i] = lambda[a].clone();
                    }
                    return Ok(Some(full));
                }
            }
        }
        Ok(None)
    }

    fn check_len(&self, got: usize) -> Result<(), FanError> {
        if got != self.dim {
            Err(FanError::DimensionMismatch { expected: self.dim, got })
        } else {
            Ok(())
        }
    }
}

/// A maximal linearly independent subset of `rows`, greedy in order.
pub(crate) fn independent_rows(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for r in rows {
        let mut trial = basis.clone();
        trial.push(r.clone());
        if rank_i64(&trial, ncols) == trial.len() {
            basis = trial;
        }
    }
    basis
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
