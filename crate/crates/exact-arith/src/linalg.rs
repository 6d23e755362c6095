//! Dense linear algebra over `F_q`.

use crate::field::{Elem, FiniteField};

/// Row-reduced echelon form, in place. Returns the pivot columns.
pub fn rref(k: &FiniteField, m: &mut [Vec<Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(piv) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        let inv = k.inv(m[row][col]).expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = k.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let c = m[r][col];
                for j in 0..m[r].len() {
                    let v = k.mul(c, m[row][j]);
                    m[r][j] = k.sub(m[r][j], v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(k: &FiniteField, rows: &[Vec<Elem>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(k, &mut m, ncols).len()
}

/// Dimension of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn nullity(k: &FiniteField, rows: &[Vec<Elem>], ncols: usize) -> usize {
    ncols - rank(k, rows, ncols)
}

/// A basis of `{x : A x = 0}`.
pub fn nullspace(k: &FiniteField, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(k, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// Solve `A x = b`: `None` if inconsistent, else a particular solution and the
/// dimension of the solution space.
pub fn solve_affine(
    k: &FiniteField,
    rows: &[Vec<Elem>],
    rhs: &[Elem],
    ncols: usize,
) -> Option<(Vec<Elem>, usize)> {
    let mut m: Vec<Vec<Elem>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v = r.clone();
            v.resize(ncols, 0);
            v.push(b);
            v
        })
        .collect();
    let pivots = rref(k, &mut m, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![0; ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][ncols];
    }
    Some((x, ncols - pivots.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_make;

    #[test]
    fn rank_and_nullspace_f3() {
        let k = field_make(3, 1).unwrap();
        let a = vec![vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 1, 1]];
        assert_eq!(rank(&k, &a, 4), 2);
        let ns = nullspace(&k, &a, 4);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s = row.iter().zip(&v).fold(0, |acc, (&x, &y)| k.add(acc, k.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn affine_systems() {
        let k = field_make(2, 2).unwrap();
        let a = vec![vec![1, 1], vec![0, 0]];
        assert_eq!(solve_affine(&k, &a, &[3, 1], 2), None);
        let (x, dim) = solve_affine(&k, &a, &[3, 0], 2).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(k.add(x[0], x[1]), 3);
    }
}
