//! Exact linear algebra over `Q` for the tiny ranks used here.

use exact_arith::{BigInt, BigRational};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type QMat = Vec<Vec<BigRational>>;

pub fn to_q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&a| BigRational::from_integer(BigInt::from(a))).collect()
}

pub fn to_qmat(rows: &[Vec<i64>]) -> QMat {
    rows.iter().map(|r| to_q(r)).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMat, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(piv) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, piv);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let c = m[r][col].clone();
                for j in 0..m[r].len() {
                    let v = &c * &m[row][j];
                    m[r][j] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank_i64(rows: &[Vec<i64>], ncols: usize) -> usize {
    let mut m = to_qmat(rows);
    rref(&mut m, ncols).len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(rows: &QMat, ncols: usize) -> QMat {
    let mut m = rows.clone();
    let pivots = rref(&mut m, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![BigRational::zero(); ncols];
            v[fc] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Solve `A x = b` for square invertible `A` (columns are unknowns).
pub fn solve(a: &QMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: QMat = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let piv = rref(&mut m, n);
    if piv.len() < n {
        return None;
    }
    Some(m.iter().map(|r| r[n].clone()).collect())
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Determinant of a square integer matrix (Bareiss, exact).
pub fn det_i64(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Scale a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[BigRational]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g.abs() };
    ints.iter().map(|x| (x / &g).to_i64().expect("normal fits in i64")).collect()
}

pub fn dot_q(a: &[i64], v: &[BigRational]) -> BigRational {
    a.iter()
        .zip(v)
        .fold(BigRational::zero(), |acc, (&x, y)| acc + y * BigRational::from_integer(BigInt::from(x)))
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}
