//! The Moebius function `mu0` of the divisor incidence: the unique function
//! on `{0,1}^N` with `sum_{beta <= alpha} mu0(beta) = 1` if the divisors in
//! `supp(alpha)` meet and `0` otherwise.

use crate::incidence::Incidence;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Mu0Table {
    pub coords: usize,
    pub values: Vec<i64>,
}

impl Mu0Table {
    pub fn new(inc: &Incidence) -> Mu0Table {
        let n = inc.coords;
        let mut values: Vec<i64> = (0..1u32 << n).map(|m| inc.holds(m) as i64).collect();
        for bit in 0..n {
            for m in 0..1usize << n {
                if m >> bit & 1 == 1 {
                    values[m] -= values[m ^ (1 << bit)];
                }
            }
        }
        Mu0Table { coords: n, values }
    }

    pub fn at_mask(&self, mask: u32) -> i64 {
        self.values[mask as usize]
    }

    /// Pointwise extension to `N^N`: zero as soon as an entry is at least 2.
    pub fn at(&self, alpha: &[u32]) -> i64 {
        assert_eq!(alpha.len(), self.coords);
        if alpha.iter().any(|&a| a >= 2) {
            return 0;
        }
        self.at_mask(alpha.iter().enumerate().fold(0, |m, (k, &a)| m | (a << k)))
    }

    /// Masks with nonzero value.
    pub fn support(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.values.iter().enumerate().filter(|(_, &v)| v != 0).map(|(m, &v)| (m as u32, v))
    }

    /// Checks the defining summation identity for every pattern.
    pub fn verify(&self, inc: &Incidence) -> bool {
        let n = self.coords;
        let mut sums = self.values.clone();
        for bit in 0..n {
            for m in 0..1usize << n {
                if m >> bit & 1 == 1 {
                    sums[m] += sums[m ^ (1 << bit)];
                }
            }
        }
        sums.iter().enumerate().all(|(m, &s)| s == inc.holds(m as u32) as i64)
    }
}

pub fn mu0(inc: &Incidence) -> Mu0Table {
    Mu0Table::new(inc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::{builtin_dp6a2, builtin_xn};
    use crate::incidence::rlv_and_incidence;

    #[test]
    fn basic_values() {
        for v in [builtin_xn(3).unwrap(), builtin_dp6a2()] {
            let inc = rlv_and_incidence(&v).unwrap();
            let mu = mu0(&inc);
            assert_eq!(mu.at_mask(0), 1);
            for k in 0..v.coord_count() {
                assert_eq!(mu.at_mask(1 << k), 0);
            }
            let mut alpha = vec![0; v.coord_count()];
            alpha[0] = 2;
            assert_eq!(mu.at(&alpha), 0);
            assert!(mu.verify(&inc));
        }
    }

    #[test]
    fn pairs_that_do_not_meet_get_minus_one() {
        // F_i and G_i do not meet on X_3 when the pair is a non-relevant complement.
        let v = builtin_xn(3).unwrap();
        let inc = rlv_and_incidence(&v).unwrap();
        let mu = mu0(&inc);
        for a in 0..v.coord_count() {
            for b in a + 1..v.coord_count() {
                let m = 1u32 << a | 1 << b;
                assert_eq!(mu.at_mask(m), if inc.holds(m) { 0 } else { -1 });
            }
        }
    }
}
