//! The Moebius function on tuples of effective divisors, built place by
//! place from the pattern function `mu0`.

use crate::divisor::{EffDivisor, Place};
use crate::CurveError;
use std::collections::BTreeSet;
use variety_model::{mu0, rlv_and_incidence, Incidence, Mu0Table, VarietyDescriptor};

#[derive(Clone, Debug)]
pub struct MuDivCache {
    pub inc: Incidence,
    pub table: Mu0Table,
}

fn places_of(e: &[EffDivisor]) -> BTreeSet<&Place> {
    e.iter().flat_map(|d| d.parts.iter().map(|(p, _)| p)).collect()
}

impl MuDivCache {
    pub fn new(v: &VarietyDescriptor) -> Result<MuDivCache, CurveError> {
        let inc = rlv_and_incidence(v)?;
        let table = mu0(&inc);
        Ok(MuDivCache { inc, table })
    }

    pub fn coords(&self) -> usize {
        self.table.coords
    }

    fn check_len(&self, e: &[EffDivisor]) -> Result<(), CurveError> {
        if e.len() != self.coords() {
            return Err(CurveError::Degrees(format!("{} divisors for {} coordinates", e.len(), self.coords())));
        }
        Ok(())
    }

    /// `prod_v mu0(v(E))`.
    pub fn mu_div(&self, e: &[EffDivisor]) -> Result<i64, CurveError> {
        self.check_len(e)?;
        let mut acc = 1;
        for p in places_of(e) {
            let alpha: Vec<u32> = e.iter().map(|d| d.multiplicity(p)).collect();
            acc *= self.table.at(&alpha);
            if acc == 0 {
                break;
            }
        }
        Ok(acc)
    }

    /// `sum_{E' <= E} mu(E')`, by listing every `E'`.
    pub fn partial_sum(&self, e: &[EffDivisor]) -> Result<i64, CurveError> {
        self.check_len(e)?;
        let slots: Vec<(usize, &Place, u32)> =
            e.iter().enumerate().flat_map(|(k, d)| d.parts.iter().map(move |(p, m)| (k, p, *m))).collect();
        let mut choice = vec![0u32; slots.len()];
        let mut total = 0;
        loop {
            let mut sub = vec![Vec::new(); e.len()];
            for ((k, p, _), &c) in slots.iter().zip(&choice) {
                sub[*k].push(((*p).clone(), c));
            }
            let sub: Vec<EffDivisor> = sub.into_iter().map(EffDivisor::from_parts).collect();
            total += self.mu_div(&sub)?;
            // Odometer over 0..=m per slot.
            let mut i = 0;
            while i < slots.len() && choice[i] == slots[i].2 {
                choice[i] = 0;
                i += 1;
            }
            if i == slots.len() {
                return Ok(total);
            }
            choice[i] += 1;
        }
    }

    /// At every place, do the divisors vanishing there meet?
    pub fn meets_everywhere(&self, e: &[EffDivisor]) -> Result<bool, CurveError> {
        self.check_len(e)?;
        Ok(places_of(e).into_iter().all(|p| {
            let mask = e.iter().enumerate().fold(0u32, |m, (k, d)| m | ((d.multiplicity(p) > 0) as u32) << k);
            self.inc.holds(mask)
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use variety_model::builtin_xn;

    fn at(p: Place, m: u32) -> EffDivisor {
        EffDivisor::from_parts(vec![(p, m)])
    }

    #[test]
    fn zero_double_and_product() {
        let v = builtin_xn(3).unwrap();
        let c = MuDivCache::new(&v).unwrap();
        let zero = vec![EffDivisor::zero(); 7];
        assert_eq!(c.mu_div(&zero).unwrap(), 1);
        let mut e = zero.clone();
        e[1] = at(Place::Infinity, 2);
        assert_eq!(c.mu_div(&e).unwrap(), 0);
        // s1 and t1 vanish together at infinity, s2 and t2 at x = 0.
        let (p, p2) = (Place::Infinity, Place::Finite(vec![0, 1]));
        let mut e = zero.clone();
        e[1] = at(p.clone(), 1);
        e[4] = at(p, 1);
        e[2] = at(p2.clone(), 1);
        e[5] = at(p2, 1);
        let single = c.table.at(&[0, 1, 0, 0, 1, 0, 0]);
        assert_eq!(c.mu_div(&e).unwrap(), single * c.table.at(&[0, 0, 1, 0, 0, 1, 0]));
    }
}
