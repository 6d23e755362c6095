//! Binary forms on `P^1`, stored as the dehomogenised polynomial together
//! with the form degree; the gap between the two is the order at infinity.

use crate::CurveError;
use exact_arith::field::{Elem, FiniteField};
use exact_arith::poly::raw;
use exact_arith::Degree;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    /// Trimmed coefficients, constant term first.
    pub poly: Vec<Elem>,
    pub deg: i64,
}

pub(crate) fn poly_deg(p: &[Elem]) -> i64 {
    match raw::degree(p) {
        Degree::Finite(d) => d as i64,
        Degree::NegInf => -1,
    }
}

impl Form {
    pub fn new(mut poly: Vec<Elem>, deg: i64) -> Result<Form, CurveError> {
        raw::trim(&mut poly);
        if poly_deg(&poly) > deg {
            return Err(CurveError::Degrees(format!("polynomial of degree {} in a form of degree {deg}", poly_deg(&poly))));
        }
        Ok(Form { poly, deg })
    }

    pub fn one() -> Form {
        Form { poly: vec![1], deg: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    /// `None` for the zero form.
    pub fn order_at_infinity(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.deg - poly_deg(&self.poly))
    }

    pub fn mul(&self, k: &FiniteField, other: &Form) -> Form {
        Form { poly: raw::mul(k, &self.poly, &other.poly), deg: self.deg + other.deg }
    }

    pub fn pow(&self, k: &FiniteField, e: u32) -> Form {
        (0..e).fold(Form::one(), |acc, _| acc.mul(k, self))
    }

    pub fn scale(&self, k: &FiniteField, c: Elem) -> Form {
        Form { poly: raw::scale(k, &self.poly, c), deg: self.deg }
    }
}

/// The greatest common divisor of nonzero forms: monic polynomial part and
/// order at infinity.
pub fn inf_of(k: &FiniteField, forms: &[&Form]) -> (Vec<Elem>, i64) {
    let mut g: Vec<Elem> = Vec::new();
    let mut inf = i64::MAX;
    for f in forms {
        g = raw::gcd(k, &g, &f.poly);
        inf = inf.min(f.order_at_infinity().expect("nonzero form"));
    }
    (raw::monic(k, &g), if forms.is_empty() { 0 } else { inf })
}

/// Degree of the common divisor of nonzero forms.
pub fn inf_degree(k: &FiniteField, forms: &[&Form]) -> i64 {
    let (g, inf) = inf_of(k, forms);
    poly_deg(&g).max(0) + inf
}

/// Do the forms share a zero at some closed point of `P^1`?
pub fn common_zero(k: &FiniteField, forms: &[&Form]) -> bool {
    !forms.is_empty() && inf_degree(k, forms) > 0
}

/// Every form of degree `deg` (the zero form included), by base-`q` code.
pub fn forms_of_degree(q: u64, deg: i64) -> impl Iterator<Item = Form> {
    let len = if deg < 0 { 0 } else { deg as u32 + 1 };
    let total = q.checked_pow(len).expect("enumeration size checked by the caller");
    (0..total).map(move |code| Form { poly: raw::from_code(q, len, code), deg })
}

/// Matrix of `(t_j) -> sum_j t_j c_j`, where `t_j` has `lens[j]` coefficients
/// and the image has `out_len`. Columns are grouped by `j`.
pub fn multiplication_matrix(c: &[&[Elem]], lens: &[usize], out_len: usize) -> Vec<Vec<Elem>> {
    let ncols: usize = lens.iter().sum();
    let mut rows = vec![vec![0; ncols]; out_len];
    let mut col = 0;
    for (cj, &len) in c.iter().zip(lens) {
        for shift in 0..len {
            for (r, &a) in cj.iter().enumerate() {
                if a != 0 {
                    rows[r + shift][col + shift] = a;
                }
            }
        }
        col += len;
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_orders_and_gcd() {
        let k = FiniteField::with_order(3).unwrap();
        // x (x + 1) as a cubic form vanishes once at infinity.
        let a = Form::new(vec![0, 1, 1], 3).unwrap();
        let b = Form::new(vec![0, 2], 2).unwrap();
        assert_eq!(a.order_at_infinity(), Some(1));
        assert_eq!(inf_of(&k, &[&a, &b]), (vec![0, 1], 1));
        assert_eq!(inf_degree(&k, &[&a, &b]), 2);
        assert!(common_zero(&k, &[&a, &b]));
        assert!(!common_zero(&k, &[&Form::new(vec![1, 1], 1).unwrap(), &Form::new(vec![0, 1], 1).unwrap()]));
        assert!(Form::new(vec![0, 0, 1], 1).is_err());
    }

    #[test]
    fn multiplication_matrix_shape() {
        // (t_1, t_2) -> t_1 * x + t_2 * (1 + x), t_j of degree <= 1.
        let m = multiplication_matrix(&[&[0, 1], &[1, 1]], &[2, 2], 3);
        assert_eq!(m, vec![vec![0, 0, 1, 0], vec![1, 0, 1, 1], vec![0, 1, 0, 1]]);
        assert_eq!(forms_of_degree(2, 1).count(), 4);
        assert_eq!(forms_of_degree(2, -1).count(), 1);
    }
}
