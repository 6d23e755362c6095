use std::fmt;

/// Polynomial degree with an explicit sentinel for the zero polynomial.
///
/// `NegInf` orders below every finite degree, so `max`/`min` behave as in the
/// usual convention, but there is no arithmetic on the sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        matches!(self, Degree::NegInf)
    }

    /// Degree of a product.
    pub fn mul(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }

    /// `true` when the degree is at most `bound` (the zero polynomial always is).
    pub fn at_most(self, bound: i64) -> bool {
        match self {
            Degree::NegInf => true,
            Degree::Finite(d) => (d as i64) <= bound,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}
