use serde::{Deserialize, Serialize};
use std::fmt;

/// Integer coordinates of a divisor class (or of a dual point) in a fixed basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PicVector(pub Vec<i64>);

impl fmt::Debug for PicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl PicVector {
    pub fn zero(rank: usize) -> Self {
        PicVector(vec![0; rank])
    }

    /// The `i`-th basis vector.
    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        PicVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &PicVector) -> PicVector {
        assert_eq!(self.rank(), o.rank());
        PicVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &PicVector) -> PicVector {
        assert_eq!(self.rank(), o.rank());
        PicVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> PicVector {
        PicVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn dot(&self, o: &PicVector) -> i64 {
        assert_eq!(self.rank(), o.rank());
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}
