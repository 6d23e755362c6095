use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{f} exceeds the 2^20 cap")]
    FieldTooLarge { p: u64, f: u32 },
    #[error("no defining polynomial bundled for {p}^{f}")]
    MissingDefiningPolynomial { p: u32, f: u32 },
    #[error("defining polynomial for {p}^{f} is not primitive")]
    NotPrimitive { p: u32, f: u32 },
    #[error("operands live in different fields ({0} vs {1})")]
    MixedFields(u32, u32),
    #[error("division by the zero polynomial")]
    DivisionByZero,
}
