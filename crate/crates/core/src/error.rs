use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor has a non-unit leading coefficient")]
    NonMonicDivisor,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("modulus is not irreducible (gcd of degree {0})")]
    ReducibleModulus(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("p and q must be distinct primes (both are {0})")]
    EqualPrimes(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("row and column sets differ in size ({rows} vs {cols})")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("matrix entries live in different fields")]
    MixedModuli,
    #[error("exponent {0} is divisible by p")]
    ZeroExponent(u64),
    #[error("monomial expansion needs {needed} tableaux, cap is {cap}")]
    ExpansionCap { needed: String, cap: u64 },
    #[error("ord_{p}({q}) = {r}: the Fourier matrix has entries outside F_{q}")]
    NotPrimeField { p: u64, q: u64, r: u64 },
    #[error("estimated work {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("p = {p} is above the {mode} limit of {limit}")]
    LimitExceeded { p: u64, limit: u64, mode: &'static str },
    #[error("no admissible prime found below {0}")]
    SearchCeiling(u64),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("parse error: {0}")]
    Parse(String),
}
