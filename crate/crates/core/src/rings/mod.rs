//! Exact arithmetic: dense polynomials, the cyclotomic group ring
//! `Z[X]/(X^p − 1)`, finite fields `F_q` and `F_{q^r}`, and number fields
//! `Q[X]/P`.

pub mod cyclo;
pub mod fq;
pub mod linalg;
pub mod numfield;
pub mod poly;
pub mod primes;

pub use poly::{DensePoly, Field, Integers, PolyRing, Rationals, Ring};
