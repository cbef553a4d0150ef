//! The group ring `Z[X]/(X^p − 1)` as a stand-in for `Z[X]/Φ_p`.
//!
//! Since `X^p − 1 = (X − 1)·Φ_p`, a vector is zero modulo `Φ_p` exactly when
//! it is an integer multiple of `1 + X + … + X^{p−1}`, i.e. when all of its
//! coordinates agree.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::DensePoly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloVec {
    coeffs: Vec<BigInt>,
}

impl CycloVec {
    pub fn zero(p: usize) -> Self {
        assert!(p > 0, "p must be positive");
        CycloVec { coeffs: vec![BigInt::zero(); p] }
    }

    /// `c·X^e` with `e` taken mod `p`.
    pub fn monomial(p: usize, e: usize, c: BigInt) -> Self {
        let mut v = Self::zero(p);
        v.coeffs[e % p] = c;
        v
    }

    pub fn one(p: usize) -> Self {
        Self::monomial(p, 0, BigInt::one())
    }

    /// `Φ_p = 1 + X + … + X^{p−1}`.
    pub fn phi(p: usize) -> Self {
        CycloVec { coeffs: vec![BigInt::one(); p] }
    }

    /// Length must be `p`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "p must be positive");
        CycloVec { coeffs }
    }

    /// Reduces exponents of an integer polynomial mod `p`.
    pub fn from_poly(p: usize, f: &DensePoly<BigInt>) -> Self {
        let mut v = Self::zero(p);
        for (i, c) in f.coeffs().iter().enumerate() {
            v.coeffs[i % p] += c;
        }
        v
    }

    pub fn p(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Whether `Φ_p` divides the vector, i.e. all coordinates are equal.
    pub fn is_zero_mod_phi(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] == w[1])
    }

    /// Substitution `X ↦ X^l`: coefficient `t` moves to `l·t mod p`.
    pub fn relabel(&self, l: usize) -> Self {
        let p = self.p();
        let mut out = Self::zero(p);
        for (t, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(t * l) % p] += c;
        }
        out
    }

    /// Multiplication by `X^s`.
    pub fn shift(&self, s: usize) -> Self {
        let p = self.p();
        let mut out = Self::zero(p);
        for (t, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(t + s) % p] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CycloVec { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Value at `X = 1`, the sum of all coordinates.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p(), other.p(), "CycloVec operands with different p");
    }
}

impl Add for &CycloVec {
    type Output = CycloVec;
    fn add(self, rhs: &CycloVec) -> CycloVec {
        self.check(rhs);
        CycloVec { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycloVec {
    type Output = CycloVec;
    fn sub(self, rhs: &CycloVec) -> CycloVec {
        self.check(rhs);
        CycloVec { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycloVec {
    type Output = CycloVec;
    fn neg(self) -> CycloVec {
        CycloVec { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CycloVec {
    type Output = CycloVec;
    fn mul(self, rhs: &CycloVec) -> CycloVec {
        self.check(rhs);
        let p = self.p();
        let mut out = CycloVec::zero(p);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out.coeffs[(i + j) % p] += a * b;
            }
        }
        out
    }
}

impl Add for CycloVec {
    type Output = CycloVec;
    fn add(self, rhs: CycloVec) -> CycloVec {
        &self + &rhs
    }
}

impl Sub for CycloVec {
    type Output = CycloVec;
    fn sub(self, rhs: CycloVec) -> CycloVec {
        &self - &rhs
    }
}

impl Mul for CycloVec {
    type Output = CycloVec;
    fn mul(self, rhs: CycloVec) -> CycloVec {
        &self * &rhs
    }
}
