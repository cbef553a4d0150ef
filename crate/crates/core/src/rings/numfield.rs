//! Number fields `Q[X]/P(X)` for a monic irreducible `P`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{DensePoly, PolyRing, Rationals, Ring};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct NumberField {
    modulus: DensePoly<BigRational>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[X]/({})", self.modulus)
    }
}

impl NumberField {
    /// Irreducibility is not checked; a reducible modulus surfaces later as
    /// [`Error::ReducibleModulus`] from [`NumFieldElem::inverse`].
    pub fn new(modulus: DensePoly<BigRational>) -> Result<Arc<Self>> {
        match (modulus.degree(), modulus.leading()) {
            (Some(d), Some(lc)) if d >= 1 && lc.is_one() => Ok(Arc::new(NumberField { modulus })),
            _ => Err(Error::InvalidModulus(format!("{modulus} is not monic of positive degree"))),
        }
    }

    pub fn modulus(&self) -> &DensePoly<BigRational> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("positive degree")
    }

    pub fn zero(self: &Arc<Self>) -> NumFieldElem {
        NumFieldElem { field: Arc::clone(self), coeffs: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(self: &Arc<Self>) -> NumFieldElem {
        self.from_rational(BigRational::one())
    }

    pub fn from_rational(self: &Arc<Self>, c: BigRational) -> NumFieldElem {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    pub fn generator(self: &Arc<Self>) -> NumFieldElem {
        self.from_poly(&PolyRing::new(Rationals).x())
    }

    pub fn from_poly(self: &Arc<Self>, f: &DensePoly<BigRational>) -> NumFieldElem {
        let r = PolyRing::new(Rationals).rem(f, &self.modulus).expect("nonzero modulus");
        let mut e = self.zero();
        for (i, c) in r.coeffs().iter().enumerate() {
            e.coeffs[i] = c.clone();
        }
        e
    }
}

/// Element of `Q[X]/P`, stored as `deg P` rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct NumFieldElem {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for NumFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl NumFieldElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> DensePoly<BigRational> {
        PolyRing::new(Rationals).from_coeffs(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "NumFieldElem operands from different fields"
        );
    }

    pub fn pow(&self, mut e: u32) -> NumFieldElem {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Field inverse via the extended Euclidean algorithm on `(self, P)`.
    pub fn inverse(&self) -> Result<NumFieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let inv = PolyRing::new(Rationals).inverse_mod(&self.to_poly(), &self.field.modulus)?;
        Ok(self.field.from_poly(&inv))
    }

    /// Evaluates the representative at a real point; used for float cross-checks.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Add for &NumFieldElem {
    type Output = NumFieldElem;
    fn add(self, rhs: &NumFieldElem) -> NumFieldElem {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        NumFieldElem { field: Arc::clone(&self.field), coeffs }
    }
}

impl Sub for &NumFieldElem {
    type Output = NumFieldElem;
    fn sub(self, rhs: &NumFieldElem) -> NumFieldElem {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        NumFieldElem { field: Arc::clone(&self.field), coeffs }
    }
}

impl Neg for &NumFieldElem {
    type Output = NumFieldElem;
    fn neg(self) -> NumFieldElem {
        NumFieldElem { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &NumFieldElem {
    type Output = NumFieldElem;
    fn mul(self, rhs: &NumFieldElem) -> NumFieldElem {
        self.check(rhs);
        let ring = PolyRing::new(Rationals);
        self.field.from_poly(&ring.mul(&self.to_poly(), &rhs.to_poly()))
    }
}

impl super::linalg::FieldElement for NumFieldElem {
    fn is_zero(&self) -> bool {
        NumFieldElem::is_zero(self)
    }
    fn inverse(&self) -> Result<Self> {
        NumFieldElem::inverse(self)
    }
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }
}

impl Ring for Arc<NumberField> {
    type Elem = NumFieldElem;

    fn zero(&self) -> NumFieldElem {
        NumberField::zero(self)
    }
    fn one(&self) -> NumFieldElem {
        NumberField::one(self)
    }
    fn from_i64(&self, n: i64) -> NumFieldElem {
        self.from_rational(BigRational::from_integer(n.into()))
    }
    fn is_zero(&self, a: &NumFieldElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &NumFieldElem, b: &NumFieldElem) -> NumFieldElem {
        a + b
    }
    fn sub(&self, a: &NumFieldElem, b: &NumFieldElem) -> NumFieldElem {
        a - b
    }
    fn neg(&self, a: &NumFieldElem) -> NumFieldElem {
        -a
    }
    fn mul(&self, a: &NumFieldElem, b: &NumFieldElem) -> NumFieldElem {
        a * b
    }
    fn unit_inverse(&self, a: &NumFieldElem) -> Option<NumFieldElem> {
        a.inverse().ok()
    }
}
