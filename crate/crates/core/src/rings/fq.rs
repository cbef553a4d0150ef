//! Prime fields `F_q` and their extensions `F_q[X]/P̄(X)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{DensePoly, Field, PolyRing, Ring};
use super::primes::{self, mul_mod};
use crate::{Error, Result};

/// Residue in `[0, q)`.
pub type FqElem = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        primes::require_prime(q)?;
        Ok(PrimeField { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn reduce_i64(&self, n: i64) -> FqElem {
        n.rem_euclid(self.q as i64) as u64
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> FqElem {
        n.mod_floor(&BigInt::from(self.q)).to_u64().expect("residue fits")
    }
}

impl Ring for PrimeField {
    type Elem = FqElem;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.q
    }
    fn from_i64(&self, n: i64) -> u64 {
        if self.q > i64::MAX as u64 {
            return if n >= 0 { n as u64 } else { self.q - n.unsigned_abs() };
        }
        self.reduce_i64(n)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.q as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.q - (b - a)
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.q)
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| primes::inv_mod(*a, self.q))
    }
}

impl Field for PrimeField {}

/// Rabin's irreducibility test over `F_q`.
pub fn is_irreducible(fq: PrimeField, f: &DensePoly<FqElem>) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let ring = PolyRing::new(fq);
    let qe = BigUint::from(fq.q());
    let x = ring.x();
    // frob[i] = X^{q^i} mod f
    let mut frob = vec![ring.rem(&x, f).expect("nonzero modulus")];
    for i in 1..=n {
        let next = ring.pow_mod(&frob[i - 1], &qe, f).expect("nonzero modulus");
        frob.push(next);
    }
    if frob[n] != ring.rem(&x, f).expect("nonzero modulus") {
        return false;
    }
    primes::prime_factors(n as u64).into_iter().all(|d| {
        let h = ring.sub(&frob[n / d as usize], &x);
        ring.gcd(&h, f).degree() == Some(0)
    })
}

/// The field `F_q[X]/P̄` for a monic irreducible `P̄` of degree `r ≥ 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: DensePoly<FqElem>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[X]/({})", self.base.q, self.modulus)
    }
}

impl ExtField {
    /// Validates that `modulus` is monic and irreducible over `F_q`.
    pub fn new(q: u64, modulus: DensePoly<FqElem>) -> Result<Arc<Self>> {
        let base = PrimeField::new(q)?;
        if modulus.coeffs().iter().any(|&c| c >= q) {
            return Err(Error::InvalidModulus("coefficients must be reduced mod q".into()));
        }
        match modulus.leading() {
            Some(1) if modulus.degree() >= Some(1) => {}
            _ => return Err(Error::InvalidModulus(format!("{modulus} is not monic of positive degree"))),
        }
        if !is_irreducible(base, &modulus) {
            return Err(Error::InvalidModulus(format!("{modulus} is reducible over F_{q}")));
        }
        Ok(Arc::new(ExtField { base, modulus }))
    }

    pub(crate) fn new_unchecked(base: PrimeField, modulus: DensePoly<FqElem>) -> Arc<Self> {
        debug_assert_eq!(modulus.leading(), Some(&1));
        Arc::new(ExtField { base, modulus })
    }

    pub fn q(&self) -> u64 {
        self.base.q
    }

    pub fn prime_field(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &DensePoly<FqElem> {
        &self.modulus
    }

    /// Extension degree `r`.
    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("positive degree")
    }

    /// Number of elements, `q^r`.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.q()).pow(self.degree() as u32)
    }

    pub fn zero(self: &Arc<Self>) -> FqExtElem {
        FqExtElem { field: Arc::clone(self), coeffs: vec![0; self.degree()] }
    }

    pub fn one(self: &Arc<Self>) -> FqExtElem {
        self.from_base(1)
    }

    pub fn from_base(self: &Arc<Self>, c: FqElem) -> FqExtElem {
        let mut e = self.zero();
        e.coeffs[0] = c % self.q();
        e
    }

    /// The class of `X`.
    pub fn generator(self: &Arc<Self>) -> FqExtElem {
        self.from_poly(&PolyRing::new(self.base).x())
    }

    /// Reduces a polynomial over `F_q` modulo `P̄`.
    pub fn from_poly(self: &Arc<Self>, f: &DensePoly<FqElem>) -> FqExtElem {
        let ring = PolyRing::new(self.base);
        let r = ring.rem(f, &self.modulus).expect("nonzero modulus");
        let mut e = self.zero();
        for (i, c) in r.coeffs().iter().enumerate() {
            e.coeffs[i] = *c;
        }
        e
    }

    /// Builds an element from residues (lowest power first); longer inputs are reduced.
    pub fn element(self: &Arc<Self>, coeffs: &[FqElem]) -> FqExtElem {
        let q = self.q();
        let ring = PolyRing::new(self.base);
        self.from_poly(&ring.from_coeffs(coeffs.iter().map(|c| c % q).collect()))
    }

    pub fn random<R: rand::Rng + ?Sized>(self: &Arc<Self>, rng: &mut R) -> FqExtElem {
        let q = self.q();
        let coeffs = (0..self.degree()).map(|_| rng.gen_range(0..q)).collect();
        FqExtElem { field: Arc::clone(self), coeffs }
    }
}

/// Element of `F_q[X]/P̄`, stored as `r` residues, lowest power first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqExtElem {
    field: Arc<ExtField>,
    coeffs: Vec<FqElem>,
}

impl fmt::Debug for FqExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl fmt::Display for FqExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = PolyRing::new(self.field.base).from_coeffs(self.coeffs.clone());
        write!(f, "{poly}")
    }
}

impl std::hash::Hash for ExtField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.base.q.hash(state);
        self.modulus.coeffs().hash(state);
    }
}

impl FqExtElem {
    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn same_field(&self, other: &FqExtElem) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn check(&self, other: &FqExtElem) {
        assert!(self.same_field(other), "FqExtElem operands from different fields");
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The element as a base-field scalar, if it lies in `F_q`.
    pub fn as_base(&self) -> Option<FqElem> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn scale(&self, c: FqElem) -> FqExtElem {
        let q = self.field.q();
        let coeffs = self.coeffs.iter().map(|&a| mul_mod(a, c % q, q)).collect();
        FqExtElem { field: Arc::clone(&self.field), coeffs }
    }

    /// `self += c·other` without reallocating.
    pub fn add_scaled_assign(&mut self, other: &FqExtElem, c: FqElem) {
        self.check(other);
        let fq = self.field.base;
        let c = c % fq.q();
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = fq.add(a, &mul_mod(*b, c, fq.q()));
        }
    }

    fn add_impl(&self, other: &FqExtElem) -> FqExtElem {
        self.check(other);
        let fq = self.field.base;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| fq.add(a, b)).collect();
        FqExtElem { field: Arc::clone(&self.field), coeffs }
    }

    fn sub_impl(&self, other: &FqExtElem) -> FqExtElem {
        self.check(other);
        let fq = self.field.base;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| fq.sub(a, b)).collect();
        FqExtElem { field: Arc::clone(&self.field), coeffs }
    }

    fn neg_impl(&self) -> FqExtElem {
        let fq = self.field.base;
        let coeffs = self.coeffs.iter().map(|a| fq.neg(a)).collect();
        FqExtElem { field: Arc::clone(&self.field), coeffs }
    }

    fn mul_impl(&self, other: &FqExtElem) -> FqExtElem {
        self.check(other);
        let q = self.field.q();
        let r = self.field.degree();
        let qq = q as u128;
        let mut t = vec![0u128; 2 * r - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                t[i + j] = (t[i + j] + a as u128 * b as u128) % qq;
            }
        }
        let m = self.field.modulus.coeffs();
        for i in (r..t.len()).rev() {
            let c = t[i];
            if c == 0 {
                continue;
            }
            // X^r ≡ −(m_0 + … + m_{r−1} X^{r−1})
            for j in 0..r {
                let sub = c * m[j] as u128 % qq;
                t[i - r + j] = (t[i - r + j] + qq - sub) % qq;
            }
            t[i] = 0;
        }
        let coeffs = t[..r].iter().map(|&c| c as u64).collect();
        FqExtElem { field: Arc::clone(&self.field), coeffs }
    }

    pub fn pow(&self, e: &BigUint) -> FqExtElem {
        let mut acc = self.field.one();
        for i in (0..e.bits()).rev() {
            acc = &acc * &acc;
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    pub fn pow_u64(&self, e: u64) -> FqExtElem {
        self.pow(&BigUint::from(e))
    }

    /// `x ↦ x^q`.
    pub fn frobenius(&self) -> FqExtElem {
        self.pow_u64(self.field.q())
    }

    pub fn inverse(&self) -> Result<FqExtElem> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let ring = PolyRing::new(self.field.base);
        let f = ring.from_coeffs(self.coeffs.clone());
        let inv = ring.inverse_mod(&f, &self.field.modulus)?;
        Ok(self.field.from_poly(&inv))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&FqExtElem> for &FqExtElem {
            type Output = FqExtElem;
            fn $method(self, rhs: &FqExtElem) -> FqExtElem {
                self.$imp(rhs)
            }
        }
        impl $tr<FqExtElem> for FqExtElem {
            type Output = FqExtElem;
            fn $method(self, rhs: FqExtElem) -> FqExtElem {
                self.$imp(&rhs)
            }
        }
        impl $tr<&FqExtElem> for FqExtElem {
            type Output = FqExtElem;
            fn $method(self, rhs: &FqExtElem) -> FqExtElem {
                self.$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &FqExtElem {
    type Output = FqExtElem;
    fn neg(self) -> FqExtElem {
        self.neg_impl()
    }
}

impl Neg for FqExtElem {
    type Output = FqExtElem;
    fn neg(self) -> FqExtElem {
        self.neg_impl()
    }
}

impl super::linalg::FieldElement for FqExtElem {
    fn is_zero(&self) -> bool {
        FqExtElem::is_zero(self)
    }
    fn inverse(&self) -> Result<Self> {
        FqExtElem::inverse(self)
    }
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn compatible(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

/// `|F|^* / n` for building `n`-th roots of unity out of random elements.
pub(crate) fn cofactor_exponent(field: &ExtField, n: u64) -> Option<BigUint> {
    let m = field.order() - BigUint::one();
    let n = BigUint::from(n);
    (m.clone() % &n).is_zero().then(|| m / n)
}
