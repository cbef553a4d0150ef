//! Dense univariate polynomials over a coefficient ring supplied at runtime.
//!
//! Coefficient rings are context objects ([`Ring`]) so that `F_q` can carry
//! its modulus without storing it in every coefficient. Polynomials are stored
//! lowest degree first with no trailing zeros; the zero polynomial is empty.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A commutative ring with identity, given as a context object.
pub trait Ring {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The inverse of `a` when `a` is a unit.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// Marker for rings in which every nonzero element is a unit.
pub trait Field: Ring {}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

impl Field for Rationals {}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DensePoly<E> {
    coeffs: Vec<E>,
}

impl<E> DensePoly<E> {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl<E: fmt::Debug> fmt::Debug for DensePoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly{:?}", self.coeffs)
    }
}

/// Polynomial arithmetic over a base ring.
#[derive(Debug, Clone, Default)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Builds a polynomial from coefficients (lowest first), trimming zeros.
    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> DensePoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> DensePoly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn zero(&self) -> DensePoly<R::Elem> {
        DensePoly::zero()
    }

    pub fn one(&self) -> DensePoly<R::Elem> {
        self.constant(self.base.one())
    }

    pub fn constant(&self, c: R::Elem) -> DensePoly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c·X^n`.
    pub fn monomial(&self, c: R::Elem, n: usize) -> DensePoly<R::Elem> {
        let mut v = vec![self.base.zero(); n];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn x(&self) -> DensePoly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn add(&self, f: &DensePoly<R::Elem>, g: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        let n = f.coeffs.len().max(g.coeffs.len());
        let zero = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let a = f.coeffs.get(i).unwrap_or(&zero);
                let b = g.coeffs.get(i).unwrap_or(&zero);
                self.base.add(a, b)
            })
            .collect();
        self.from_coeffs(v)
    }

    pub fn neg(&self, f: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        DensePoly { coeffs: f.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    pub fn sub(&self, f: &DensePoly<R::Elem>, g: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, f: &DensePoly<R::Elem>, c: &R::Elem) -> DensePoly<R::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn mul(&self, f: &DensePoly<R::Elem>, g: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        if f.is_zero() || g.is_zero() {
            return DensePoly::zero();
        }
        let mut v = vec![self.base.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in f.coeffs.iter().enumerate() {
            if self.base.is_zero(a) {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(a, b));
            }
        }
        self.from_coeffs(v)
    }

    pub fn pow(&self, f: &DensePoly<R::Elem>, mut n: u32) -> DensePoly<R::Elem> {
        let mut acc = self.one();
        let mut base = f.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Horner evaluation at a point of the base ring.
    pub fn eval(&self, f: &DensePoly<R::Elem>, x: &R::Elem) -> R::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    /// `f(g(X))`.
    pub fn compose(&self, f: &DensePoly<R::Elem>, g: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        f.coeffs.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, g), &self.constant(c.clone()))
        })
    }

    /// Euclidean division `f = quot·g + rem` with `deg rem < deg g`.
    ///
    /// Requires the leading coefficient of `g` to be a unit of the base ring;
    /// over `Z` that means a monic (or `−1`-leading) divisor.
    pub fn divmod(
        &self,
        f: &DensePoly<R::Elem>,
        g: &DensePoly<R::Elem>,
    ) -> Result<(DensePoly<R::Elem>, DensePoly<R::Elem>)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = self
            .base
            .unit_inverse(g.leading().expect("nonzero"))
            .ok_or(Error::NonMonicDivisor)?;
        let mut rem = f.coeffs.clone();
        if rem.len() <= dg {
            return Ok((self.zero(), f.clone()));
        }
        let mut quot = vec![self.base.zero(); rem.len() - dg];
        for i in (dg..rem.len()).rev() {
            let c = self.base.mul(&rem[i], &lc_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, gc);
                rem[i - dg + j] = self.base.sub(&rem[i - dg + j], &t);
            }
            quot[i - dg] = c;
        }
        rem.truncate(dg);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem(&self, f: &DensePoly<R::Elem>, g: &DensePoly<R::Elem>) -> Result<DensePoly<R::Elem>> {
        self.divmod(f, g).map(|(_, r)| r)
    }

    pub fn mul_mod(
        &self,
        f: &DensePoly<R::Elem>,
        g: &DensePoly<R::Elem>,
        m: &DensePoly<R::Elem>,
    ) -> Result<DensePoly<R::Elem>> {
        self.rem(&self.mul(f, g), m)
    }

    /// `f^e mod m` by square and multiply.
    pub fn pow_mod(
        &self,
        f: &DensePoly<R::Elem>,
        e: &BigUint,
        m: &DensePoly<R::Elem>,
    ) -> Result<DensePoly<R::Elem>> {
        let mut acc = self.rem(&self.one(), m)?;
        let base = self.rem(f, m)?;
        for i in (0..e.bits()).rev() {
            acc = self.mul_mod(&acc, &acc, m)?;
            if e.bit(i) {
                acc = self.mul_mod(&acc, &base, m)?;
            }
        }
        Ok(acc)
    }
}

impl<R: Field> PolyRing<R> {
    /// Scales `f` to leading coefficient one. The zero polynomial is returned as is.
    pub fn monic(&self, f: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        match f.leading() {
            None => f.clone(),
            Some(lc) => {
                let inv = self.base.unit_inverse(lc).expect("field");
                self.scale(f, &inv)
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, f: &DensePoly<R::Elem>, g: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("nonzero divisor over a field");
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Returns `(d, s, t)` with `s·f + t·g = d` and `d` the monic gcd.
    pub fn ext_gcd(
        &self,
        f: &DensePoly<R::Elem>,
        g: &DensePoly<R::Elem>,
    ) -> (DensePoly<R::Elem>, DensePoly<R::Elem>, DensePoly<R::Elem>) {
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divmod(&r0, &r1).expect("nonzero divisor over a field");
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.base.unit_inverse(lc).expect("field");
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    /// Inverse of `f` modulo `m`; fails when `f ≡ 0` or `gcd(f, m) ≠ 1`.
    pub fn inverse_mod(&self, f: &DensePoly<R::Elem>, m: &DensePoly<R::Elem>) -> Result<DensePoly<R::Elem>> {
        let f = self.rem(f, m)?;
        if f.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (d, s, _) = self.ext_gcd(&f, m);
        match d.degree() {
            Some(0) => self.rem(&s, m),
            Some(k) => Err(Error::ReducibleModulus(k)),
            None => Err(Error::ZeroInverse),
        }
    }
}

/// Coefficient types that know how to print themselves inside a polynomial.
pub trait CoeffDisplay {
    fn is_negative(&self) -> bool;
    fn is_unit_magnitude(&self) -> bool;
    fn magnitude(&self) -> String;
}

impl CoeffDisplay for u64 {
    fn is_negative(&self) -> bool {
        false
    }
    fn is_unit_magnitude(&self) -> bool {
        *self == 1
    }
    fn magnitude(&self) -> String {
        self.to_string()
    }
}

impl CoeffDisplay for BigInt {
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit_magnitude(&self) -> bool {
        self.abs().is_one()
    }
    fn magnitude(&self) -> String {
        self.abs().to_string()
    }
}

impl CoeffDisplay for BigRational {
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit_magnitude(&self) -> bool {
        self.abs().is_one()
    }
    fn magnitude(&self) -> String {
        self.abs().to_string()
    }
}

impl<E: CoeffDisplay + Zero> fmt::Display for DensePoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.magnitude();
            match (i, c.is_unit_magnitude()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{mag}X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{mag}X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Parses `"X^3 + 7X^2 + 6X + 10"`-style input into integer coefficients,
/// lowest degree first. `*` between coefficient and `X` is accepted, as is `x`.
pub fn parse_integer_poly(s: &str) -> Result<Vec<i64>> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in cleaned.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<i64> = Vec::new();
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        let bad = || Error::Parse(format!("bad term {term:?}"));
        let (c, deg) = match body.find(['X', 'x']) {
            None => (body.parse::<i64>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let c = if pos == 0 { 1 } else { body[..pos].parse::<i64>().map_err(|_| bad())? };
                let rest = &body[pos + 1..];
                let deg = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                };
                (c, deg)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += if neg { -c } else { c };
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zx() -> PolyRing<Integers> {
        PolyRing::new(Integers)
    }

    #[test]
    fn divmod_factorization_identity() {
        let r = zx();
        let f = r.from_i64s(&[-1, 0, 1]);
        let g = r.from_i64s(&[-1, 1]);
        let (q, rem) = r.divmod(&f, &g).unwrap();
        assert_eq!(q, r.from_i64s(&[1, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn x5_mod_phi5_matches_evaluation() {
        // X^5 = (X - 1)·Φ_5 + 1; check against evaluation at integer points.
        let r = zx();
        let phi5 = r.from_i64s(&[1, 1, 1, 1, 1]);
        let x5 = r.monomial(BigInt::one(), 5);
        let (q, rem) = r.divmod(&x5, &phi5).unwrap();
        assert_eq!(rem, r.one());
        for x in [-3i64, 2, 7] {
            let x = BigInt::from(x);
            let lhs = r.eval(&x5, &x);
            let rhs = r.eval(&q, &x) * r.eval(&phi5, &x) + r.eval(&rem, &x);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn divmod_errors() {
        let r = zx();
        let f = r.from_i64s(&[1, 2, 3]);
        assert_eq!(r.divmod(&f, &r.zero()).unwrap_err(), Error::DivisionByZero);
        let g = r.from_i64s(&[1, 2]);
        assert_eq!(r.divmod(&f, &g).unwrap_err(), Error::NonMonicDivisor);
    }

    #[test]
    fn rational_inverse_mod() {
        let r = PolyRing::new(Rationals);
        let m = r.from_i64s(&[-1, 1, 1]);
        let x = r.x();
        let inv = r.inverse_mod(&x, &m).unwrap();
        assert_eq!(inv, r.from_i64s(&[1, 1]));
        assert_eq!(r.inverse_mod(&m, &m).unwrap_err(), Error::ZeroInverse);
    }

    #[test]
    fn display_and_parse() {
        let r = zx();
        let f = r.from_i64s(&[10, 6, 7, 1]);
        assert_eq!(f.to_string(), "X^3 + 7X^2 + 6X + 10");
        let g = r.from_i64s(&[-1, 1, 1]);
        assert_eq!(g.to_string(), "X^2 + X - 1");
        assert_eq!(parse_integer_poly("X^3 + 7X^2 + 6X + 10").unwrap(), vec![10, 6, 7, 1]);
        assert_eq!(parse_integer_poly("x-3").unwrap(), vec![-3, 1]);
        assert_eq!(parse_integer_poly("-2*X^2+1").unwrap(), vec![1, 0, -2]);
        assert!(parse_integer_poly("X^").is_err());
    }

    #[test]
    fn compose_chebyshev_scaling() {
        let r = PolyRing::new(Rationals);
        let f = r.from_i64s(&[0, 0, 4]);
        let half_x = r.scale(&r.x(), &BigRational::new(1.into(), 2.into()));
        assert_eq!(r.compose(&f, &half_x), r.from_i64s(&[0, 0, 1]));
    }
}
