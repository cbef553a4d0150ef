//! Splitting of `Φ_p` over `F_q` and the field `F_{q^r} = F_q[X]/P̄` in which
//! `ω = X` is a primitive `p`-th root of unity.
//!
//! `L[i]` in [`TraceTable`] is the coefficient of `Y^{r−1}` in the minimal
//! polynomial of `ω^i`, i.e. the *negated* sum of the Frobenius conjugates of
//! `ω^i`. This is not the usual field trace, which has the opposite sign.

use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::rings::fq::{cofactor_exponent, is_irreducible, ExtField, FqElem, FqExtElem, PrimeField};
use crate::rings::poly::{DensePoly, PolyRing, Ring};
use crate::rings::primes::{self, pow_mod};
use crate::{Error, Result};

pub use crate::rings::primes::mult_order;

/// Seed for the randomized root search. The chosen `P̄` does not depend on it.
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

fn check_pair(p: u64, q: u64) -> Result<usize> {
    Ok(mult_order(q, p)? as usize)
}

/// `Φ_p` with coefficients in `F_q`.
pub fn phi_mod_q(p: usize, q: u64) -> Result<DensePoly<FqElem>> {
    let ring = PolyRing::new(PrimeField::new(q)?);
    Ok(ring.from_i64s(&vec![1; p]))
}

/// The exponents `i·q^l mod p` for `l = 0, …, r − 1`.
pub fn frobenius_exponents(p: usize, q: u64, i: usize) -> Result<Vec<usize>> {
    if i % p == 0 {
        return Err(Error::ZeroExponent(i as u64));
    }
    let r = check_pair(p as u64, q)?;
    let qm = (q % p as u64) as usize;
    let mut out = Vec::with_capacity(r);
    let mut e = i % p;
    for _ in 0..r {
        out.push(e);
        e = e * qm % p;
    }
    Ok(out)
}

/// Coefficients (lowest first) of `∏ (Y − β)` over the roots given.
fn product_of_linears(field: &Arc<ExtField>, roots: &[FqExtElem]) -> Vec<FqExtElem> {
    let mut poly = vec![field.one()];
    for beta in roots {
        let mut next = vec![field.zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * beta);
        }
        poly = next;
    }
    poly
}

/// Minimal polynomial over `F_q` of an element whose conjugates are `roots`.
fn descend(fq: PrimeField, field: &Arc<ExtField>, roots: &[FqExtElem]) -> DensePoly<FqElem> {
    let coeffs = product_of_linears(field, roots)
        .iter()
        .map(|c| c.as_base().expect("symmetric functions of conjugates lie in F_q"))
        .collect();
    PolyRing::new(fq).from_coeffs(coeffs)
}

/// Top-down coefficient order, so `X^3 + X + 1 < X^3 + X^2 + 1`.
fn lex_key(f: &DensePoly<FqElem>) -> Vec<FqElem> {
    f.coeffs().iter().rev().copied().collect()
}

fn random_irreducible(fq: PrimeField, r: usize, rng: &mut ChaCha8Rng) -> DensePoly<FqElem> {
    let ring = PolyRing::new(fq);
    loop {
        let mut c: Vec<FqElem> = (0..r).map(|_| rng.gen_range(0..fq.q())).collect();
        c.push(1);
        let f = ring.from_coeffs(c);
        if is_irreducible(fq, &f) {
            return f;
        }
    }
}

/// All irreducible factors of `Φ_p` over `F_q`, sorted by [`lex_key`].
///
/// A primitive `p`-th root of unity `ω₀ = z^{(q^r − 1)/p}` is drawn in a
/// scratch copy of `F_{q^r}`; the factors are the minimal polynomials of
/// `ω₀^{n}` for coset representatives `n` of `⟨q⟩` in `F_p^×`.
pub fn phi_factors_seeded(p: usize, q: u64, seed: u64) -> Result<Vec<DensePoly<FqElem>>> {
    let r = check_pair(p as u64, q)?;
    let fq = PrimeField::new(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scratch = ExtField::new_unchecked(fq, random_irreducible(fq, r, &mut rng));
    let e = cofactor_exponent(&scratch, p as u64).expect("p divides q^r − 1");
    let omega0 = loop {
        let z = scratch.random(&mut rng);
        if z.is_zero() {
            continue;
        }
        let w = z.pow(&e);
        if !w.is_one() {
            break w;
        }
    };
    let cosets = coset_table(p, q)?;
    let mut factors: Vec<DensePoly<FqElem>> = cosets
        .reps
        .iter()
        .map(|&n| {
            let roots: Vec<FqExtElem> = frobenius_exponents(p, q, n)
                .expect("valid exponent")
                .into_iter()
                .map(|e| omega0.pow_u64(e as u64))
                .collect();
            descend(fq, &scratch, &roots)
        })
        .collect();
    factors.sort_by_key(lex_key);
    Ok(factors)
}

pub fn phi_factors(p: usize, q: u64) -> Result<Vec<DensePoly<FqElem>>> {
    phi_factors_seeded(p, q, DEFAULT_SEED)
}

/// `F_{q^r} = F_q[X]/P̄` with `ω = X`, for distinct primes `p`, `q`.
#[derive(Clone, Debug)]
pub struct FieldSetup {
    p: usize,
    q: u64,
    r: usize,
    field: Arc<ExtField>,
    omega_powers: Vec<FqExtElem>,
}

impl FieldSetup {
    /// Uses the lexicographically smallest irreducible factor of `Φ_p`.
    pub fn build(p: usize, q: u64) -> Result<Self> {
        Self::build_seeded(p, q, DEFAULT_SEED)
    }

    pub fn build_seeded(p: usize, q: u64, seed: u64) -> Result<Self> {
        let pbar = phi_factors_seeded(p, q, seed)?.swap_remove(0);
        Self::with_modulus(p, q, pbar)
    }

    /// Uses a caller-chosen factor `P̄` of `Φ_p` (monic, degree `ord_p(q)`).
    pub fn with_modulus(p: usize, q: u64, pbar: DensePoly<FqElem>) -> Result<Self> {
        let r = check_pair(p as u64, q)?;
        let fq = PrimeField::new(q)?;
        if pbar.degree() != Some(r) || pbar.leading() != Some(&1) {
            return Err(Error::InvalidModulus(format!("{pbar} must be monic of degree ord_{p}({q}) = {r}")));
        }
        if pbar.coeffs().iter().any(|&c| c >= q) {
            return Err(Error::InvalidModulus("coefficients must be reduced mod q".into()));
        }
        let ring = PolyRing::new(fq);
        if !ring.rem(&phi_mod_q(p, q)?, &pbar)?.is_zero() {
            return Err(Error::InvalidModulus(format!("{pbar} does not divide Φ_{p} over F_{q}")));
        }
        // Every irreducible factor of Φ_p has degree r, so a degree-r divisor is irreducible.
        let field = ExtField::new_unchecked(fq, pbar);
        let omega = field.generator();
        let mut omega_powers = Vec::with_capacity(p);
        let mut acc = field.one();
        for _ in 0..p {
            omega_powers.push(acc.clone());
            acc = &acc * &omega;
        }
        debug_assert!(acc.is_one());
        Ok(FieldSetup { p, q, r, field, omega_powers })
    }

    /// Parses `P̄` from text such as `"X^3 + X + 1"` or `"X - 3"`.
    pub fn with_modulus_str(p: usize, q: u64, pbar: &str) -> Result<Self> {
        let coeffs = crate::rings::poly::parse_integer_poly(pbar)?;
        let fq = PrimeField::new(q)?;
        let poly = PolyRing::new(fq).from_coeffs(coeffs.into_iter().map(|c| fq.from_i64(c)).collect());
        Self::with_modulus(p, q, poly)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn pbar(&self) -> &DensePoly<FqElem> {
        self.field.modulus()
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn omega(&self) -> &FqExtElem {
        &self.omega_powers[1 % self.p]
    }

    /// `ω^e`, exponent taken mod `p`.
    pub fn omega_pow(&self, e: usize) -> &FqExtElem {
        &self.omega_powers[e % self.p]
    }

    /// `Σ_t c[t]·ω^t` for residues `c[t] ∈ F_q`.
    pub fn eval_residues(&self, c: &[FqElem]) -> FqExtElem {
        let mut acc = self.field.zero();
        for (t, &ct) in c.iter().enumerate() {
            if ct != 0 {
                acc.add_scaled_assign(self.omega_pow(t), ct);
            }
        }
        acc
    }

    pub fn prime_field(&self) -> PrimeField {
        self.field.prime_field()
    }
}

pub fn build_field(p: usize, q: u64) -> Result<FieldSetup> {
    FieldSetup::build(p, q)
}

/// `[ω^{i·q^l mod p}]` for `l = 0, …, r − 1`.
pub fn frobenius_orbit(setup: &FieldSetup, i: usize) -> Result<Vec<FqExtElem>> {
    Ok(frobenius_exponents(setup.p, setup.q, i)?
        .into_iter()
        .map(|e| setup.omega_pow(e).clone())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceTable {
    pub p: usize,
    pub q: u64,
    /// `values[i − 1] = L[i]` for `i = 1, …, p − 1`.
    values: Vec<FqElem>,
}

impl TraceTable {
    pub fn get(&self, i: usize) -> FqElem {
        assert!(i % self.p != 0, "L is defined on exponents 1..p-1");
        self.values[i % self.p - 1]
    }

    pub fn values(&self) -> &[FqElem] {
        &self.values
    }
}

/// `L[i]` = coefficient of `Y^{r−1}` in `∏_l (Y − ω^{i·q^l})`.
pub fn trace_table(setup: &FieldSetup) -> TraceTable {
    let fq = setup.prime_field();
    let values = (1..setup.p)
        .map(|i| {
            let orbit = frobenius_orbit(setup, i).expect("nonzero exponent");
            let minpoly = descend(fq, &setup.field, &orbit);
            *minpoly.coeff(setup.r - 1).unwrap_or(&0)
        })
        .collect();
    TraceTable { p: setup.p, q: setup.q, values }
}

/// Cosets of `⟨q⟩` in `F_p^×`, each represented by its least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub p: usize,
    pub q: u64,
    pub r: usize,
    /// Sorted ascending.
    pub reps: Vec<usize>,
    /// `cosets[j]` is the sorted coset of `reps[j]`.
    pub cosets: Vec<Vec<usize>>,
    rep_of: Vec<usize>,
}

impl CosetTable {
    /// Representative of the coset containing `i` (`i ≢ 0`).
    pub fn rep_of(&self, i: usize) -> usize {
        assert!(i % self.p != 0, "0 is not in F_p^×");
        self.rep_of[i % self.p]
    }

    /// The subgroup `⟨q⟩` itself, i.e. the coset of 1.
    pub fn subgroup(&self) -> &[usize] {
        &self.cosets[0]
    }
}

pub fn coset_table(p: usize, q: u64) -> Result<CosetTable> {
    let r = check_pair(p as u64, q)?;
    let qm = q % p as u64;
    let mut rep_of = vec![0usize; p];
    let mut reps = Vec::new();
    let mut cosets = Vec::new();
    for i in 1..p {
        if rep_of[i] != 0 {
            continue;
        }
        let mut coset: Vec<usize> = (0..r as u64)
            .map(|l| (i as u64 * pow_mod(qm, l, p as u64) % p as u64) as usize)
            .collect();
        coset.sort_unstable();
        for &m in &coset {
            rep_of[m] = i;
        }
        reps.push(i);
        cosets.push(coset);
    }
    Ok(CosetTable { p, q, r, reps, cosets, rep_of })
}

/// Whether `q` generates `F_p^×`, i.e. `Φ_p` stays irreducible mod `q`.
pub fn is_primitive(q: u64, p: u64) -> bool {
    p != q && primes::is_prime(p) && primes::is_prime(q) && mult_order(q, p).ok() == Some(p - 1)
}

/// `(q^r − 1)/p`, exposed for diagnostics.
pub fn root_cofactor(setup: &FieldSetup) -> BigUint {
    cofactor_exponent(&setup.field, setup.p as u64).expect("p | q^r − 1")
}
