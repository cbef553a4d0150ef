//! Exact checks of the two orbit-sum identities behind the bounds.
//!
//! * Scaling sum, over `Z[X]/Φ_p`:
//!   `Σ_{l=1}^{p−1} α_{l·B}(s_A) = m_{A,B}·p − s_A(1, …, 1)`.
//! * Frobenius sum, over `F_q[X]/P̄` with `r = ord_p(q)`:
//!   `Σ_{l=0}^{r−1} α_{q^l·B}(s_A) = r·m^{(0)} − Σ_i m^{(n_i)}·L[n_i]`,
//!   where `n_i` runs over coset representatives of `⟨q⟩` in `F_p^×` and
//!   `m^{(n)}` is the coefficient mass on exponents in the coset of `n`.
//!
//! Each left-hand side is assembled from spectra computed afresh for every
//! scaled column set, so the identities are tested independently of the
//! relabeling shortcut used elsewhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo_factor::{coset_table, trace_table, FieldSetup};
use crate::enumerate::k_subsets;
use crate::minors::{minor_vanishes, Context, Violation};
use crate::rings::cyclo::CycloVec;
use crate::rings::fq::FqExtElem;
use crate::rings::primes::{pow_mod, require_prime};
use crate::schur::{jacobi_trudi_spec, schur_eval_ones, IndexSet};
use crate::{Error, Result, RunOptions};

/// `m_{A,B}·p − s_A(1, …, 1)`.
pub fn scaling_sum_rhs(a: &IndexSet, b: &IndexSet) -> Result<BigInt> {
    let spec = jacobi_trudi_spec(a, b)?;
    Ok(spec.m_count() * BigInt::from(a.p()) - schur_eval_ones(a))
}

/// `Σ_{l=1}^{p−1} α_{l·B}(s_A) mod (X^p − 1)`.
pub fn scaling_sum_lhs(a: &IndexSet, b: &IndexSet) -> Result<CycloVec> {
    let p = a.p();
    let mut acc = CycloVec::zero(p);
    for l in 1..p {
        acc = &acc + jacobi_trudi_spec(a, &b.scaled(l))?.as_cyclo();
    }
    Ok(acc)
}

/// Whether the scaling-sum identity holds modulo `Φ_p`.
pub fn scaling_sum_check(a: &IndexSet, b: &IndexSet) -> Result<bool> {
    let lhs = scaling_sum_lhs(a, b)?;
    let rhs = CycloVec::monomial(a.p(), 0, scaling_sum_rhs(a, b)?);
    Ok((&lhs - &rhs).is_zero_mod_phi())
}

/// `p ∤ s_A(1, …, 1)`, which makes the scaling sum a nonzero integer and so
/// forces `α_B(s_A)(ω) ≠ 0` in characteristic zero.
///
/// # Panics
///
/// If the ratio argument and the direct vanishing test disagree.
pub fn ratio_nonvanishing(a: &IndexSet, b: &IndexSet) -> Result<bool> {
    let p = BigInt::from(a.p());
    let coprime = !(schur_eval_ones(a) % &p).is_zero();
    let vanishes = minor_vanishes(&Context::char_zero(a.p())?, a, b)?;
    assert!(
        !(coprime && vanishes),
        "internal error: minor ({a}, {b}) vanishes although p does not divide s_A(1, …, 1)"
    );
    Ok(coprime)
}

/// `Σ_{l=0}^{r−1} α_{q^l·B}(s_A)` evaluated at `ω ∈ F_{q^r}`.
pub fn frobenius_sum_lhs(setup: &FieldSetup, a: &IndexSet, b: &IndexSet) -> Result<FqExtElem> {
    let p = setup.p();
    let q = setup.q() % p as u64;
    let mut acc = setup.field().zero();
    for l in 0..setup.r() {
        let scaled = b.scaled(pow_mod(q, l as u64, p as u64) as usize);
        let spec = jacobi_trudi_spec(a, &scaled)?;
        acc = &acc + &setup.eval_residues(&spec.residues(setup.q()));
    }
    Ok(acc)
}

/// `r·m^{(0)} − Σ_i m^{(n_i)}·L[n_i]` in `F_q`.
pub fn frobenius_sum_rhs(setup: &FieldSetup, a: &IndexSet, b: &IndexSet) -> Result<u64> {
    let q = setup.q();
    let fq = setup.prime_field();
    let spec = jacobi_trudi_spec(a, b)?;
    let traces = trace_table(setup);
    let counts = spec.coset_counts(&coset_table(setup.p(), q)?);
    let red = |v: &BigInt| fq.reduce_bigint(v);
    let mut acc = red(&(spec.m_count() * BigInt::from(setup.r())));
    for (n, m) in &counts {
        let term = red(m) as u128 * traces.get(*n) as u128 % q as u128;
        acc = ((acc as u128 + q as u128 - term) % q as u128) as u64;
    }
    Ok(acc)
}

pub fn frobenius_sum_check(setup: &FieldSetup, a: &IndexSet, b: &IndexSet) -> Result<bool> {
    let lhs = frobenius_sum_lhs(setup, a, b)?;
    let rhs = frobenius_sum_rhs(setup, a, b)?;
    Ok(lhs == setup.field().from_base(rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    ScalingSum,
    RatioNonvanishing,
    FrobeniusSum,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::ScalingSum => "scaling-sum",
            Identity::RatioNonvanishing => "ratio-nonvanishing",
            Identity::FrobeniusSum => "frobenius-sum",
        })
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scaling-sum" => Ok(Identity::ScalingSum),
            "ratio-nonvanishing" => Ok(Identity::RatioNonvanishing),
            "frobenius-sum" => Ok(Identity::FrobeniusSum),
            _ => Err(Error::Parse(format!("unknown identity {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentitySummary {
    pub identity: Identity,
    pub p: usize,
    pub q: Option<u64>,
    pub checked: u64,
    pub failed: u64,
    pub first_failure: Option<Violation>,
}

impl IdentitySummary {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Every pair `(A, B)` with `|A| = |B|`, ordered by `(k, A, B)`.
pub fn all_pairs(p: usize) -> Vec<(IndexSet, IndexSet)> {
    let mut out = Vec::new();
    for k in 1..=p {
        let sets: Vec<IndexSet> = k_subsets(p, k).into_iter().map(|m| IndexSet::from_mask(p, m)).collect();
        for a in &sets {
            for b in &sets {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// `count` pairs drawn with a uniform size `k ∈ 1..=p` and uniform `k`-subsets.
pub fn random_pairs(p: usize, count: usize, seed: u64) -> Vec<(IndexSet, IndexSet)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=p);
            let a = IndexSet::new(p, sample(&mut rng, p, k).into_vec()).expect("valid subset");
            let b = IndexSet::new(p, sample(&mut rng, p, k).into_vec()).expect("valid subset");
            (a, b)
        })
        .collect()
}

/// Runs one identity over the given pairs. `q` is required for the
/// Frobenius sum and ignored otherwise.
pub fn sweep(
    identity: Identity,
    p: usize,
    q: Option<u64>,
    pairs: &[(IndexSet, IndexSet)],
    opts: &RunOptions,
) -> Result<IdentitySummary> {
    require_prime(p as u64)?;
    let setup = match (identity, q) {
        (Identity::FrobeniusSum, Some(q)) => Some(FieldSetup::build(p, q)?),
        (Identity::FrobeniusSum, None) => return Err(Error::Parse("the Frobenius sum needs q".into())),
        _ => None,
    };
    let results: Vec<Result<bool>> = opts.install(|| {
        pairs
            .par_iter()
            .map(|(a, b)| match identity {
                Identity::ScalingSum => scaling_sum_check(a, b),
                Identity::RatioNonvanishing => ratio_nonvanishing(a, b),
                Identity::FrobeniusSum => frobenius_sum_check(setup.as_ref().expect("built above"), a, b),
            })
            .collect()
    });
    let mut failed = 0;
    let mut first_failure = None;
    for ((a, b), r) in pairs.iter().zip(results) {
        if !r? {
            failed += 1;
            first_failure.get_or_insert(Violation { rows: a.elems().to_vec(), cols: b.elems().to_vec() });
        }
    }
    Ok(IdentitySummary {
        identity,
        p,
        q: if identity == Identity::FrobeniusSum { q } else { None },
        checked: pairs.len() as u64,
        failed,
        first_failure,
    })
}

/// `(m·p − ratio) mod q`, the primitive-case reduction of the Frobenius sum.
pub fn scaling_sum_rhs_mod(a: &IndexSet, b: &IndexSet, q: u64) -> Result<u64> {
    let v = scaling_sum_rhs(a, b)?;
    let qb = BigInt::from(q);
    Ok((((v % &qb) + &qb) % &qb).to_u64().expect("reduced"))
}
