//! Sufficient bounds on `q` for all minors of `F_p` over `F_q` to be nonzero,
//! and the first admissible prime for each.
//!
//! Both bounds apply when `ord_p(q) = p − 1`:
//!
//! * the product bound `Γ_p = max_A s_A(1, …, 1)`;
//! * the cyclotomic-sum bound `max_{A,B} |m_{A,B}·p − s_A(1, …, 1)|`, where
//!   `m_{A,B}` is the coefficient mass of `α_B(s_A)` on exponents divisible by `p`.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::enumerate::{affine_reps, binomial, k_subsets, OrbitRep};
use crate::minors::check_limit;
use crate::rings::primes::{is_prime, mult_order, require_prime};
use crate::schur::{jacobi_trudi_spec, schur_eval_ones, IndexSet};
use crate::{Error, Result, RunOptions, VERSION};

/// Largest `p` for `Γ_p` without `force`.
pub const GAMMA_LIMIT: usize = 13;
/// Work budget (Schur spectra to compute) for the cyclotomic-sum bound.
pub const ROUTINE_BUDGET: u128 = 20_000;
/// Work budget in extended mode.
pub const EXTENDED_BUDGET: u128 = 100_000_000;
/// Primes above this are never tried by [`first_admissible_prime`].
pub const SEARCH_CEILING: u64 = 1_000_000_000;
/// Sizes for which a table row exists.
pub const TABLE_PRIMES: [usize; 6] = [2, 3, 5, 7, 11, 13];
/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "FOURIER_MINORS_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMethod {
    /// `max_{A,B} |m_{A,B}·p − s_A(1, …, 1)|`.
    New,
    /// `Γ_p = max_A s_A(1, …, 1)`.
    Zhang,
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMethod::New => "new",
            BoundMethod::Zhang => "zhang",
        })
    }
}

impl FromStr for BoundMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "new" => Ok(BoundMethod::New),
            "zhang" => Ok(BoundMethod::Zhang),
            _ => Err(Error::Parse(format!("unknown method {s:?} (expected new or zhang)"))),
        }
    }
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub p: usize,
    pub method: BoundMethod,
    #[serde(serialize_with = "decimal")]
    pub value: BigInt,
    /// Lexicographically least maximizer, ordered by size first.
    pub argmax_a: Vec<usize>,
    /// Column set of the maximizing pair (cyclotomic-sum bound only).
    pub argmax_b: Option<Vec<usize>>,
    /// Row sets (Zhang) or Schur spectra (new) computed.
    pub work_items: u64,
    pub version: String,
    pub elapsed_s: f64,
}

/// `Γ_p` over all nonempty `A ⊆ {0, …, p−1}`.
pub fn gamma_zhang(p: usize, opts: &RunOptions) -> Result<BoundReport> {
    let start = Instant::now();
    require_prime(p as u64)?;
    check_limit(p, opts, GAMMA_LIMIT, GAMMA_LIMIT)?;
    let mut best: Option<(BigInt, IndexSet)> = None;
    let mut work = 0;
    for k in 1..=p {
        for m in k_subsets(p, k) {
            let a = IndexSet::from_mask(p, m);
            let v = schur_eval_ones(&a);
            work += 1;
            if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                best = Some((v, a));
            }
        }
    }
    let (value, a) = best.expect("p ≥ 1 has a nonempty subset");
    Ok(BoundReport {
        p,
        method: BoundMethod::Zhang,
        value,
        argmax_a: a.elems().to_vec(),
        argmax_b: None,
        work_items: work,
        version: VERSION.to_string(),
        elapsed_s: start.elapsed().as_secs_f64(),
    })
}

/// Estimated number of Schur spectra needed for [`bound_new`].
pub fn new_bound_work(p: usize) -> u128 {
    let group = (p as u128) * (p as u128 - 1).max(1);
    (1..=p as u64).map(|k| binomial(p as u64, k) * binomial(p as u64, k).div_ceil(group)).sum()
}

fn check_budget(p: usize, opts: &RunOptions) -> Result<()> {
    let estimate = new_bound_work(p);
    let budget = if opts.extended { EXTENDED_BUDGET } else { ROUTINE_BUDGET };
    if opts.force || estimate <= budget {
        Ok(())
    } else {
        Err(Error::BudgetExceeded { estimate, budget })
    }
}

/// Largest `|c[t]·p − ratio|` over the residues `t` that `m_{A,B}` takes as
/// `B` runs through its affine orbit.
fn orbit_max(a: &IndexSet, b: &IndexSet, ratio: &BigInt) -> BigInt {
    let p = a.p();
    let spec = jacobi_trudi_spec(a, b).expect("equal sizes");
    let pb = BigInt::from(p);
    let dev = |c: &BigInt| (c * &pb - ratio).abs();
    if spec.weight() % p == 0 {
        dev(spec.m_count())
    } else {
        spec.coeffs().iter().map(dev).max().expect("p ≥ 1")
    }
}

/// `max_{A,B} |m_{A,B}·p − s_A(1, …, 1)|` over all pairs with `|A| = |B|`.
///
/// `B` runs over representatives of the orbits under `x ↦ l·x + c`
/// (`l ∈ F_p^×`): since `m_{A, l·B + c} = c_B[−c·|λ|·l⁻¹]`, one spectrum per
/// orbit covers every member.
pub fn bound_new(p: usize, opts: &RunOptions) -> Result<BoundReport> {
    let start = Instant::now();
    require_prime(p as u64)?;
    check_budget(p, opts)?;
    let group: Vec<usize> = (1..p).collect();
    let reps: Vec<Vec<OrbitRep>> = (0..=p).map(|k| affine_reps(p, k, &group)).collect();
    let rows: Vec<(usize, u64)> =
        (1..=p).flat_map(|k| k_subsets(p, k).into_iter().map(move |m| (k, m))).collect();
    let maxima: Vec<BigInt> = opts.install(|| {
        rows.par_iter()
            .map(|&(k, m)| {
                let a = IndexSet::from_mask(p, m);
                let ratio = schur_eval_ones(&a);
                reps[k]
                    .iter()
                    .map(|rb| orbit_max(&a, &IndexSet::from_mask(p, rb.mask), &ratio))
                    .max()
                    .expect("every size has an orbit")
            })
            .collect()
    });
    let value = maxima.iter().max().expect("nonempty").clone();
    let row = maxima.iter().position(|v| *v == value).expect("maximum is attained");
    let (k, m) = rows[row];
    let a = IndexSet::from_mask(p, m);
    let ratio = schur_eval_ones(&a);
    let pb = BigInt::from(p);
    let b = k_subsets(p, k)
        .into_iter()
        .map(|mb| IndexSet::from_mask(p, mb))
        .find(|b| {
            let spec = jacobi_trudi_spec(&a, b).expect("equal sizes");
            (spec.m_count() * &pb - &ratio).abs() == value
        })
        .expect("some orbit member attains the maximum");
    let work_items = (1..=p).map(|k| binomial(p as u64, k as u64) as u64 * reps[k].len() as u64).sum();
    Ok(BoundReport {
        p,
        method: BoundMethod::New,
        value,
        argmax_a: a.elems().to_vec(),
        argmax_b: Some(b.elems().to_vec()),
        work_items,
        version: VERSION.to_string(),
        elapsed_s: start.elapsed().as_secs_f64(),
    })
}

pub fn compute_bound(p: usize, method: BoundMethod, opts: &RunOptions) -> Result<BoundReport> {
    match method {
        BoundMethod::New => bound_new(p, opts),
        BoundMethod::Zhang => gamma_zhang(p, opts),
    }
}

/// Least prime `q ≠ p` with `ord_p(q) = p − 1` and `q > bound`.
///
/// For `p ≤ 3` every minor of `F_p` is either `1×1`, the full matrix, or (for
/// `p = 3`) a `2×2` Vandermonde in two distinct roots of unity, so none can
/// vanish in any characteristic `q ≠ p`. There the bound is vacuous and only
/// the order condition is applied.
pub fn first_admissible_prime(p: usize, bound: &BigInt) -> Result<u64> {
    require_prime(p as u64)?;
    let p64 = p as u64;
    let admissible = |q: u64| q != p64 && is_prime(q) && mult_order(q, p64).ok() == Some(p64 - 1);
    let from = if p <= 3 {
        2
    } else {
        match bound.to_u64() {
            Some(b) if b < SEARCH_CEILING => b.max(1) + 1,
            _ if bound.is_negative() || bound.is_zero() => 2,
            _ => return Err(Error::SearchCeiling(SEARCH_CEILING)),
        }
    };
    (from..=SEARCH_CEILING).find(|&q| admissible(q)).ok_or(Error::SearchCeiling(SEARCH_CEILING))
}

/// Whether the bound is itself an admissible prime, i.e. whether reading the
/// condition as `q ≥ bound` instead of `q > bound` would change the answer.
pub fn boundary_is_admissible(p: usize, bound: &BigInt) -> bool {
    let p64 = p as u64;
    bound.to_u64().is_some_and(|b| b != p64 && is_prime(b) && mult_order(b, p64).ok() == Some(p64 - 1))
}

/// Cache file layout; the value is a decimal string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub p: usize,
    pub method: BoundMethod,
    pub value: String,
    #[serde(rename = "argmax_A")]
    pub argmax_a: Vec<usize>,
    #[serde(rename = "argmax_B")]
    pub argmax_b: Option<Vec<usize>>,
    pub version: String,
    pub elapsed_s: f64,
}

impl From<&BoundReport> for CacheRecord {
    fn from(r: &BoundReport) -> Self {
        CacheRecord {
            p: r.p,
            method: r.method,
            value: r.value.to_string(),
            argmax_a: r.argmax_a.clone(),
            argmax_b: r.argmax_b.clone(),
            version: r.version.clone(),
            elapsed_s: r.elapsed_s,
        }
    }
}

impl CacheRecord {
    pub fn into_report(self) -> Result<BoundReport> {
        let value = BigInt::from_str(&self.value).map_err(|e| Error::Cache(format!("bad value {:?}: {e}", self.value)))?;
        Ok(BoundReport {
            p: self.p,
            method: self.method,
            value,
            argmax_a: self.argmax_a,
            argmax_b: self.argmax_b,
            work_items: 0,
            version: self.version,
            elapsed_s: self.elapsed_s,
        })
    }
}

pub fn cache_path(dir: &Path, p: usize, method: BoundMethod) -> PathBuf {
    dir.join(format!("bound-{method}-p{p}-v{VERSION}.json"))
}

pub fn write_cache(dir: &Path, report: &BoundReport) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
    let path = cache_path(dir, report.p, report.method);
    let text = serde_json::to_string_pretty(&CacheRecord::from(report)).map_err(|e| Error::Cache(e.to_string()))?;
    fs::write(&path, text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    Ok(path)
}

/// Cached report for `(p, method)` at this version, if present and valid.
pub fn read_cache(dir: &Path, p: usize, method: BoundMethod) -> Result<Option<BoundReport>> {
    let path = cache_path(dir, p, method);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
    };
    let record: CacheRecord =
        serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    if record.p != p || record.method != method || record.version != VERSION {
        return Ok(None);
    }
    record.into_report().map(Some)
}

/// Computes a bound, going through the cache directory when one is given.
pub fn cached_bound(p: usize, method: BoundMethod, opts: &RunOptions, cache: Option<&Path>) -> Result<BoundReport> {
    if let Some(dir) = cache {
        if let Some(r) = read_cache(dir, p, method)? {
            return Ok(r);
        }
    }
    let report = compute_bound(p, method, opts)?;
    if let Some(dir) = cache {
        write_cache(dir, &report)?;
    }
    Ok(report)
}

/// One column of the first-admissible-prime table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub p: usize,
    pub q_new: u64,
    pub q_zhang: u64,
    #[serde(serialize_with = "decimal")]
    pub bound_new: BigInt,
    #[serde(serialize_with = "decimal")]
    pub gamma: BigInt,
    /// Published values for comparison.
    pub cited_new: Option<u64>,
    pub cited_zhang: Option<u64>,
    /// Methods whose bound is itself an admissible prime.
    pub boundary_sensitive: Vec<BoundMethod>,
}

/// Published first admissible primes `(p, new, zhang)`.
pub const CITED: [(usize, u64, u64); 6] =
    [(2, 3, 3), (3, 2, 2), (5, 7, 13), (7, 17, 89), (11, 193, 105_871), (13, 1619, 11_709_007)];

pub fn table_row(p: usize, opts: &RunOptions, cache: Option<&Path>) -> Result<TableRow> {
    let new = cached_bound(p, BoundMethod::New, opts, cache)?;
    let zhang = cached_bound(p, BoundMethod::Zhang, opts, cache)?;
    let cited = CITED.iter().find(|c| c.0 == p);
    let boundary_sensitive = [&new, &zhang]
        .into_iter()
        .filter(|r| p > 3 && boundary_is_admissible(p, &r.value))
        .map(|r| r.method)
        .collect();
    Ok(TableRow {
        p,
        q_new: first_admissible_prime(p, &new.value)?,
        q_zhang: first_admissible_prime(p, &zhang.value)?,
        bound_new: new.value,
        gamma: zhang.value,
        cited_new: cited.map(|c| c.1),
        cited_zhang: cited.map(|c| c.2),
        boundary_sensitive,
    })
}

/// Rows for every `p` in [`TABLE_PRIMES`] up to `p_max`.
pub fn reproduce_table(p_max: usize, opts: &RunOptions, cache: Option<&Path>) -> Result<Vec<TableRow>> {
    TABLE_PRIMES.iter().filter(|&&p| p <= p_max).map(|&p| table_row(p, opts, cache)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::affine_orbit;

    fn opts() -> RunOptions {
        RunOptions::default()
    }

    #[test]
    fn gamma_values() {
        let r = gamma_zhang(7, &opts()).unwrap();
        assert_eq!(r.value, BigInt::from(75));
        assert_eq!(r.argmax_a, vec![0, 1, 3, 5, 6]);
        let r = gamma_zhang(5, &opts()).unwrap();
        assert_eq!(r.value, BigInt::from(8));
        assert_eq!(r.argmax_a, vec![0, 2, 4]);
        assert_eq!(gamma_zhang(2, &opts()).unwrap().value, BigInt::from(1));
    }

    /// Brute force over every pair, no orbit reduction.
    fn bound_new_brute(p: usize) -> BigInt {
        let pb = BigInt::from(p);
        let mut best = BigInt::zero();
        for k in 1..=p {
            for ma in k_subsets(p, k) {
                let a = IndexSet::from_mask(p, ma);
                let ratio = schur_eval_ones(&a);
                for mb in k_subsets(p, k) {
                    let spec = jacobi_trudi_spec(&a, &IndexSet::from_mask(p, mb)).unwrap();
                    best = best.max((spec.m_count() * &pb - &ratio).abs());
                }
            }
        }
        best
    }

    #[test]
    fn new_bound_matches_brute_force() {
        for p in [2usize, 3, 5, 7] {
            let r = bound_new(p, &opts()).unwrap();
            assert_eq!(r.value, bound_new_brute(p), "p = {p}");
            let a = IndexSet::new(p, r.argmax_a.clone()).unwrap();
            let b = IndexSet::new(p, r.argmax_b.clone().unwrap()).unwrap();
            let spec = jacobi_trudi_spec(&a, &b).unwrap();
            assert_eq!((spec.m_count() * BigInt::from(p) - schur_eval_ones(&a)).abs(), r.value);
        }
        assert_eq!(bound_new(7, &opts()).unwrap().value, BigInt::from(8));
    }

    #[test]
    fn orbit_sums_agree_with_pairwise_computation() {
        for p in [5usize, 7] {
            let group: Vec<usize> = (1..p).collect();
            for k in 1..=p {
                for rb in affine_reps(p, k, &group) {
                    let b = IndexSet::from_mask(p, rb.mask);
                    for ma in k_subsets(p, k) {
                        let a = IndexSet::from_mask(p, ma);
                        let base = jacobi_trudi_spec(&a, &b).unwrap();
                        let mut via_relabel = BigInt::zero();
                        let mut direct = BigInt::zero();
                        let mut seen = std::collections::HashSet::new();
                        for &l in &group {
                            for c in 0..p {
                                let member = b.scaled(l).translated(c);
                                if seen.insert(member.clone()) {
                                    via_relabel += base.m_count_affine(l, c);
                                    direct += jacobi_trudi_spec(&a, &member).unwrap().m_count().clone();
                                }
                            }
                        }
                        assert_eq!(seen.len() as u64, affine_orbit(rb.mask, &group, p).len() as u64);
                        assert_eq!(via_relabel, direct);
                    }
                }
            }
        }
    }

    #[test]
    fn admissible_primes() {
        let b = |v: i64| BigInt::from(v);
        assert_eq!(first_admissible_prime(7, &b(8)).unwrap(), 17);
        assert_eq!(first_admissible_prime(7, &b(75)).unwrap(), 89);
        assert_eq!(first_admissible_prime(2, &b(1)).unwrap(), 3);
        assert_eq!(first_admissible_prime(3, &b(2)).unwrap(), 2);
        assert!(first_admissible_prime(4, &b(2)).is_err());
        assert!(boundary_is_admissible(7, &b(17)));
        assert!(!boundary_is_admissible(7, &b(75)));
    }

    #[test]
    fn budget_guard() {
        assert!(new_bound_work(11) <= ROUTINE_BUDGET);
        assert!(new_bound_work(13) > ROUTINE_BUDGET);
        assert!(matches!(bound_new(13, &opts()), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn table_up_to_seven() {
        let rows = reproduce_table(7, &opts(), None).unwrap();
        let got: Vec<(usize, u64, u64)> = rows.iter().map(|r| (r.p, r.q_new, r.q_zhang)).collect();
        assert_eq!(got, vec![(2, 3, 3), (3, 2, 2), (5, 7, 13), (7, 17, 89)]);
        assert!(rows.iter().all(|r| r.q_new <= r.q_zhang));
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut r = bound_new(5, &opts()).unwrap();
        r.value = BigInt::from_str("123456789012345678901234567890").unwrap();
        write_cache(dir.path(), &r).unwrap();
        let back = read_cache(dir.path(), 5, BoundMethod::New).unwrap().unwrap();
        assert_eq!(back.value, r.value);
        assert_eq!(back.argmax_a, r.argmax_a);
        assert_eq!(back.argmax_b, r.argmax_b);
        assert!(read_cache(dir.path(), 7, BoundMethod::New).unwrap().is_none());
        let cached = cached_bound(5, BoundMethod::New, &opts(), Some(dir.path())).unwrap();
        assert_eq!(cached.value, r.value);
    }
}
