//! Minors of the Fourier matrix `F_p = (ω^{jm})_{j,m=0}^{p−1}`.
//!
//! A minor `det F_p[A, B]` factors as `∏_{i<j}(ω^{b_j} − ω^{b_i})·s_A(ω^{b_1}, …, ω^{b_k})`.
//! The Vandermonde factor is a product of differences of distinct roots of
//! unity, hence nonzero in any field, so the minor vanishes exactly when the
//! [`SchurSpec`] of `(A, B)` vanishes at `ω`.
//!
//! Exhaustive checks exploit three symmetries that preserve vanishing:
//! translating `A` or `B` multiplies rows or columns by powers of `ω`, and
//! scaling `B` by `l` in the Galois group (all of `F_p^×` in characteristic
//! zero, `⟨q⟩` over `F_q`) maps the minor to a conjugate.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo_factor::{coset_table, FieldSetup};
use crate::enumerate::{self, affine_reps, translation_reps};
use crate::rings::fq::{FqElem, FqExtElem};
use crate::rings::linalg::det_gauss;
use crate::rings::primes::{pow_mod, require_prime};
use crate::schur::{jacobi_trudi_spec, IndexSet, SchurSpec};
use crate::{Error, Result, RunOptions};

/// Largest `p` checked without `extended`.
pub const ROUTINE_LIMIT: usize = 11;
/// Largest `p` checked with `extended` (beyond it, `force` is required).
pub const EXTENDED_LIMIT: usize = 13;
/// Default cap on `q^p − 1` for [`uncertainty_min`].
pub const UNCERTAINTY_BUDGET: u64 = 10_000_000;

/// The ring in which `F_p` lives.
#[derive(Clone, Debug)]
pub enum Context {
    /// `Z[ω]`, `ω = e^{2πi/p}`.
    CharZero { p: usize },
    /// `F_q[X]/P̄` with `ω = X`.
    Finite(FieldSetup),
}

impl Context {
    pub fn char_zero(p: usize) -> Result<Self> {
        require_prime(p as u64)?;
        Ok(Context::CharZero { p })
    }

    pub fn finite(p: usize, q: u64) -> Result<Self> {
        Ok(Context::Finite(FieldSetup::build(p, q)?))
    }

    pub fn p(&self) -> usize {
        match self {
            Context::CharZero { p } => *p,
            Context::Finite(s) => s.p(),
        }
    }

    pub fn q(&self) -> Option<u64> {
        match self {
            Context::CharZero { .. } => None,
            Context::Finite(s) => Some(s.q()),
        }
    }

    pub fn setup(&self) -> Option<&FieldSetup> {
        match self {
            Context::CharZero { .. } => None,
            Context::Finite(s) => Some(s),
        }
    }

    /// `"char 0"` or `"F_{q^r}"` spelled as `F_q^r`.
    pub fn label(&self) -> String {
        match self {
            Context::CharZero { .. } => "char 0".to_string(),
            Context::Finite(s) => format!("F_{}^{}", s.q(), s.r()),
        }
    }

    /// Multipliers `l` for which `B ↦ l·B` preserves vanishing.
    pub fn scaling_group(&self) -> Vec<usize> {
        match self {
            Context::CharZero { p } => (1..*p).collect(),
            Context::Finite(s) => coset_table(s.p(), s.q()).expect("valid field").subgroup().to_vec(),
        }
    }

    /// Whether `α_B(s_A)` vanishes at `ω`.
    pub fn spec_vanishes(&self, spec: &SchurSpec) -> bool {
        match self {
            Context::CharZero { .. } => spec.as_cyclo().is_zero_mod_phi(),
            Context::Finite(s) => s.eval_residues(&spec.residues(s.q())).is_zero(),
        }
    }
}

pub fn minor_vanishes(ctx: &Context, a: &IndexSet, b: &IndexSet) -> Result<bool> {
    if a.p() != ctx.p() || b.p() != ctx.p() {
        return Err(Error::InvalidIndexSet(format!("index sets must live in Z_{}", ctx.p())));
    }
    Ok(ctx.spec_vanishes(&jacobi_trudi_spec(a, b)?))
}

/// The full matrix `(ω^{jm})` over `F_{q^r}`.
pub fn fourier_matrix(setup: &FieldSetup) -> Vec<Vec<FqExtElem>> {
    let p = setup.p();
    (0..p).map(|j| (0..p).map(|m| setup.omega_pow(j * m % p).clone()).collect()).collect()
}

/// Entries of `F_p` as elements of `F_q`, available when `r = 1`.
pub fn prime_field_matrix(setup: &FieldSetup) -> Result<Vec<Vec<FqElem>>> {
    let omega = setup.omega().as_base().ok_or(Error::NotPrimeField {
        p: setup.p() as u64,
        q: setup.q(),
        r: setup.r() as u64,
    })?;
    let p = setup.p();
    Ok((0..p)
        .map(|j| (0..p).map(|m| pow_mod(omega, (j * m % p) as u64, setup.q())).collect())
        .collect())
}

/// `F_p[A, B]` over `F_{q^r}`.
pub fn fourier_submatrix(setup: &FieldSetup, a: &IndexSet, b: &IndexSet) -> Result<Vec<Vec<FqExtElem>>> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { rows: a.len(), cols: b.len() });
    }
    let p = setup.p();
    Ok(a.elems()
        .iter()
        .map(|&j| b.elems().iter().map(|&m| setup.omega_pow(j * m % p).clone()).collect())
        .collect())
}

/// Determinant by Gaussian elimination over `F_{q^r}`.
pub fn det_over_field(m: Vec<Vec<FqExtElem>>) -> Result<FqExtElem> {
    det_gauss(m)
}

/// `det F_p[A, B]` computed directly, independent of the Schur route.
pub fn minor_det(setup: &FieldSetup, a: &IndexSet, b: &IndexSet) -> Result<FqExtElem> {
    det_over_field(fourier_submatrix(setup, a, b)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Outcome of an exhaustive minor check.
#[derive(Debug, Clone, Serialize)]
pub struct MinorReport {
    pub p: usize,
    pub q: Option<u64>,
    pub field: String,
    pub matrix: String,
    pub verified: bool,
    pub first_violation: Option<Violation>,
    /// Number of square minors with `1 ≤ k` (all of them).
    pub raw_minors: u64,
    /// Minors settled, counting every member of each representative's orbit,
    /// up to and including the first violation.
    pub minors_checked: u64,
    /// Representatives actually evaluated.
    pub pairs_evaluated: u64,
    /// `minors_checked − pairs_evaluated`.
    pub orbits_pruned: u64,
    pub elapsed_s: f64,
}

impl MinorReport {
    /// Report for a search that evaluated every minor, with coverage
    /// `coverage[i]` for the `i`-th item and first failing item `failed`.
    pub(crate) fn from_scan(
        p: usize,
        q: Option<u64>,
        field: String,
        matrix: String,
        coverage: &[u64],
        failed: Option<(usize, Violation)>,
        start: Instant,
    ) -> Self {
        let upto = failed.as_ref().map_or(coverage.len(), |(i, _)| i + 1);
        let minors_checked: u64 = coverage[..upto].iter().sum();
        MinorReport {
            p,
            q,
            field,
            matrix,
            verified: failed.is_none(),
            first_violation: failed.map(|(_, v)| v),
            raw_minors: coverage.iter().sum(),
            minors_checked,
            pairs_evaluated: upto as u64,
            orbits_pruned: minors_checked - upto as u64,
            elapsed_s: start.elapsed().as_secs_f64(),
        }
    }
}

pub(crate) fn check_limit(p: usize, opts: &RunOptions, routine: usize, extended: usize) -> Result<()> {
    if opts.force || p <= routine || (opts.extended && p <= extended) {
        return Ok(());
    }
    let (limit, mode) = if opts.extended { (extended, "extended") } else { (routine, "routine") };
    Err(Error::LimitExceeded { p: p as u64, limit: limit as u64, mode })
}

struct WorkItem {
    a: IndexSet,
    b: IndexSet,
    coverage: u64,
}

/// Checks every square minor of `F_p`, including the full determinant.
///
/// Pairs are enumerated by `(k, A, B)` with `A` a translation-orbit
/// representative and `B` a representative under translation and Galois
/// scaling; the reported violation is the first such pair in this order,
/// independent of the thread count.
pub fn verify_all_minors(ctx: &Context, opts: &RunOptions) -> Result<MinorReport> {
    let start = Instant::now();
    let p = ctx.p();
    check_limit(p, opts, ROUTINE_LIMIT, EXTENDED_LIMIT)?;
    let group = ctx.scaling_group();
    let mut items = Vec::new();
    for k in 1..=p {
        let a_reps = translation_reps(p, k);
        let b_reps = affine_reps(p, k, &group);
        for ra in &a_reps {
            for rb in &b_reps {
                items.push(WorkItem {
                    a: IndexSet::from_mask(p, ra.mask),
                    b: IndexSet::from_mask(p, rb.mask),
                    coverage: ra.orbit_size * rb.orbit_size,
                });
            }
        }
    }
    let hit = opts.install(|| {
        items.par_iter().position_first(|it| {
            let spec = jacobi_trudi_spec(&it.a, &it.b).expect("equal sizes");
            ctx.spec_vanishes(&spec)
        })
    });
    let coverage: Vec<u64> = items.iter().map(|it| it.coverage).collect();
    let failed = hit.map(|i| (i, Violation { rows: items[i].a.elems().to_vec(), cols: items[i].b.elems().to_vec() }));
    Ok(MinorReport::from_scan(p, ctx.q(), ctx.label(), "F_p".into(), &coverage, failed, start))
}

/// Brute-force minimum of `‖g‖₀ + ‖F_p g‖₀` over nonzero `g ∈ F_q^p`.
#[derive(Debug, Clone, Serialize)]
pub struct UncertaintyReport {
    pub p: usize,
    pub q: u64,
    pub omega: FqElem,
    pub min: usize,
    /// First minimizer in the scan order (coordinates as base-`q` digits of
    /// the scan index, least significant first).
    pub witness: Vec<FqElem>,
    pub vectors_scanned: u64,
    pub elapsed_s: f64,
}

pub fn uncertainty_min(setup: &FieldSetup, budget: u64) -> Result<UncertaintyReport> {
    let start = Instant::now();
    let matrix = prime_field_matrix(setup)?;
    let (p, q) = (setup.p(), setup.q());
    let total = (q as u128).checked_pow(p as u32).map(|n| n - 1);
    let total = match total {
        Some(n) if n <= budget as u128 => n as u64,
        _ => {
            return Err(Error::BudgetExceeded {
                estimate: total.unwrap_or(u128::MAX),
                budget: budget as u128,
            })
        }
    };
    let mut g = vec![0u64; p];
    let mut best = (usize::MAX, Vec::new());
    for _ in 0..total {
        for x in g.iter_mut() {
            *x += 1;
            if *x < q {
                break;
            }
            *x = 0;
        }
        let support = g.iter().filter(|&&x| x != 0).count();
        if support >= best.0 {
            continue;
        }
        let image = matrix
            .iter()
            .filter(|row| row.iter().zip(&g).fold(0u64, |acc, (m, x)| (acc + m * x) % q) != 0)
            .count();
        if support + image < best.0 {
            best = (support + image, g.clone());
        }
    }
    Ok(UncertaintyReport {
        p,
        q,
        omega: matrix[1][1],
        min: best.0,
        witness: best.1,
        vectors_scanned: total,
        elapsed_s: start.elapsed().as_secs_f64(),
    })
}

/// `Σ_{k=1}^{p} C(p, k)^2 = C(2p, p) − 1`.
pub fn raw_minor_count(p: usize) -> u128 {
    enumerate::binomial(2 * p as u64, p as u64) - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::primes::is_prime;
    use proptest::prelude::*;

    fn set(p: usize, e: &[usize]) -> IndexSet {
        IndexSet::new(p, e.to_vec()).unwrap()
    }

    #[test]
    fn example_matrix_over_f11() {
        let s = FieldSetup::with_modulus_str(5, 11, "X - 3").unwrap();
        let m = prime_field_matrix(&s).unwrap();
        assert_eq!(m[1], vec![1, 3, 9, 5, 4]);
        assert!(!det_over_field(fourier_matrix(&s)).unwrap().is_zero());
        assert!(prime_field_matrix(&FieldSetup::build(7, 2).unwrap()).is_err());
    }

    #[test]
    fn identity_determinant() {
        let s = FieldSetup::build(7, 2).unwrap();
        let f = s.field();
        let id: Vec<Vec<FqExtElem>> =
            (0..4).map(|i| (0..4).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        assert!(det_over_field(id).unwrap().is_one());
    }

    #[test]
    fn gauss_matches_leibniz_over_f8() {
        let s = FieldSetup::build(7, 2).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        for _ in 0..50 {
            let m: Vec<Vec<FqExtElem>> =
                (0..3).map(|_| (0..3).map(|_| s.field().random(&mut rng)).collect()).collect();
            let leibniz = [(0, 1, 2, true), (1, 2, 0, true), (2, 0, 1, true), (0, 2, 1, false), (2, 1, 0, false), (1, 0, 2, false)]
                .iter()
                .fold(s.field().zero(), |acc, &(i, j, k, even)| {
                    let t = &(&m[0][i] * &m[1][j]) * &m[2][k];
                    if even { &acc + &t } else { &acc - &t }
                });
            assert_eq!(det_over_field(m).unwrap(), leibniz);
        }
    }

    #[test]
    fn small_char_zero_runs() {
        for p in [2usize, 3, 5, 7] {
            let r = verify_all_minors(&Context::char_zero(p).unwrap(), &RunOptions::default()).unwrap();
            assert!(r.verified, "p = {p}");
            assert_eq!(r.raw_minors as u128, raw_minor_count(p));
            assert_eq!(r.minors_checked, r.raw_minors);
        }
        assert_eq!(raw_minor_count(7), 3431);
    }

    #[test]
    fn finite_field_runs() {
        let r = verify_all_minors(&Context::finite(7, 17).unwrap(), &RunOptions::default()).unwrap();
        assert!(r.verified);
        let r = verify_all_minors(&Context::finite(7, 2).unwrap(), &RunOptions::default()).unwrap();
        assert!(!r.verified);
        let v = r.first_violation.unwrap();
        let s = FieldSetup::build(7, 2).unwrap();
        assert!(minor_det(&s, &set(7, &v.rows), &set(7, &v.cols)).unwrap().is_zero());
    }

    #[test]
    fn limits() {
        let ctx = Context::char_zero(17).unwrap();
        assert!(matches!(
            verify_all_minors(&ctx, &RunOptions::default()),
            Err(Error::LimitExceeded { p: 17, limit: 11, .. })
        ));
        assert!(Context::char_zero(9).is_err());
    }

    #[test]
    fn uncertainty_small() {
        let s = FieldSetup::build(3, 7).unwrap();
        let r = uncertainty_min(&s, UNCERTAINTY_BUDGET).unwrap();
        assert_eq!(r.min, 4);
        assert_eq!(r.witness, vec![1, 0, 0]);
        assert!(matches!(uncertainty_min(&s, 10), Err(Error::BudgetExceeded { .. })));
    }

    fn arb_instance() -> impl Strategy<Value = (usize, u64, IndexSet, IndexSet)> {
        let pairs = vec![(5usize, 2u64), (5, 11), (5, 3), (7, 2), (7, 3), (7, 11), (7, 13), (5, 19)];
        prop::sample::select(pairs).prop_flat_map(|(p, q)| {
            (1..=p).prop_flat_map(move |k| {
                let all: Vec<usize> = (0..p).collect();
                (prop::sample::subsequence(all.clone(), k), prop::sample::subsequence(all, k)).prop_map(
                    move |(a, b)| (p, q, IndexSet::new(p, a).unwrap(), IndexSet::new(p, b).unwrap()),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn schur_route_matches_elimination((p, q, a, b) in arb_instance()) {
            prop_assume!(is_prime(q));
            let s = FieldSetup::build(p, q).unwrap();
            let ctx = Context::Finite(s.clone());
            prop_assert_eq!(minor_vanishes(&ctx, &a, &b).unwrap(), minor_det(&s, &a, &b).unwrap().is_zero());
        }

        #[test]
        fn vanishing_is_symmetric_and_invariant((p, q, a, b) in arb_instance(), c in 0usize..13) {
            let ctx = Context::finite(p, q).unwrap();
            let v = minor_vanishes(&ctx, &a, &b).unwrap();
            prop_assert_eq!(minor_vanishes(&ctx, &b, &a).unwrap(), v);
            prop_assert_eq!(minor_vanishes(&ctx, &a.translated(c), &b).unwrap(), v);
            prop_assert_eq!(minor_vanishes(&ctx, &a, &b.translated(c)).unwrap(), v);
            prop_assert_eq!(minor_vanishes(&ctx, &a, &b.scaled(q as usize % p)).unwrap(), v);
        }
    }
}
