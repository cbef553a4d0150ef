//! The real subfield `Q(2cos(2π/p)) = Q[X]/P(X)`.
//!
//! `P` is the minimal polynomial of `2cos(2π/p)`, of degree `n = (p−1)/2`.
//! The polynomials `φ_0 = 2`, `φ_1 = X`, `φ_j = X·φ_{j−1} − φ_{j−2}` satisfy
//! `φ_j(ω + ω^{−1}) = ω^j + ω^{−j}`, so `φ_j(X) mod P` represents
//! `2cos(2πj/p)`. Minors of the matrices built from these nodes are decided
//! exactly by Gaussian elimination in `Q[X]/P`.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{binomial, k_subsets};
use crate::minors::{check_limit, MinorReport, Violation};
use crate::rings::linalg::det_gauss;
use crate::rings::numfield::{NumFieldElem, NumberField};
use crate::rings::poly::{DensePoly, Integers, PolyRing, Rationals};
use crate::rings::primes::require_prime;
use crate::{Error, Result, RunOptions};

/// Largest `p` for the exhaustive real checks without `extended`.
pub const ROUTINE_LIMIT: usize = 17;
/// Largest `p` with `extended`.
pub const EXTENDED_LIMIT: usize = 23;

fn require_odd_prime(p: usize) -> Result<()> {
    require_prime(p as u64)?;
    if p == 2 {
        return Err(Error::NotOddPrime(2));
    }
    Ok(())
}

/// Index reduction `m ↦ min(m mod p, p − m mod p)`, using `cos(2π(p−m)/p) = cos(2πm/p)`.
pub fn fold(m: usize, p: usize) -> usize {
    let m = m % p;
    m.min(p - m)
}

/// `Σ_{k ≤ n/2} (−1)^k C(n−k, k) X^{n−2k} + Σ_{k < n/2} (−1)^k C(n−k−1, k) X^{n−2k−1}`.
pub fn cosine_minpoly(p: usize) -> Result<DensePoly<BigInt>> {
    require_odd_prime(p)?;
    let n = (p - 1) / 2;
    let mut c = vec![BigInt::zero(); n + 1];
    let sign = |k: usize| if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    for k in 0..=n / 2 {
        c[n - 2 * k] += sign(k) * BigInt::from(binomial((n - k) as u64, k as u64));
    }
    for k in (0..n).take_while(|&k| 2 * k < n) {
        c[n - 2 * k - 1] += sign(k) * BigInt::from(binomial((n - k - 1) as u64, k as u64));
    }
    Ok(PolyRing::new(Integers).from_coeffs(c))
}

/// Chebyshev polynomial `T_n` from `T_0 = 1`, `T_1 = x`, `T_j = 2x·T_{j−1} − T_{j−2}`.
pub fn chebyshev_t(n: usize) -> DensePoly<BigInt> {
    let zz = PolyRing::new(Integers);
    let two_x = zz.from_i64s(&[0, 2]);
    let (mut prev, mut cur) = (zz.one(), zz.x());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = zz.sub(&zz.mul(&two_x, &cur), &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn to_rational(f: &DensePoly<BigInt>) -> DensePoly<BigRational> {
    PolyRing::new(Rationals).from_coeffs(f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

/// Exact check of `2(T_p(X/2) − 1) = P(X)^2·(X − 2)`.
pub fn chebyshev_identity_check(p: usize) -> Result<bool> {
    let qq = PolyRing::new(Rationals);
    let pm = to_rational(&cosine_minpoly(p)?);
    let half_x = qq.scale(&qq.x(), &BigRational::new(1.into(), 2.into()));
    let t = qq.compose(&to_rational(&chebyshev_t(p)), &half_x);
    let lhs = qq.scale(&qq.sub(&t, &qq.one()), &BigRational::from_integer(2.into()));
    let rhs = qq.mul(&qq.mul(&pm, &pm), &qq.from_i64s(&[-2, 1]));
    Ok(lhs == rhs)
}

/// `φ_0, φ_1, …, φ_m` as integer polynomials, unreduced.
pub fn phi_polys(m: usize) -> Vec<DensePoly<BigInt>> {
    let zz = PolyRing::new(Integers);
    let mut out = vec![zz.constant(BigInt::from(2)), zz.x()];
    for j in 2..=m {
        let next = zz.sub(&zz.mul(&zz.x(), &out[j - 1]), &out[j - 2]);
        out.push(next);
    }
    out.truncate(m + 1);
    out
}

/// `φ_1, …, φ_n` reduced mod `P`, `n = (p−1)/2`, as integer polynomials.
pub fn phi_sequence(p: usize) -> Result<Vec<DensePoly<BigInt>>> {
    let field = CosineField::new(p)?;
    Ok((1..=field.n()).map(|j| field.phi_poly(j)).collect())
}

/// `Q[X]/P` together with the node representatives `φ_j mod P`.
#[derive(Clone, Debug)]
pub struct CosineField {
    p: usize,
    minpoly: DensePoly<BigInt>,
    field: Arc<NumberField>,
    /// `nodes[j] = φ_j mod P` for `j = 0, …, n`.
    nodes: Vec<NumFieldElem>,
}

impl CosineField {
    pub fn new(p: usize) -> Result<Self> {
        let minpoly = cosine_minpoly(p)?;
        let field = NumberField::new(to_rational(&minpoly))?;
        let n = (p - 1) / 2;
        let nodes = phi_polys(n).iter().map(|f| field.from_poly(&to_rational(f))).collect();
        Ok(CosineField { p, minpoly, field, nodes })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `(p − 1)/2`.
    pub fn n(&self) -> usize {
        (self.p - 1) / 2
    }

    pub fn minpoly(&self) -> &DensePoly<BigInt> {
        &self.minpoly
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// `2cos(2πj/p)` as an element of the field; `j` is folded first.
    pub fn node(&self, j: usize) -> &NumFieldElem {
        &self.nodes[fold(j, self.p)]
    }

    /// `φ_j mod P` with integer coefficients.
    pub fn phi_poly(&self, j: usize) -> DensePoly<BigInt> {
        let coeffs = self.node(j).coeffs().iter().map(|c| c.to_integer()).collect();
        PolyRing::new(Integers).from_coeffs(coeffs)
    }

    /// `(φ_j^m)_{j,m=1..n}`: powers of the nodes `2cos(2πj/p)`.
    pub fn vandermonde(&self) -> Vec<Vec<NumFieldElem>> {
        let n = self.n();
        (1..=n).map(|j| (1..=n).map(|m| self.node(j).pow(m as u32)).collect()).collect()
    }

    /// `(φ_{fold(kj)})_{k,j=1..n}`: the cosine matrix `(2cos(2πkj/p))`.
    pub fn cosine_matrix(&self) -> Vec<Vec<NumFieldElem>> {
        let n = self.n();
        (1..=n).map(|k| (1..=n).map(|j| self.node(k * j).clone()).collect()).collect()
    }

    /// `2cos(2π/p)`.
    pub fn theta(&self) -> f64 {
        2.0 * (2.0 * std::f64::consts::PI / self.p as f64).cos()
    }
}

fn submatrix<T: Clone>(m: &[Vec<T>], rows: &[usize], cols: &[usize]) -> Vec<Vec<T>> {
    rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect()
}

/// Every square minor of an `n×n` matrix, in order `(k, rows, cols)` with
/// 0-based index lists.
fn all_minor_indices(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for k in 1..=n {
        let subsets: Vec<Vec<usize>> =
            k_subsets(n, k).into_iter().map(crate::enumerate::from_mask).collect();
        for r in &subsets {
            for c in &subsets {
                out.push((r.clone(), c.clone()));
            }
        }
    }
    out
}

fn check_all_minors(
    field: &CosineField,
    matrix: Vec<Vec<NumFieldElem>>,
    label: &str,
    opts: &RunOptions,
    start: Instant,
) -> Result<MinorReport> {
    let indices = all_minor_indices(field.n());
    let hit = opts.install(|| {
        indices.par_iter().position_first(|(r, c)| {
            det_gauss(submatrix(&matrix, r, c)).map(|d| d.is_zero()).unwrap_or(true)
        })
    });
    let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect();
    let failed = hit.map(|i| (i, Violation { rows: one_based(&indices[i].0), cols: one_based(&indices[i].1) }));
    Ok(MinorReport::from_scan(
        field.p(),
        None,
        format!("Q(2cos(2pi/{}))", field.p()),
        label.to_string(),
        &vec![1; indices.len()],
        failed,
        start,
    ))
}

/// All minors of `(2cos(2πj/p))^m`, `j, m = 1..n`. Violations are reported
/// with 1-based indices.
pub fn verify_real_minors(p: usize, opts: &RunOptions) -> Result<MinorReport> {
    let start = Instant::now();
    require_odd_prime(p)?;
    check_limit(p, opts, ROUTINE_LIMIT, EXTENDED_LIMIT)?;
    let field = CosineField::new(p)?;
    let m = field.vandermonde();
    check_all_minors(&field, m, "(2cos(2pi j/p))^m, j,m = 1..(p-1)/2", opts, start)
}

/// All minors of `(2cos(2πkj/p))`, `k, j = 1..n`.
pub fn verify_dct_minors(p: usize, opts: &RunOptions) -> Result<MinorReport> {
    let start = Instant::now();
    require_odd_prime(p)?;
    check_limit(p, opts, ROUTINE_LIMIT, EXTENDED_LIMIT)?;
    let field = CosineField::new(p)?;
    let m = field.cosine_matrix();
    check_all_minors(&field, m, "2cos(2pi kj/p), k,j = 1..(p-1)/2", opts, start)
}

/// Determinant of a small real matrix by partial-pivot elimination.
fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("nonempty range");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    det
}

/// Smallest `|det|` over all square minors, evaluated in `f64` at the real
/// nodes. A screen only; exact results come from the field computations.
pub fn min_abs_minor_f64(matrix: &[Vec<NumFieldElem>], theta: f64) -> f64 {
    let real: Vec<Vec<f64>> = matrix.iter().map(|row| row.iter().map(|e| e.eval_f64(theta)).collect()).collect();
    all_minor_indices(real.len())
        .iter()
        .map(|(r, c)| det_f64(submatrix(&real, r, c)).abs())
        .fold(f64::INFINITY, f64::min)
}

/// Structural identities of the cosine field for one `p`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealIdentityReport {
    pub p: usize,
    pub minpoly: String,
    /// `P(2)`, expected to equal `p`.
    pub minpoly_at_2: String,
    pub chebyshev_identity: bool,
    /// `φ_j(2) = 2` for `j = 1..n`.
    pub phi_fixed_point: bool,
    /// `φ_j ∘ φ_k ≡ φ_{fold(jk)} mod P` for all `j, k = 1..n`.
    pub composition_law: bool,
    /// `|P(2cos(2π/p))|` in `f64`.
    pub root_residual: f64,
}

impl RealIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.minpoly_at_2 == self.p.to_string() && self.chebyshev_identity && self.phi_fixed_point && self.composition_law
    }
}

pub fn real_identities(p: usize) -> Result<RealIdentityReport> {
    let field = CosineField::new(p)?;
    let zz = PolyRing::new(Integers);
    let n = field.n();
    let two = BigInt::from(2);
    let phis = phi_polys(n);
    let phi_fixed_point = phis.iter().all(|f| zz.eval(f, &two) == two);
    let two_elem = field.field().from_rational(BigRational::from_integer(two.clone()));
    let composition_law = (1..=n).all(|k| {
        let y = field.node(k);
        let (mut prev, mut cur) = (two_elem.clone(), y.clone());
        (1..=n).all(|j| {
            if j > 1 {
                let next = &(y * &cur) - &prev;
                prev = std::mem::replace(&mut cur, next);
            }
            cur == *field.node(j * k)
        })
    });
    let theta = field.theta();
    let root_residual =
        field.minpoly().coeffs().iter().rev().fold(0.0, |acc, c| acc * theta + c.to_string().parse::<f64>().unwrap_or(f64::NAN)).abs();
    Ok(RealIdentityReport {
        p,
        minpoly: field.minpoly().to_string(),
        minpoly_at_2: zz.eval(field.minpoly(), &two).to_string(),
        chebyshev_identity: chebyshev_identity_check(p)?,
        phi_fixed_point,
        composition_law,
        root_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::primes::is_prime;

    fn ints(v: &[i64]) -> DensePoly<BigInt> {
        PolyRing::new(Integers).from_i64s(v)
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(cosine_minpoly(3).unwrap(), ints(&[1, 1]));
        assert_eq!(cosine_minpoly(5).unwrap(), ints(&[-1, 1, 1]));
        assert_eq!(cosine_minpoly(7).unwrap(), ints(&[-1, -2, 1, 1]));
        assert_eq!(cosine_minpoly(2).unwrap_err(), Error::NotOddPrime(2));
        for p in [5usize, 7, 11, 13] {
            let f = cosine_minpoly(p).unwrap();
            let x = 2.0 * (2.0 * std::f64::consts::PI / p as f64).cos();
            let v = f.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c.to_string().parse::<f64>().unwrap());
            assert!(v.abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn chebyshev() {
        assert_eq!(chebyshev_t(3), ints(&[0, -3, 0, 4]));
        for p in [3usize, 5, 7] {
            assert!(chebyshev_identity_check(p).unwrap());
        }
    }

    #[test]
    fn value_at_two_and_identity_up_to_101() {
        let zz = PolyRing::new(Integers);
        for p in (3..=101usize).filter(|&p| is_prime(p as u64)) {
            assert_eq!(zz.eval(&cosine_minpoly(p).unwrap(), &BigInt::from(2)), BigInt::from(p), "p = {p}");
            assert!(chebyshev_identity_check(p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn phi_recursion() {
        let phis = phi_polys(3);
        assert_eq!(phis[2], ints(&[-2, 0, 1]));
        assert_eq!(phis[3], ints(&[0, -3, 0, 1]));
        let f = CosineField::new(7).unwrap();
        let theta = 2.0 * std::f64::consts::PI / 7.0;
        let v = f.node(3).eval_f64(f.theta());
        assert!((v - 2.0 * (3.0 * theta).cos()).abs() < 1e-12);
        assert_eq!(phi_sequence(7).unwrap().len(), 3);
    }

    #[test]
    fn folding() {
        assert_eq!(fold(6, 7), 1);
        assert_eq!(fold(12, 7), 2);
        assert_eq!(fold(3, 7), 3);
        assert_eq!(fold(7, 7), 0);
    }

    #[test]
    fn identities_hold() {
        for p in [5usize, 7, 11, 13] {
            let r = real_identities(p).unwrap();
            assert!(r.all_hold(), "{r:?}");
            assert!(r.root_residual < 1e-10);
        }
    }

    #[test]
    fn small_minor_checks() {
        let opts = RunOptions::default();
        for p in [3usize, 5, 7] {
            let r = verify_real_minors(p, &opts).unwrap();
            assert!(r.verified);
            let n = (p - 1) / 2;
            assert_eq!(r.raw_minors as u128, binomial(2 * n as u64, n as u64) - 1);
            assert!(verify_dct_minors(p, &opts).unwrap().verified);
        }
        assert_eq!(verify_real_minors(5, &opts).unwrap().raw_minors, 5);
    }

    #[test]
    fn float_screen_agrees() {
        for p in [5usize, 7, 11, 13] {
            let f = CosineField::new(p).unwrap();
            assert!(min_abs_minor_f64(&f.vandermonde(), f.theta()) > 1e-8);
            assert!(min_abs_minor_f64(&f.cosine_matrix(), f.theta()) > 1e-8);
        }
    }
}
