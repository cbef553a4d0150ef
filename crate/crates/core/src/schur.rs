//! Schur polynomials of index sets and their specialization at roots of unity.
//!
//! An index set `A = {a_1 < … < a_k}` determines the partition
//! `λ_i = a_{k+1−i} − (k − i)`, and `s_A = s_λ = det(x_j^{a_i}) / det(x_j^{i−1})`.
//! For a column set `B = {b_1 < … < b_k}` the substitution `x_l ↦ X^{b_l}`
//! turns `s_A` into a polynomial whose residue mod `X^p − 1` is a
//! [`SchurSpec`]: entry `t` collects the coefficients `c_μ` of all monomials
//! with `⟨μ, B⟩ ≡ t (mod p)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::cyclo_factor::CosetTable;
use crate::enumerate::{self, Mask, MAX_P};
use crate::rings::cyclo::CycloVec;
use crate::rings::primes::inv_mod;
use crate::{Error, Result};

/// Default number of monomial instances [`ssyt_expand`] may produce.
pub const DEFAULT_EXPANSION_CAP: u64 = 1_000_000;

/// A nonempty subset of `{0, …, p−1}`, kept in ascending order.
///
/// Sets are ordered first by size, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    p: usize,
    elems: Vec<usize>,
}

impl IndexSet {
    /// Sorts `elems`; rejects empty sets, duplicates and elements `≥ p`.
    pub fn new(p: usize, mut elems: Vec<usize>) -> Result<Self> {
        if p == 0 || p > MAX_P {
            return Err(Error::InvalidIndexSet(format!("modulus {p} outside 1..={MAX_P}")));
        }
        elems.sort_unstable();
        if elems.is_empty() {
            return Err(Error::InvalidIndexSet("index sets must be nonempty".into()));
        }
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("repeated element in {elems:?}")));
        }
        if let Some(&e) = elems.iter().find(|&&e| e >= p) {
            return Err(Error::InvalidIndexSet(format!("element {e} is not below {p}")));
        }
        Ok(IndexSet { p, elems })
    }

    pub fn from_mask(p: usize, mask: Mask) -> Self {
        assert!(mask != 0 && mask >> p == 0, "mask must describe a nonempty subset of 0..p");
        IndexSet { p, elems: enumerate::from_mask(mask) }
    }

    /// `{0, 1, …, k − 1}`.
    pub fn initial(p: usize, k: usize) -> Self {
        assert!(0 < k && k <= p);
        IndexSet { p, elems: (0..k).collect() }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn mask(&self) -> Mask {
        enumerate::to_mask(&self.elems)
    }

    /// `l·A mod p`, re-sorted.
    pub fn scaled(&self, l: usize) -> Self {
        assert!(l % self.p != 0 || self.p == 1, "scaling factor must be a unit");
        Self::from_mask(self.p, enumerate::affine_image(self.mask(), l % self.p, 0, self.p))
    }

    /// `A + c mod p`, re-sorted.
    pub fn translated(&self, c: usize) -> Self {
        Self::from_mask(self.p, enumerate::affine_image(self.mask(), 1, c % self.p, self.p))
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), &self.elems).cmp(&(other.len(), &other.elems))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}

/// A weakly decreasing sequence of nonnegative parts (zeros kept).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidIndexSet(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `|λ|`, the degree of `s_λ`.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().take_while(|&&x| x > 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.length() == 0
    }

    /// Conjugate partition, nonzero parts only.
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&x| x >= j).count()).collect())
    }
}

pub fn partition_of(a: &IndexSet) -> Partition {
    let k = a.len();
    Partition((1..=k).map(|i| a.elems[k - i] - (k - i)).collect())
}

/// `s_A(1, …, 1) = ∏_{i<j} (a_j − a_i) / ∏_{i<j} (j − i)`.
pub fn schur_eval_ones(a: &IndexSet) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..a.len() {
        for i in 0..j {
            num *= a.elems[j] - a.elems[i];
            den *= j - i;
        }
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Monomial expansion `s_A = Σ c_μ x^μ` by enumerating semistandard tableaux
/// of shape `partition_of(A)` with entries `1..=k`.
pub fn ssyt_expand(a: &IndexSet, cap: u64) -> Result<BTreeMap<Vec<usize>, u64>> {
    let total = schur_eval_ones(a);
    if total > BigInt::from(cap) {
        return Err(Error::ExpansionCap { needed: total.to_string(), cap });
    }
    let k = a.len();
    let shape: Vec<usize> = partition_of(a).0.into_iter().filter(|&x| x > 0).collect();
    let cols = Partition(shape.clone()).conjugate().0;
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(i, &len)| (0..len).map(move |j| (i, j))).collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut content = vec![0usize; k];
    let mut out = BTreeMap::new();
    fill(&cells, 0, k, &cols, &mut grid, &mut content, &mut out);
    Ok(out)
}

fn fill(
    cells: &[(usize, usize)],
    idx: usize,
    k: usize,
    cols: &[usize],
    grid: &mut [Vec<usize>],
    content: &mut [usize],
    out: &mut BTreeMap<Vec<usize>, u64>,
) {
    let Some(&(i, j)) = cells.get(idx) else {
        *out.entry(content.to_vec()).or_insert(0) += 1;
        return;
    };
    let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
    let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
    let hi = k - (cols[j] - 1 - i);
    for v in lo_row.max(lo_col)..=hi {
        grid[i][j] = v;
        content[v - 1] += 1;
        fill(cells, idx + 1, k, cols, grid, content, out);
        content[v - 1] -= 1;
    }
}

/// `α_B(s_A) mod (X^p − 1)` as a residue-indexed coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SchurSpec {
    weight: usize,
    vec: CycloVec,
}

impl SchurSpec {
    fn from_vec(weight: usize, vec: CycloVec) -> Self {
        SchurSpec { weight, vec }
    }

    pub fn p(&self) -> usize {
        self.vec.p()
    }

    /// Degree `|λ|` of the underlying Schur polynomial.
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.vec.coeffs()
    }

    /// `m_{A,B} = c[0]`.
    pub fn m_count(&self) -> &BigInt {
        &self.vec.coeffs()[0]
    }

    /// `Σ_t c[t] = s_A(1, …, 1)`.
    pub fn total(&self) -> BigInt {
        self.vec.augmentation()
    }

    /// Spectrum for the column set `l·B`.
    pub fn relabel(&self, l: usize) -> SchurSpec {
        Self::from_vec(self.weight, self.vec.relabel(l))
    }

    /// Spectrum for the column set `B + c`.
    pub fn translate(&self, c: usize) -> SchurSpec {
        let p = self.p();
        Self::from_vec(self.weight, self.vec.shift(c % p * (self.weight % p) % p))
    }

    /// `m_{A, l·B + c}` without building the relabeled vector.
    pub fn m_count_affine(&self, l: usize, c: usize) -> &BigInt {
        let p = self.p();
        let shift = c % p * (self.weight % p) % p;
        let t = (p - shift) % p * inv_mod(l as u64 % p as u64, p as u64) as usize % p;
        &self.vec.coeffs()[t]
    }

    pub fn as_cyclo(&self) -> &CycloVec {
        &self.vec
    }

    pub fn into_cyclo(self) -> CycloVec {
        self.vec
    }

    /// Entries reduced mod `q`.
    pub fn residues(&self, q: u64) -> Vec<u64> {
        let qb = BigInt::from(q);
        self.coeffs()
            .iter()
            .map(|c| (c % &qb).to_u64().expect("nonnegative residue"))
            .collect()
    }

    /// `m^{(n)}_{A,B} = Σ_{t ∈ n·⟨q⟩} c[t]` for each coset representative `n`.
    pub fn coset_counts(&self, cosets: &CosetTable) -> BTreeMap<usize, BigInt> {
        assert_eq!(cosets.p, self.p(), "coset table for a different p");
        cosets
            .reps
            .iter()
            .zip(&cosets.cosets)
            .map(|(&n, coset)| (n, coset.iter().map(|&t| &self.coeffs()[t]).sum()))
            .collect()
    }
}

/// Pushes a monomial expansion through `x_l ↦ X^{b_l}` modulo `X^p − 1`.
pub fn spec_from_expansion(expansion: &BTreeMap<Vec<usize>, u64>, a: &IndexSet, b: &IndexSet) -> SchurSpec {
    let p = b.p();
    let mut c = vec![BigInt::zero(); p];
    for (mu, &coef) in expansion {
        let t = mu.iter().zip(&b.elems).map(|(m, bl)| m * bl).sum::<usize>() % p;
        c[t] += coef;
    }
    SchurSpec::from_vec(partition_of(a).weight(), CycloVec::from_coeffs(c))
}

fn check_pair(a: &IndexSet, b: &IndexSet) -> Result<()> {
    if a.p != b.p {
        return Err(Error::InvalidIndexSet(format!("index sets over different moduli {} and {}", a.p, b.p)));
    }
    if a.len() != b.len() {
        return Err(Error::SizeMismatch { rows: a.len(), cols: b.len() });
    }
    Ok(())
}

/// `α_B(s_A) mod (X^p − 1)` through the Jacobi–Trudi determinant.
///
/// Uses `det(h_{λ_i − i + j})` or its dual `det(e_{λ'_i − i + j})`, whichever
/// is smaller. Entries are computed by a residue dynamic program, and the
/// determinant is expanded division-free over `Z[X]/(X^p − 1)` in `i128`,
/// falling back to big integers on overflow.
pub fn jacobi_trudi_spec(a: &IndexSet, b: &IndexSet) -> Result<SchurSpec> {
    check_pair(a, b)?;
    let p = a.p;
    let lambda = partition_of(a);
    let weight = lambda.weight();
    if lambda.is_empty() {
        return Ok(SchurSpec::from_vec(0, CycloVec::one(p)));
    }
    if a.len() == 1 {
        let e = a.elems[0] * b.elems[0] % p;
        return Ok(SchurSpec::from_vec(weight, CycloVec::monomial(p, e, BigInt::one())));
    }
    let c = match jt_det::<i128>(&lambda, &b.elems, p) {
        Some(c) => c.into_iter().map(BigInt::from).collect(),
        None => jt_det::<BigInt>(&lambda, &b.elems, p).expect("big integers do not overflow"),
    };
    debug_assert!(c.iter().all(|x: &BigInt| !x.is_negative()));
    Ok(SchurSpec::from_vec(weight, CycloVec::from_coeffs(c)))
}

/// Coefficients for the exact determinant: machine integers with overflow
/// detection, or big integers.
trait Coef: Clone + Sized {
    fn czero() -> Self;
    fn cfrom(v: u64) -> Self;
    fn cis_zero(&self) -> bool;
    fn cadd(&self, o: &Self) -> Option<Self>;
    fn csub(&self, o: &Self) -> Option<Self>;
    fn cmul(&self, o: &Self) -> Option<Self>;
}

impl Coef for i128 {
    fn czero() -> Self {
        0
    }
    fn cfrom(v: u64) -> Self {
        v as i128
    }
    fn cis_zero(&self) -> bool {
        *self == 0
    }
    fn cadd(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

impl Coef for BigInt {
    fn czero() -> Self {
        Zero::zero()
    }
    fn cfrom(v: u64) -> Self {
        BigInt::from(v)
    }
    fn cis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cadd(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

type Cyc<C> = Vec<C>;

fn cyc_zero<C: Coef>(p: usize) -> Cyc<C> {
    vec![C::czero(); p]
}

fn cyc_one<C: Coef>(p: usize) -> Cyc<C> {
    let mut v = cyc_zero(p);
    v[0] = C::cfrom(1);
    v
}

fn cyc_add_assign<C: Coef>(acc: &mut Cyc<C>, x: &Cyc<C>) -> Option<()> {
    for (a, b) in acc.iter_mut().zip(x) {
        *a = a.cadd(b)?;
    }
    Some(())
}

fn cyc_sub_assign<C: Coef>(acc: &mut Cyc<C>, x: &Cyc<C>) -> Option<()> {
    for (a, b) in acc.iter_mut().zip(x) {
        *a = a.csub(b)?;
    }
    Some(())
}

fn cyc_neg<C: Coef>(x: &Cyc<C>) -> Option<Cyc<C>> {
    let mut out = cyc_zero(x.len());
    cyc_sub_assign(&mut out, x)?;
    Some(out)
}

fn cyc_mul<C: Coef>(x: &Cyc<C>, y: &Cyc<C>) -> Option<Cyc<C>> {
    let p = x.len();
    let mut out = cyc_zero::<C>(p);
    for (i, a) in x.iter().enumerate() {
        if a.cis_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if b.cis_zero() {
                continue;
            }
            let t = (i + j) % p;
            out[t] = out[t].cadd(&a.cmul(b)?)?;
        }
    }
    Some(out)
}

/// `h_n(X^{b_1}, …, X^{b_k})` (or `e_n` when `elementary`) for `n = 0..=nmax`.
fn symmetric_tables(b: &[usize], p: usize, nmax: usize, elementary: bool) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; p]; nmax + 1];
    t[0][0] = 1;
    for &bl in b {
        let step = bl % p;
        if elementary {
            for n in (1..=nmax).rev() {
                for r in 0..p {
                    t[n][(r + step) % p] += t[n - 1][r];
                }
            }
        } else {
            for n in 1..=nmax {
                for r in 0..p {
                    t[n][(r + step) % p] += t[n - 1][r];
                }
            }
        }
    }
    t
}

fn jt_det<C: Coef>(lambda: &Partition, b: &[usize], p: usize) -> Option<Vec<C>> {
    let h_len = lambda.length();
    let conj = lambda.conjugate();
    let (parts, elementary) = if conj.0.len() < h_len {
        (conj.0, true)
    } else {
        (lambda.0[..h_len].to_vec(), false)
    };
    let n = parts.len();
    let nmax = parts[0] + n;
    let tables: Vec<Cyc<C>> = symmetric_tables(b, p, nmax, elementary)
        .into_iter()
        .map(|row| row.into_iter().map(C::cfrom).collect())
        .collect();
    let matrix: Vec<Vec<Cyc<C>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let idx = parts[i] as isize - i as isize + j as isize;
                    if idx < 0 {
                        cyc_zero(p)
                    } else {
                        tables[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    if n <= LAPLACE_MAX {
        det_laplace(&matrix, p)
    } else {
        det_bird(&matrix, p)
    }
}

const LAPLACE_MAX: usize = 8;

/// Cofactor expansion with memoization over column subsets (`2^n` states).
fn det_laplace<C: Coef>(m: &[Vec<Cyc<C>>], p: usize) -> Option<Cyc<C>> {
    let n = m.len();
    let mut memo: HashMap<u32, Cyc<C>> = HashMap::new();
    memo.insert(0, cyc_one(p));
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for s in 0u32..(1 << n) {
        by_size[s.count_ones() as usize].push(s);
    }
    for size in 1..=n {
        let row = n - size;
        for &s in &by_size[size] {
            let mut acc = cyc_zero::<C>(p);
            let mut rest = s;
            let mut pos = 0;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let entry = &m[row][j];
                if entry.iter().any(|c| !c.cis_zero()) {
                    let minor = &memo[&(s & !(1 << j))];
                    let term = cyc_mul(entry, minor)?;
                    if pos % 2 == 0 {
                        cyc_add_assign(&mut acc, &term)?;
                    } else {
                        cyc_sub_assign(&mut acc, &term)?;
                    }
                }
                pos += 1;
            }
            memo.insert(s, acc);
        }
    }
    memo.remove(&((1u32 << n) - 1))
}

/// Bird's division-free determinant: `det M = (−1)^{n−1}·(F^{n−1}(M))_{11}`
/// where `F(X) = μ(X)·M` and `μ(X)` keeps the strict upper triangle of `X`
/// and puts `−Σ_{j>i} X_jj` on the diagonal.
fn det_bird<C: Coef>(m: &[Vec<Cyc<C>>], p: usize) -> Option<Cyc<C>> {
    let n = m.len();
    let mut x: Vec<Vec<Cyc<C>>> = m.to_vec();
    for _ in 1..n {
        let mut mu: Vec<Vec<Cyc<C>>> = vec![vec![cyc_zero(p); n]; n];
        let mut tail = cyc_zero::<C>(p);
        for i in (0..n).rev() {
            mu[i][i] = cyc_neg(&tail)?;
            cyc_add_assign(&mut tail, &x[i][i])?;
            for j in i + 1..n {
                mu[i][j] = x[i][j].clone();
            }
        }
        let mut next = vec![vec![cyc_zero::<C>(p); n]; n];
        for i in 0..n {
            for k in i..n {
                if mu[i][k].iter().all(|c| c.cis_zero()) {
                    continue;
                }
                for j in 0..n {
                    let term = cyc_mul(&mu[i][k], &m[k][j])?;
                    cyc_add_assign(&mut next[i][j], &term)?;
                }
            }
        }
        x = next;
    }
    let d = x.swap_remove(0).swap_remove(0);
    if n % 2 == 0 {
        cyc_neg(&d)
    } else {
        Some(d)
    }
}
