//! Subset enumeration and orbit representatives.
//!
//! Subsets of `{0, …, p−1}` are bit masks (`p ≤ 63`). Orbits are taken under
//! groups of affine maps `x ↦ l·x + c (mod p)` with `l` in a subgroup `H` of
//! `F_p^×`; the representative of an orbit is its lexicographically least
//! member (comparing ascending element lists).

use std::cmp::Ordering;
use std::collections::HashSet;

pub type Mask = u64;

pub const MAX_P: usize = 63;

pub fn to_mask(elems: &[usize]) -> Mask {
    elems.iter().fold(0, |m, &e| m | 1 << e)
}

pub fn from_mask(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Lexicographic order on ascending element lists of two equal-size sets.
pub fn lex_cmp(a: Mask, b: Mask) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        Ordering::Equal
    } else if a & (diff & diff.wrapping_neg()) != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// All `k`-subsets of `{0, …, p−1}` in lexicographic order.
pub fn k_subsets(p: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    if k > p {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(to_mask(&idx));
        let Some(i) = (0..k).rev().find(|&i| idx[i] < p - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Image of a set under `x ↦ l·x + c (mod p)`.
pub fn affine_image(m: Mask, l: usize, c: usize, p: usize) -> Mask {
    from_mask(m).into_iter().fold(0, |acc, x| acc | 1 << ((l * x + c) % p))
}

/// Orbit of `m` under `{x ↦ l·x + c : l ∈ mults, c ∈ Z_p}`.
pub fn affine_orbit(m: Mask, mults: &[usize], p: usize) -> Vec<Mask> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &l in mults {
        for c in 0..p {
            let img = affine_image(m, l, c, p);
            if seen.insert(img) {
                out.push(img);
            }
        }
    }
    out
}

/// A representative set together with the size of its orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitRep {
    pub mask: Mask,
    pub orbit_size: u64,
}

/// Representatives (lexicographically least members, in increasing order) of
/// the orbits of `k`-subsets under the affine group generated by `mults`.
pub fn affine_reps(p: usize, k: usize, mults: &[usize]) -> Vec<OrbitRep> {
    let mut seen: HashSet<Mask> = HashSet::new();
    let mut reps = Vec::new();
    for m in k_subsets(p, k) {
        if seen.contains(&m) {
            continue;
        }
        let orbit = affine_orbit(m, mults, p);
        let orbit_size = orbit.len() as u64;
        seen.extend(orbit);
        reps.push(OrbitRep { mask: m, orbit_size });
    }
    reps
}

/// Orbits under translations only.
pub fn translation_reps(p: usize, k: usize) -> Vec<OrbitRep> {
    affine_reps(p, k, &[1])
}

/// `C(n, k)` for small arguments.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
