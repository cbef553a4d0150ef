//! Determinants over exact fields by Gaussian elimination.

use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

/// Field elements that carry their field with them.
pub trait FieldElement: Clone {
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Result<Self>;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// Whether both operands live in the same field.
    fn compatible(&self, other: &Self) -> bool;
}

/// Determinant of a nonempty square matrix.
///
/// Fails with [`Error::MixedModuli`] if the entries do not share a field and
/// with [`Error::SizeMismatch`] if the matrix is not square.
pub fn det_gauss<T>(mut m: Vec<Vec<T>>) -> Result<T>
where
    T: FieldElement,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T> + Neg<Output = T>,
{
    let n = m.len();
    let first = m
        .first()
        .and_then(|row| row.first())
        .cloned()
        .ok_or(Error::SizeMismatch { rows: 0, cols: 0 })?;
    for row in &m {
        if row.len() != n {
            return Err(Error::SizeMismatch { rows: n, cols: row.len() });
        }
        if row.iter().any(|e| !e.compatible(&first)) {
            return Err(Error::MixedModuli);
        }
    }
    let mut det = first.one_like();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(first.zero_like());
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -&det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inverse()?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    Ok(det)
}
