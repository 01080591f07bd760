//! Exact positive-semidefiniteness of the two Hankel matrices of a prefix.
//!
//! A prefix `a₀…a_L` passes when `H⁰ = (a_{i+j})` and `H¹ = (a_{i+j+1})`,
//! at the largest sizes the prefix supports, are both PSD. PSD is decided
//! by symmetric Schur complementation in exact rationals: a negative pivot
//! fails; a zero pivot forces its remaining row to vanish, and is dropped.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::MomentPrefix;
use crate::error::{Error, Result};
use crate::numerics::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HankelKind {
    /// `(a_{i+j})`
    H0,
    /// `(a_{i+j+1})`
    H1,
}

/// A principal submatrix with negative determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelWitness {
    pub kind: HankelKind,
    /// Row/column indices of the submatrix inside the full Hankel matrix.
    pub indices: Vec<usize>,
    pub submatrix: Vec<Vec<Rational>>,
    pub determinant: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HankelVerdict {
    Consistent,
    Inconsistent(HankelWitness),
}

impl HankelVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, HankelVerdict::Consistent)
    }
}

fn hankel(values: &[Rational], shift: usize, size: usize) -> Vec<Vec<Rational>> {
    (0..size)
        .map(|i| (0..size).map(|j| values[i + j + shift].clone()).collect())
        .collect()
}

/// Returns `(indices, determinant)` of a principal submatrix with negative
/// determinant, or `None` if the matrix is PSD.
pub(crate) fn psd_violation(matrix: &[Vec<Rational>]) -> Option<(Vec<usize>, Rational)> {
    let n = matrix.len();
    let mut s: Vec<Vec<Rational>> = matrix.to_vec();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut eliminated: Vec<usize> = Vec::new();
    let mut pivot_product = Rational::one();
    while let Some(&r) = remaining.first() {
        remaining.remove(0);
        let d = s[r][r].clone();
        if d.is_negative() {
            let mut idx = eliminated.clone();
            idx.push(r);
            return Some((idx, &pivot_product * d));
        }
        if d.is_zero() {
            if let Some(&c) = remaining.iter().find(|&&c| !s[r][c].is_zero()) {
                // [[0, b], [b, *]] has determinant -b²
                let mut idx = eliminated.clone();
                idx.push(r);
                idx.push(c);
                let b = &s[r][c];
                return Some((idx, -(&pivot_product * b * b)));
            }
            continue;
        }
        for &i in &remaining {
            let f = &s[i][r] / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &remaining {
                let delta = &f * &s[r][j];
                s[i][j] -= delta;
            }
        }
        pivot_product *= &d;
        eliminated.push(r);
    }
    None
}

pub fn hankel_consistency(p: &MomentPrefix) -> Result<HankelVerdict> {
    let values = &p.values;
    if values.is_empty() {
        return Err(Error::usage("hankel_consistency needs a nonempty prefix"));
    }
    let l = values.len() - 1;
    let mut checks = vec![(HankelKind::H0, 0usize, l / 2 + 1)];
    if l >= 1 {
        checks.push((HankelKind::H1, 1, (l - 1) / 2 + 1));
    }
    for (kind, shift, size) in checks {
        let m = hankel(values, shift, size);
        if let Some((mut indices, determinant)) = psd_violation(&m) {
            indices.sort_unstable();
            let submatrix = indices
                .iter()
                .map(|&i| indices.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            return Ok(HankelVerdict::Inconsistent(HankelWitness {
                kind,
                indices,
                submatrix,
                determinant,
            }));
        }
    }
    Ok(HankelVerdict::Consistent)
}
