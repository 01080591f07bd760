//! Which `(M, N)` admit `N` positive reals with exactly `M` pairwise products.
//!
//! A measure whose square root has `N` atoms has exactly the pairwise
//! products of those atoms as support. Such `N` points exist with `M`
//! distinct products iff `2N - 1 ≤ M ≤ N(N+1)/2`; [`witness`] builds them.

use std::collections::BTreeSet;

use num_integer::Roots;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{io::rational_vec, AtomicMeasure};
use crate::numerics::{int, pow2, Rational};
use crate::root::decide_root;

/// Smallest `N` with `M ≤ N(N+1)/2`: `⌈(√(8M+1) − 1)/2⌉`.
pub fn n_minus(m: u64) -> u64 {
    assert!(m >= 1, "M must be positive");
    let d = 8 * m as u128 + 1;
    let r = d.sqrt();
    let n = if r * r == d {
        (r - 1) / 2
    } else {
        r.div_ceil(2)
    };
    n as u64
}

/// Largest `N` with `2N − 1 ≤ M`: `⌊(M+1)/2⌋`.
pub fn n_plus(m: u64) -> u64 {
    assert!(m >= 1, "M must be positive");
    m.div_ceil(2)
}

fn violated_bound(m: u64, n: u64) -> Option<String> {
    if m == 0 || n == 0 {
        return Some("M and N must be positive".into());
    }
    let (m, n) = (m as u128, n as u128);
    if m < 2 * n - 1 {
        Some(format!("M >= 2N-1 = {}", 2 * n - 1))
    } else if m > n * (n + 1) / 2 {
        Some(format!("M <= N(N+1)/2 = {}", n * (n + 1) / 2))
    } else {
        None
    }
}

pub fn feasible(m: u64, n: u64) -> bool {
    violated_bound(m, n).is_none()
}

/// `N` points with exactly `M` distinct pairwise products `xᵢxⱼ`, `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityWitness {
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(with = "rational_vec")]
    pub xs: Vec<Rational>,
}

/// Number of distinct products `xᵢxⱼ` with `i ≤ j`.
pub fn product_count(xs: &[Rational]) -> Result<u64> {
    let distinct: BTreeSet<&Rational> = xs.iter().collect();
    if distinct.len() != xs.len() {
        return Err(Error::usage("product_count needs distinct points"));
    }
    if xs.iter().any(|x| !x.is_positive()) {
        return Err(Error::usage("product_count needs positive points"));
    }
    let mut products = BTreeSet::new();
    for (i, a) in xs.iter().enumerate() {
        for b in &xs[i..] {
            products.insert(a * b);
        }
    }
    Ok(products.len() as u64)
}

fn construct(m: u64, n: u64) -> Vec<Rational> {
    if n == 1 {
        return vec![int(1)];
    }
    let prev = n - 1;
    if m <= 3 * prev {
        // ξ₁ = 1, ξⱼ = 2^{k+j}: the products cover 2N−1 + (k+1) exponents
        let k = m as i64 - 2 * n as i64;
        std::iter::once(int(1))
            .chain((2..=n as i64).map(|j| pow2(k + j)))
            .collect()
    } else {
        let tail = construct(m - n, prev);
        // 0 < ξ₁ < ξ₂ and ξ₁ξ_N < ξ₂², so ξ₁ adds exactly N new products
        let head = &tail[0] * &tail[0] / (int(2) * tail.last().expect("nonempty"));
        std::iter::once(head).chain(tail).collect()
    }
}

pub fn witness(m: u64, n: u64) -> Result<FeasibilityWitness> {
    if let Some(bound) = violated_bound(m, n) {
        return Err(Error::InfeasiblePair { m, n, bound });
    }
    let xs = construct(m, n);
    let count = product_count(&xs)?;
    if count != m || xs.len() as u64 != n || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::usage(format!(
            "witness construction for (M = {m}, N = {n}) produced {count} products"
        )));
    }
    Ok(FeasibilityWitness { m, n, xs })
}

/// Row of the bound table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    #[serde(rename = "M")]
    pub m: u64,
    pub n_minus: u64,
    pub n_plus: u64,
    pub feasible_n: Vec<u64>,
}

pub fn table(max_m: u64) -> Vec<TableRow> {
    (1..=max_m)
        .map(|m| TableRow {
            m,
            n_minus: n_minus(m),
            n_plus: n_plus(m),
            feasible_n: (1..=m).filter(|&n| feasible(m, n)).collect(),
        })
        .collect()
}

/// `card supp μ` and, when `μ` has a Stieltjes square root, the number of its atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMembership {
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    /// `(M, N)` is feasible whenever `N` is present.
    pub consistent: bool,
}

pub fn class_membership(mu: &AtomicMeasure) -> Result<ClassMembership> {
    let m = mu.len() as u64;
    let n = decide_root(mu, 2)?.nu().map(|nu| nu.support_size() as u64);
    Ok(ClassMembership {
        m,
        n,
        consistent: n.is_none_or(|n| feasible(m, n)),
    })
}
