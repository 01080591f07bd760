//! Certified `⌊log(target)/log(base)⌋`.
//!
//! Exact powering alone costs `O(m · bits(base))` space, which explodes when
//! `base` is close to 1. Instead both logarithms are enclosed in fixed-point
//! intervals; the floor is read off once the quotient interval pins it, and
//! exact powering is only used to settle a one-step ambiguity when it is cheap.
//! An exact ratio `log t / log b = m` forces `b^m = t`, so `m ≤ log₂ numer(t)`
//! and that check is always cheap.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{rational_to_string, rpow, Rational};
use crate::error::{Error, Result};

const START_BITS: u32 = 64;
const MAX_BITS: u32 = 1 << 14;
/// Largest `m · bits(base)` settled by exact powering.
const EXACT_BUDGET: u64 = 1 << 22;

/// `2·atanh(z)` for `z = num/den ∈ [0, 1/3]` in fixed point with `w` fraction
/// bits, with an error bound in units of `2^-w`.
fn two_atanh(num: &BigInt, den: &BigInt, w: u32) -> (BigInt, BigInt) {
    let z = (num << w) / den;
    let z2 = (&z * &z) >> w;
    let mut term = z;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * j + 1);
        term = (&term * &z2) >> w;
        j += 1;
    }
    // each term is off by at most 5 units and the dropped tail by at most 5
    (sum << 1, BigInt::from(10 * (j + 1)))
}

/// `ln q` for `q > 0` as a fixed-point value and error bound, both scaled by `2^w`.
fn ln_fixed(q: &Rational, w: u32) -> (BigInt, BigInt) {
    let (n, d) = (q.numer(), q.denom());
    // q = 2^s · a/b with a/b ∈ [1, 2)
    let mut s = n.bits() as i64 - d.bits() as i64;
    let (mut a, mut b) = (n.clone(), d.clone());
    if s >= 0 {
        b <<= s as u64;
    } else {
        a <<= (-s) as u64;
    }
    if a < b {
        a <<= 1u32;
        s -= 1;
    }
    let (ln_y, err_y) = two_atanh(&(&a - &b), &(&a + &b), w);
    if s == 0 {
        return (ln_y, err_y);
    }
    let (ln2, err2) = two_atanh(&BigInt::one(), &BigInt::from(3), w);
    let s_big = BigInt::from(s);
    (ln_y + &s_big * ln2, err_y + s_big.abs() * err2)
}

fn to_u64(v: &BigInt) -> Option<u64> {
    if v.sign() == Sign::Minus {
        Some(0)
    } else {
        v.to_u64()
    }
}

/// The quotient exceeds `u64::MAX`.
fn overflow() -> Error {
    Error::GuardExceeded {
        what: "floor_log_ratio",
        count: u64::MAX as u128 + 1,
        limit: u64::MAX as u128,
    }
}

/// Largest `m ≥ 0` with `base^m ≤ target`, for `base > 1` and `target ≥ 1`.
pub fn floor_log_ratio(base: &Rational, target: &Rational) -> Result<u64> {
    if *base <= Rational::one() {
        return Err(Error::usage(format!(
            "floor_log_ratio: base must exceed 1, got {}",
            rational_to_string(base)
        )));
    }
    if *target < Rational::one() {
        return Err(Error::usage(format!(
            "floor_log_ratio: target must be at least 1, got {}",
            rational_to_string(target)
        )));
    }
    if target < base {
        return Ok(0);
    }
    let base_bits = base.numer().bits() + base.denom().bits();
    let mut w = START_BITS;
    loop {
        let (lb, eb) = ln_fixed(base, w);
        let (lt, et) = ln_fixed(target, w);
        let den_lo = &lb - &eb;
        if den_lo.is_positive() {
            let lo = (&lt - &et).max(BigInt::zero()) / (&lb + &eb);
            let hi = (&lt + &et) / &den_lo;
            let lo = to_u64(&lo).ok_or_else(overflow)?;
            if let Some(hi) = to_u64(&hi) {
                if lo == hi {
                    return Ok(lo);
                }
                if hi - lo == 1 && hi.saturating_mul(base_bits) <= EXACT_BUDGET {
                    return Ok(if rpow(base, hi) <= *target { hi } else { lo });
                }
            }
        }
        if w >= MAX_BITS {
            return exact_floor_log_ratio(base, target);
        }
        w *= 2;
    }
}

/// Exact bracketing by repeated squaring; the fallback when intervals stay wide.
fn exact_floor_log_ratio(base: &Rational, target: &Rational) -> Result<u64> {
    // squares[i] = base^(2^i), kept while ≤ target
    let mut squares = vec![base.clone()];
    while squares.last().is_some_and(|p| p <= target) {
        if squares.len() >= 64 {
            return Err(overflow());
        }
        let p = squares.last().unwrap();
        let next = p * p;
        squares.push(next);
    }
    squares.pop();
    let mut acc = Rational::one();
    let mut m = 0u64;
    for (i, p) in squares.iter().enumerate().rev() {
        let cand = &acc * p;
        if cand <= *target {
            acc = cand;
            m += 1u64 << i;
        }
    }
    Ok(m)
}
