use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^e` for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

pub fn rpow(q: &Rational, e: u64) -> Rational {
    Pow::pow(q, e)
}

/// Parses `"p/q"` or `"p"` in base 10. Negative values are rejected unless
/// `allow_negative` is set.
pub fn parse_rational_with(input: &str, allow_negative: bool) -> Result<Rational> {
    let s = input.trim();
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(err("empty"));
    }
    if s.starts_with('-') && !allow_negative {
        return Err(err("negative values are not allowed here"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    if den.is_negative() {
        return Err(err("negative denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Parses a nonnegative rational (`"p/q"` or `"p"`).
pub fn parse_rational(input: &str) -> Result<Rational> {
    parse_rational_with(input, false)
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact `k`-th root of a nonnegative integer, if it is a perfect power.
pub fn exact_uint_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = n.nth_root(k);
    if Pow::pow(&r, k) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `k`-th root of a nonnegative rational, if it is rational.
pub fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if k == 1 {
        return Some(q.clone());
    }
    // lowest terms: q^{1/k} is rational iff numerator and denominator are k-th powers
    let n = exact_uint_root(q.numer().magnitude(), k)?;
    let d = exact_uint_root(q.denom().magnitude(), k)?;
    Some(Rational::new(
        BigInt::from_biguint(Sign::Plus, n),
        BigInt::from_biguint(Sign::Plus, d),
    ))
}

/// Binomial coefficient as `u128`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at each step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Approximate bit length of `|q|`, i.e. roughly `log2 |q|`. Zero maps to 0.
pub(crate) fn log2_estimate(q: &Rational) -> i64 {
    if q.is_zero() {
        return 0;
    }
    q.numer().bits() as i64 - q.denom().bits() as i64
}
