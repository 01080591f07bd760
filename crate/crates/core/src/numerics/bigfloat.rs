//! Binary floating point with arbitrary precision, for reports only.
//!
//! Values are `mantissa · 2^exponent` with `|mantissa|` holding exactly
//! `precision` bits (or zero). Conversions from rationals and radicals are
//! correctly rounded to nearest, ties to even; `+ - * /` round their exact
//! result the same way, except that an addend smaller than a quarter ulp of
//! the other operand only contributes a sticky bit.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::radical::Radical;
use super::rational::{log2_estimate, Rational};

pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

impl BigFloat {
    pub fn zero(precision: u32) -> Self {
        BigFloat {
            mantissa: BigInt::zero(),
            exponent: 0,
            precision: precision.max(2),
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Rounds `(floor + δ) · 2^{-scale}` with `δ ∈ [0, 1)`, where `δ > 0`
    /// exactly when `inexact`. Callers guarantee `floor` has at least
    /// `precision + 2` bits whenever `inexact` is set.
    fn from_floor(
        negative: bool,
        floor: BigUint,
        scale: i64,
        inexact: bool,
        precision: u32,
    ) -> Self {
        let precision = precision.max(2);
        if floor.is_zero() && !inexact {
            return BigFloat::zero(precision);
        }
        let bits = floor.bits();
        let (mag, exponent) = if bits <= precision as u64 {
            debug_assert!(!inexact, "not enough guard bits for rounding");
            let pad = precision as u64 - bits;
            (floor << pad, -scale - pad as i64)
        } else {
            let mut extra = bits - precision as u64;
            let mut q = &floor >> extra;
            let rem = &floor - (&q << extra);
            let half = BigUint::one() << (extra - 1);
            let round_up = match rem.cmp(&half) {
                Ordering::Greater => true,
                Ordering::Equal => inexact || q.is_odd(),
                Ordering::Less => false,
            };
            if round_up {
                q += 1u32;
                if q.bits() > precision as u64 {
                    q >>= 1;
                    extra += 1;
                }
            }
            (q, extra as i64 - scale)
        };
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        BigFloat {
            mantissa: BigInt::from_biguint(sign, mag),
            exponent,
            precision,
        }
    }

    /// Rounds the exact value `m · 2^e`.
    fn from_exact(m: BigInt, e: i64, precision: u32) -> Self {
        let negative = m.is_negative();
        Self::from_floor(negative, m.into_parts().1, -e, false, precision)
    }

    pub fn from_rational(q: &Rational, precision: u32) -> Self {
        let precision = precision.max(2);
        if q.is_zero() {
            return BigFloat::zero(precision);
        }
        let negative = q.is_negative();
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        let mut scale = precision as i64 + 4 - log2_estimate(q);
        loop {
            let (n, d) = if scale >= 0 {
                (num << scale as u64, den.clone())
            } else {
                (num.clone(), den << (-scale) as u64)
            };
            let (floor, rem) = n.div_rem(&d);
            if floor.bits() >= precision as u64 + 2 {
                return Self::from_floor(negative, floor, scale, !rem.is_zero(), precision);
            }
            scale += 8;
        }
    }

    /// Correctly rounded value of `coeff · radicand^{1/index}`.
    pub fn from_radical(r: &Radical, precision: u32) -> Self {
        let precision = precision.max(2);
        if r.coeff().is_zero() {
            return BigFloat::zero(precision);
        }
        let k = r.index();
        // R = coeff^k · radicand, the k-th power of the denoted value
        let big_r = r.kth_power();
        let estimate = log2_estimate(&big_r) / k as i64;
        let mut scale = precision as i64 + 4 - estimate;
        loop {
            // floor(x · 2^scale) = iroot_k(floor(R · 2^{k·scale}))
            let shift = scale * k as i64;
            let num = big_r.numer().magnitude();
            let den = big_r.denom().magnitude();
            let (n, d) = if shift >= 0 {
                (num << shift as u64, den.clone())
            } else {
                (num.clone(), den << (-shift) as u64)
            };
            let (floor_r, rem) = n.div_rem(&d);
            let root = floor_r.nth_root(k);
            if root.bits() >= precision as u64 + 2 {
                let exact = rem.is_zero() && num_traits::Pow::pow(&root, k) == floor_r;
                return Self::from_floor(false, root, scale, !exact, precision);
            }
            scale += 8;
        }
    }

    /// Position just above the top bit: `|x| ∈ [2^{top-1}, 2^top)`.
    fn top(&self) -> i64 {
        self.exponent + self.mantissa.bits() as i64
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mantissa: -self.mantissa.clone(),
            ..self.clone()
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mantissa: self.mantissa.abs(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.max(other.precision);
        if self.is_zero() {
            return other.with_precision(precision);
        }
        if other.is_zero() {
            return self.with_precision(precision);
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        let floor_exp = big.top() - precision as i64 - 4;
        let small_adj;
        let small = if small.top() < floor_exp {
            // negligible: keep only its sign as a sticky contribution
            let sign = if small.is_negative() { -1 } else { 1 };
            small_adj = BigFloat {
                mantissa: BigInt::from(sign),
                exponent: floor_exp - 1,
                precision,
            };
            &small_adj
        } else {
            small
        };
        let e = big.exponent.min(small.exponent);
        let a = &big.mantissa << (big.exponent - e) as u64;
        let b = &small.mantissa << (small.exponent - e) as u64;
        Self::from_exact(a + b, e, precision)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let precision = self.precision.max(other.precision);
        Self::from_exact(
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
            precision,
        )
    }

    /// Division; returns `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let precision = self.precision.max(other.precision);
        if self.is_zero() {
            return Some(BigFloat::zero(precision));
        }
        let negative = self.is_negative() != other.is_negative();
        let a = self.mantissa.magnitude();
        let b = other.mantissa.magnitude();
        let shift = (precision as i64 + 4 + b.bits() as i64 - a.bits() as i64).max(0);
        let (floor, rem) = (a << shift as u64).div_rem(b);
        let scale = shift - (self.exponent - other.exponent);
        Some(Self::from_floor(
            negative,
            floor,
            scale,
            !rem.is_zero(),
            precision,
        ))
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self::from_exact(self.mantissa.clone(), self.exponent, precision)
    }

    /// Exact rational value of this float.
    pub fn to_rational(&self) -> Rational {
        let m = Rational::from_integer(self.mantissa.clone());
        if self.exponent >= 0 {
            m * Rational::from_integer(BigInt::one() << self.exponent as u64)
        } else {
            m / Rational::from_integer(BigInt::one() << (-self.exponent) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 64).max(0);
        let top = (&self.mantissa >> drop as u64).to_f64().unwrap_or(f64::NAN);
        let e = (self.exponent + drop).clamp(-2000, 2000) as i32;
        top * 2f64.powi(e)
    }

    /// Decimal rendering with `digits` significant digits (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let r = self.to_rational().abs();
        let ten = Rational::from_integer(BigInt::from(10));
        // d = floor(log10 r)
        let mut d: i64 = ((self.top() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let pow10 = |e: i64| -> Rational {
            let p = num_traits::Pow::pow(&ten, e.unsigned_abs());
            if e >= 0 {
                p
            } else {
                p.recip()
            }
        };
        while pow10(d) > r {
            d -= 1;
        }
        while pow10(d + 1) <= r {
            d += 1;
        }
        let scaled = (&r * pow10(digits as i64 - 1 - d)).floor().to_integer();
        let s = scaled.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let body = if (-6..21).contains(&d) {
            if d >= 0 {
                let int_len = (d + 1) as usize;
                if s.len() <= int_len {
                    format!("{s}{}", "0".repeat(int_len - s.len()))
                } else {
                    format!("{}.{}", &s[..int_len], s[int_len..].trim_end_matches('0'))
                        .trim_end_matches('.')
                        .to_string()
                }
            } else {
                let frac = format!("{}{}", "0".repeat((-d - 1) as usize), s);
                format!("0.{}", frac.trim_end_matches('0'))
            }
        } else {
            let tail = s[1..].trim_end_matches('0');
            if tail.is_empty() {
                format!("{}e{}", &s[..1], d)
            } else {
                format!("{}.{}e{}", &s[..1], tail, d)
            }
        };
        format!("{sign}{body}")
    }

    /// Number of significant decimal digits the precision supports.
    pub fn decimal_digits(&self) -> usize {
        ((self.precision as f64) * std::f64::consts::LOG10_2).floor() as usize
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mantissa.sign(), other.mantissa.sign());
        let rank = |s: Sign| match s {
            Sign::Minus => 0,
            Sign::NoSign => 1,
            Sign::Plus => 2,
        };
        if sa != sb {
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let e = self.exponent.min(other.exponent);
                let a = self.mantissa.magnitude() << (self.exponent - e) as u64;
                let b = other.mantissa.magnitude() << (other.exponent - e) as u64;
                a.cmp(&b)
            }
            o => o,
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| self.decimal_digits());
        f.write_str(&self.to_decimal(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{frac, int};

    #[test]
    fn rational_exactness() {
        let x = BigFloat::from_rational(&frac(3, 2), 64);
        assert_eq!(x.to_rational(), frac(3, 2));
        assert_eq!(x.to_string(), "1.5");
        assert!(BigFloat::from_rational(&frac(1, 3), 64).to_rational() != frac(1, 3));
    }

    #[test]
    fn ties_round_to_even() {
        // 2^4 + 1 = 17 with 4 bits: 17 = 10001b, halfway between 16 and 18 -> 16
        let x = BigFloat::from_rational(&int(17), 4);
        assert_eq!(x.to_rational(), int(16));
        // 19 = 10011b -> rounds up to 20
        let y = BigFloat::from_rational(&int(19), 4);
        assert_eq!(y.to_rational(), int(20));
    }

    #[test]
    fn arithmetic() {
        let a = BigFloat::from_rational(&frac(1, 4), 64);
        let b = BigFloat::from_rational(&frac(3, 4), 64);
        assert_eq!(a.add(&b).to_rational(), int(1));
        assert_eq!(a.sub(&b).to_rational(), frac(-1, 2));
        assert_eq!(a.mul(&b).to_rational(), frac(3, 16));
        assert_eq!(b.div(&a).unwrap().to_rational(), int(3));
        assert!(a.div(&BigFloat::zero(64)).is_none());
        assert!(a < b && b.neg() < a.neg());
        let tiny = BigFloat::from_rational(&pow_two(-500), 64);
        assert_eq!(b.add(&tiny), b);
    }

    fn pow_two(e: i64) -> Rational {
        crate::numerics::rational::pow2(e)
    }

    #[test]
    fn decimal_rendering() {
        let x = BigFloat::from_rational(&frac(1, 8), 64);
        assert_eq!(x.to_decimal(10), "0.125");
        let y = BigFloat::from_rational(&int(1200), 64);
        assert_eq!(y.to_decimal(10), "1200");
        let z = BigFloat::from_rational(&pow_two(-40), 64);
        assert!(z.to_decimal(5).contains("e-13"));
        assert_eq!(
            BigFloat::from_rational(&frac(-5, 2), 64).to_decimal(4),
            "-2.5"
        );
    }
}
