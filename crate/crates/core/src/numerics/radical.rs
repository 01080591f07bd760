use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::bigfloat::BigFloat;
use super::rational::{exact_root, rational_to_string, rpow, Rational};
use crate::error::{Error, Result};

/// The nonnegative real `coeff · radicand^{1/index}`.
///
/// Radicals are never normalized; two radicals of the same index are
/// compared through their `index`-th powers `coeff^index · radicand`.
/// A zero coefficient denotes the number 0.
#[derive(Clone, Debug)]
pub struct Radical {
    coeff: Rational,
    radicand: Rational,
    index: u32,
}

impl Radical {
    pub fn new(coeff: Rational, radicand: Rational, index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::usage("radical index must be at least 1"));
        }
        if coeff.is_negative() {
            return Err(Error::usage("radical coefficient must be nonnegative"));
        }
        if !radicand.is_positive() {
            return Err(Error::usage("radicand must be positive"));
        }
        Ok(Radical {
            coeff,
            radicand,
            index,
        })
    }

    /// A rational `q ≥ 0` viewed as a radical of the given index.
    pub fn rational(q: Rational, index: u32) -> Self {
        assert!(index >= 1 && !q.is_negative());
        Radical {
            coeff: q,
            radicand: Rational::one(),
            index,
        }
    }

    /// `x^{1/index}` for `x ≥ 0`.
    pub fn root(x: Rational, index: u32) -> Self {
        assert!(index >= 1 && !x.is_negative());
        if x.is_zero() {
            Radical::rational(x, index)
        } else {
            Radical {
                coeff: Rational::one(),
                radicand: x,
                index,
            }
        }
    }

    pub fn zero(index: u32) -> Self {
        Radical::rational(Rational::zero(), index)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `coeff^index · radicand`, the `index`-th power of the denoted value.
    pub fn kth_power(&self) -> Rational {
        rpow(&self.coeff, self.index as u64) * &self.radicand
    }

    /// The exact rational value, when the radical denotes one.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeff.is_zero() {
            return Some(Rational::zero());
        }
        exact_root(&self.radicand, self.index).map(|r| r * &self.coeff)
    }

    pub fn mul(&self, other: &Radical) -> Result<Radical> {
        check_index(self, other)?;
        Ok(Radical {
            coeff: &self.coeff * &other.coeff,
            radicand: &self.radicand * &other.radicand,
            index: self.index,
        })
    }

    pub fn scale(&self, q: &Rational) -> Radical {
        assert!(!q.is_negative());
        Radical {
            coeff: &self.coeff * q,
            ..self.clone()
        }
    }

    /// `self^e`, kept at the same index: `(c·r^{1/k})^e = c^e r^{⌊e/k⌋} · (r^{e mod k})^{1/k}`.
    pub fn pow(&self, e: u32) -> Radical {
        let k = self.index;
        let (q, s) = (e / k, e % k);
        Radical {
            coeff: rpow(&self.coeff, e as u64) * rpow(&self.radicand, q as u64),
            radicand: rpow(&self.radicand, s as u64),
            index: k,
        }
    }

    /// Product of a nonempty slice of radicals sharing one index.
    pub fn product(items: &[Radical]) -> Result<Radical> {
        let (first, rest) = items
            .split_first()
            .ok_or_else(|| Error::usage("empty radical product"))?;
        rest.iter().try_fold(first.clone(), |acc, r| acc.mul(r))
    }

    pub fn approx(&self, precision: u32) -> BigFloat {
        BigFloat::from_radical(self, precision)
    }
}

fn check_index(a: &Radical, b: &Radical) -> Result<()> {
    if a.index != b.index {
        return Err(Error::IndexMismatch {
            left: a.index,
            right: b.index,
        });
    }
    Ok(())
}

/// Exact ordering of two radicals with equal index.
pub fn radical_compare(a: &Radical, b: &Radical) -> Result<Ordering> {
    check_index(a, b)?;
    // x -> x^κ is strictly increasing on [0, ∞)
    Ok(a.kth_power().cmp(&b.kth_power()))
}

/// Correctly rounded approximation of a radical.
pub fn approx(value: &Radical, precision: u32) -> Result<BigFloat> {
    if precision < 32 {
        return Err(Error::usage(
            "approximation precision must be at least 32 bits",
        ));
    }
    Ok(value.approx(precision))
}

impl PartialEq for Radical {
    fn eq(&self, other: &Self) -> bool {
        matches!(radical_compare(self, other), Ok(Ordering::Equal))
    }
}

/// Radicals of different index are incomparable.
impl PartialOrd for Radical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        radical_compare(self, other).ok()
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return f.write_str(&rational_to_string(&q));
        }
        let c = if self.coeff.is_one() {
            String::new()
        } else {
            format!("{}*", rational_to_string(&self.coeff))
        };
        write!(
            f,
            "{c}({})^(1/{})",
            rational_to_string(&self.radicand),
            self.index
        )
    }
}
