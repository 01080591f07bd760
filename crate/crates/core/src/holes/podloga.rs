//! Behaviour of `α†(κ)` and `β†(κ)` as κ grows.
//!
//! The dagger ordering is decided exactly through
//! `α†(κ) < β†(κ) ⇔ θ₂^κ < θ₁θ₃^{κ-1}`. Limits and monotonicity of the
//! values themselves are only observable over a finite range, so those
//! items are evaluated in [`BigFloat`] and the report is marked approximate.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::report::{Check, Clause, TheoremReport};
use super::{check_order, iota_s, one};
use crate::error::{Error, Result};
use crate::numerics::{rational_to_string, rpow, BigFloat, Radical, Rational};

const MAX_KAPPA: u32 = 200;
/// Exponent bound for deciding `θ₁^q ≤ θ₃^p` by exact powering.
const EXACT_EXPONENT_LIMIT: u64 = 10_000;

/// Shape of a finite sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    /// Strictly increasing; `min_margin` is the smallest step.
    Increasing {
        min_margin: BigFloat,
    },
    /// Strictly decreasing; `min_margin` is the smallest drop.
    Decreasing {
        min_margin: BigFloat,
    },
    Neither,
}

impl Monotonicity {
    /// Sequences shorter than two terms are reported as [`Monotonicity::Neither`].
    pub fn of(values: &[BigFloat]) -> Self {
        let steps: Vec<BigFloat> = values.windows(2).map(|w| w[1].sub(&w[0])).collect();
        let Some(first) = steps.first() else {
            return Monotonicity::Neither;
        };
        if steps.iter().all(|d| d.is_positive()) {
            let min = steps.iter().min().unwrap_or(first).clone();
            Monotonicity::Increasing { min_margin: min }
        } else if steps.iter().all(|d| d.is_negative()) {
            let min = steps.iter().map(BigFloat::abs).min().expect("nonempty");
            Monotonicity::Decreasing { min_margin: min }
        } else {
            Monotonicity::Neither
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Monotonicity::Increasing { .. } => "strictly increasing",
            Monotonicity::Decreasing { .. } => "strictly decreasing",
            Monotonicity::Neither => "not monotone",
        }
    }

    pub fn min_margin(&self) -> Option<&BigFloat> {
        match self {
            Monotonicity::Increasing { min_margin } | Monotonicity::Decreasing { min_margin } => {
                Some(min_margin)
            }
            Monotonicity::Neither => None,
        }
    }
}

fn alpha_dag(theta2: &Rational, theta3: &Rational, kappa: u32, precision: u32) -> BigFloat {
    Radical::root(theta3.clone(), kappa)
        .scale(&(theta2 / theta3))
        .approx(precision)
}

fn beta_dag(theta1: &Rational, kappa: u32, precision: u32) -> BigFloat {
    Radical::root(theta1.clone(), kappa).approx(precision)
}

/// `β†(κ) − α†(κ)` for every κ in `kappas`.
pub fn dagger_gap_sequence(
    theta1: &Rational,
    theta2: &Rational,
    theta3: &Rational,
    kappas: RangeInclusive<u32>,
    precision: u32,
) -> Result<Vec<(u32, BigFloat)>> {
    check_order(theta1, theta2, theta3)?;
    if precision < 32 {
        return Err(Error::usage("precision must be at least 32 bits"));
    }
    if *kappas.start() < 2 || *kappas.end() > MAX_KAPPA {
        return Err(Error::usage(format!(
            "kappa range must lie in [2, {MAX_KAPPA}]"
        )));
    }
    Ok(kappas
        .map(|k| {
            let gap = beta_dag(theta1, k, precision).sub(&alpha_dag(theta2, theta3, k, precision));
            (k, gap)
        })
        .collect())
}

fn ln(q: &Rational) -> f64 {
    fn ln_int(n: &BigInt) -> f64 {
        let shift = n.bits().saturating_sub(60);
        (n >> shift).to_f64().expect("fits in f64").ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_int(q.numer()) - ln_int(q.denom())
}

/// Whether `log θ₁ ≤ (θ₂/θ₃)·log θ₃`, i.e. `θ₁^q ≤ θ₃^p` for `θ₂/θ₃ = p/q`.
/// Returns `(holds, exact)`.
fn log_condition(theta1: &Rational, theta2: &Rational, theta3: &Rational) -> (bool, bool) {
    let ratio = theta2 / theta3;
    let exps = (ratio.numer().to_u64(), ratio.denom().to_u64());
    match exps {
        (Some(p), Some(q)) if p.max(q) <= EXACT_EXPONENT_LIMIT => {
            (rpow(theta1, q) <= rpow(theta3, p), true)
        }
        _ => {
            let r = ratio.numer().to_f64().unwrap_or(f64::INFINITY)
                / ratio.denom().to_f64().unwrap_or(f64::INFINITY);
            (ln(theta1) <= r * ln(theta3), false)
        }
    }
}

fn non_increasing(values: &[BigFloat]) -> bool {
    values.windows(2).all(|w| w[1] <= w[0])
}

/// Scans `κ = 2, …, kappa_max` for the dagger-point properties.
pub fn podloga_scan(
    theta1: &Rational,
    theta2: &Rational,
    theta3: &Rational,
    kappa_max: u32,
    precision: u32,
) -> Result<TheoremReport> {
    check_order(theta1, theta2, theta3)?;
    if precision < 32 {
        return Err(Error::usage("precision must be at least 32 bits"));
    }
    let is = iota_s(theta1, theta2, theta3);
    let lower = is.unwrap_or(2).max(2);
    if (kappa_max as u64) < lower || kappa_max > MAX_KAPPA {
        return Err(Error::usage(format!(
            "kappa_max must lie in [{lower}, {MAX_KAPPA}], got {kappa_max}"
        )));
    }
    let mut rep = TheoremReport::new(
        "podloga",
        format!(
            "theta = ({}, {}, {}), kappa <= {kappa_max}, {precision} bits",
            rational_to_string(theta1),
            rational_to_string(theta2),
            rational_to_string(theta3)
        ),
    );
    rep.approximate = true;
    let kappas: Vec<u32> = (2..=kappa_max).collect();
    let strict = theta1.is_positive() && theta2 < theta3;

    let alpha_limit = BigFloat::from_rational(&(theta2 / theta3), precision);
    let alpha_dist: Vec<BigFloat> = kappas
        .iter()
        .map(|&k| {
            alpha_dag(theta2, theta3, k, precision)
                .sub(&alpha_limit)
                .abs()
        })
        .collect();
    rep.clause(Clause::new(
        "(i)",
        vec![],
        Check::new(
            "|alpha_dag(kappa) - theta2/theta3| nonincreasing over the range (approximate)",
            non_increasing(&alpha_dist),
        ),
    ));
    let unit = BigFloat::from_rational(&one(), precision);
    let beta_dist: Vec<BigFloat> = kappas
        .iter()
        .map(|&k| beta_dag(theta1, k, precision).sub(&unit).abs())
        .collect();
    rep.clause(Clause::new(
        "(ii)",
        vec![Check::new("theta1 > 0", theta1.is_positive())],
        Check::new(
            "|beta_dag(kappa) - 1| nonincreasing over the range (approximate)",
            non_increasing(&beta_dist),
        ),
    ));

    // α†(κ) < β†(κ) ⇔ θ₂^κ < θ₁θ₃^{κ-1}, exactly
    let dagger_less = |k: u64| rpow(theta2, k) < theta1 * rpow(theta3, k - 1);
    let less: Vec<bool> = kappas.iter().map(|&k| dagger_less(k as u64)).collect();
    let first = less.iter().position(|&b| b);
    rep.clause(Clause::new(
        "(iii)",
        vec![Check::new(
            "alpha_dag(kappa) < beta_dag(kappa) for some kappa in range",
            first.is_some(),
        )],
        Check::new(
            "alpha_dag(kappa') < beta_dag(kappa') for every larger kappa' in range",
            first.is_some_and(|i| less[i..].iter().all(|&b| b)),
        ),
    ));
    if let Some(i) = first {
        rep.note(format!(
            "alpha_dag < beta_dag first at kappa = {}",
            kappas[i]
        ));
    }

    let hyp_strict = Check::new("0 < theta1 < theta2 < theta3", strict);
    rep.clause(Clause::new(
        "(iv)",
        vec![hyp_strict.clone()],
        Check::new(
            "alpha_dag(iota_s) < beta_dag(iota_s)",
            is.is_some_and(dagger_less),
        ),
    ));

    let (cond, exact) = if theta1 <= &one() {
        (true, true)
    } else {
        log_condition(theta1, theta2, theta3)
    };
    if !exact {
        rep.note("log condition on theta1 evaluated in f64");
    }
    let gaps = dagger_gap_sequence(theta1, theta2, theta3, lower as u32..=kappa_max, precision)?;
    let values: Vec<BigFloat> = gaps.iter().map(|(_, g)| g.clone()).collect();
    let shape = Monotonicity::of(&values);
    rep.clause(Clause::new(
        "(v)",
        vec![
            hyp_strict,
            Check::new(
                "theta1 <= 1, or theta1 > 1 and log theta1 <= (theta2/theta3) log theta3",
                cond,
            ),
        ],
        Check::new(
            "beta_dag - alpha_dag strictly increasing from iota_s (approximate)",
            values.len() < 2 || matches!(shape, Monotonicity::Increasing { .. }),
        ),
    ));
    let margin = shape
        .min_margin()
        .map(|m| format!(", min margin {}", m.to_decimal(6)))
        .unwrap_or_default();
    rep.note(format!(
        "gap sequence on [{lower}, {kappa_max}] is {}{margin}",
        shape.label()
    ));
    if theta1.is_zero() {
        rep.note("theta1 = 0: beta_dag vanishes identically");
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{frac, int, pow2};

    #[test]
    fn universal_pictures_two_scan() {
        let r = podloga_scan(&frac(1, 2), &int(1), &int(9), 50, 256).unwrap();
        assert!(r.approximate && !r.is_violation());
        for label in ["(i)", "(ii)", "(iii)", "(iv)", "(v)"] {
            let c = r.clause_by_label(label).unwrap();
            assert!(c.applies() && c.conclusion.holds, "{label}");
        }
        assert!(r
            .notes
            .iter()
            .any(|n| n == "alpha_dag < beta_dag first at kappa = 2"));
    }

    #[test]
    fn decreasing_gap_instance() {
        let theta3 = int(20_000);
        let gaps = dagger_gap_sequence(&int(2), &frac(5, 2), &theta3, 2..=12, 256).unwrap();
        let values: Vec<BigFloat> = gaps.into_iter().map(|(_, g)| g).collect();
        match Monotonicity::of(&values) {
            Monotonicity::Decreasing { min_margin } => {
                assert!(min_margin > BigFloat::from_rational(&pow2(-100), 256));
            }
            m => panic!("{m:?}"),
        }
        let r = podloga_scan(&int(2), &frac(5, 2), &theta3, 12, 256).unwrap();
        assert!(!r.is_violation());
        assert!(!r.clause_by_label("(v)").unwrap().applies());
    }

    #[test]
    fn zero_theta1() {
        let r = podloga_scan(&int(0), &int(1), &int(4), 20, 128).unwrap();
        assert!(!r.is_violation());
        assert!(!r.clause_by_label("(iii)").unwrap().applies());
    }

    #[test]
    fn log_condition_routes() {
        // θ₂/θ₃ = 1/2: compare θ₁² with 16
        assert_eq!(log_condition(&int(4), &int(8), &int(16)), (true, true));
        assert_eq!(log_condition(&int(5), &int(8), &int(16)), (false, true));
        let big = Rational::new(BigInt::from(1), BigInt::from(1_000_003));
        let (_, exact) = log_condition(&int(2), &big, &int(1));
        assert!(!exact);
    }

    #[test]
    fn range_checks() {
        assert!(podloga_scan(&frac(1, 2), &int(1), &int(9), 201, 256).is_err());
        assert!(podloga_scan(&frac(1, 2), &int(1), &int(9), 1, 256).is_err());
        assert!(podloga_scan(&frac(1, 2), &int(1), &int(9), 10, 16).is_err());
        // ι_s(1, 4, 8) = 4
        assert!(podloga_scan(&int(1), &int(4), &int(8), 3, 256).is_err());
    }
}
