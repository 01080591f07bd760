//! Hole transfer between `supp μ` and `supp ν` for `μ` the κ-fold product
//! pushforward of `ν`.
//!
//! A hole `(θ₁, θ₂)` of `μ` with `θ₃ = sup supp μ` is mapped to the triple
//! `α = (θ₁/θ₃)·θ₃^{1/κ}`, `β = θ₂^{1/κ}`, `γ = θ₃^{1/κ}` together with
//! `α† = (θ₂/θ₃)·θ₃^{1/κ}` and `β† = θ₁^{1/κ}`, and the integer parameters
//! `ι_s = 1 + ⌊log(θ₃/θ₁)/log(θ₃/θ₂)⌋`, `ι_s* = 1 + ⌊log(θ₃/θ₂)/log(θ₂/θ₁)⌋`.
//! The checkers here evaluate the hole-transfer statements on concrete
//! instances and report every hypothesis and conclusion exactly.

mod checkers;
mod podloga;
mod report;
mod support;
mod techn;

use std::cmp::Ordering;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{
    floor_log_ratio, radical_compare, rational_to_string, rpow, Radical, Rational,
    DEFAULT_PRECISION,
};

pub use checkers::{
    check_co2, check_co2_with, check_cor1, check_lem1, check_lem1plus, check_lower_support,
    check_thm17,
};
pub use podloga::{dagger_gap_sequence, podloga_scan, Monotonicity};
pub use report::{Check, Clause, TheoremReport};
pub use support::RadicalSupport;
pub use techn::{techn_plus_relations, techn_relations, techn_witness};

/// The parameters attached to `(θ₁, θ₂, θ₃)` at a fixed κ.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleParams {
    pub theta1: Rational,
    pub theta2: Rational,
    pub theta3: Rational,
    pub kappa: u32,
    pub alpha: Radical,
    pub alpha_dag: Radical,
    pub beta: Radical,
    pub beta_dag: Radical,
    pub gamma: Radical,
    /// Defined iff `θ₁ > 0` and `θ₂ < θ₃`.
    pub iota_s: Option<u64>,
    /// Defined iff `0 < θ₁ < θ₂ < θ₃`.
    pub iota_s_star: Option<u64>,
}

pub(crate) fn check_order(theta1: &Rational, theta2: &Rational, theta3: &Rational) -> Result<()> {
    if theta1.is_negative() || theta1 >= theta2 || theta2 > theta3 {
        return Err(Error::usage(format!(
            "need 0 <= theta1 < theta2 <= theta3, got ({}, {}, {})",
            rational_to_string(theta1),
            rational_to_string(theta2),
            rational_to_string(theta3)
        )));
    }
    Ok(())
}

pub(crate) fn check_kappa(kappa: u32) -> Result<()> {
    if !(2..=16).contains(&kappa) {
        return Err(Error::usage(format!(
            "kappa must lie in [2, 16], got {kappa}"
        )));
    }
    Ok(())
}

/// `ι_s(θ₁, θ₂, θ₃)`, when `θ₁ > 0` and `θ₂ < θ₃`.
pub fn iota_s(theta1: &Rational, theta2: &Rational, theta3: &Rational) -> Option<u64> {
    if !theta1.is_positive() || theta2 >= theta3 {
        return None;
    }
    Some(saturating_iota(&(theta3 / theta2), &(theta3 / theta1)))
}

/// `ι_s*(θ₁, θ₂, θ₃)`, when `0 < θ₁ < θ₂ < θ₃`.
pub fn iota_s_star(theta1: &Rational, theta2: &Rational, theta3: &Rational) -> Option<u64> {
    if !theta1.is_positive() || theta1 >= theta2 || theta2 >= theta3 {
        return None;
    }
    Some(saturating_iota(&(theta2 / theta1), &(theta3 / theta2)))
}

/// `1 + ⌊log target / log base⌋`, saturating at `u64::MAX`; every comparison
/// the checkers make is against κ ≤ 16, so saturation never changes a verdict
/// except between two saturated values.
fn saturating_iota(base: &Rational, target: &Rational) -> u64 {
    floor_log_ratio(base, target).map_or(u64::MAX, |m| m.saturating_add(1))
}

pub fn triple_params(
    theta1: &Rational,
    theta2: &Rational,
    theta3: &Rational,
    kappa: u32,
) -> Result<TripleParams> {
    check_order(theta1, theta2, theta3)?;
    check_kappa(kappa)?;
    let gamma = Radical::root(theta3.clone(), kappa);
    Ok(TripleParams {
        alpha: gamma.scale(&(theta1 / theta3)),
        alpha_dag: gamma.scale(&(theta2 / theta3)),
        beta: Radical::root(theta2.clone(), kappa),
        beta_dag: Radical::root(theta1.clone(), kappa),
        gamma,
        iota_s: iota_s(theta1, theta2, theta3),
        iota_s_star: iota_s_star(theta1, theta2, theta3),
        theta1: theta1.clone(),
        theta2: theta2.clone(),
        theta3: theta3.clone(),
        kappa,
    })
}

impl TripleParams {
    /// `α†` against `β†` through `θ₂^κ` against `θ₁θ₃^{κ-1}`.
    pub fn dagger_order(&self) -> Ordering {
        let k = self.kappa as u64;
        rpow(&self.theta2, k).cmp(&(&self.theta1 * rpow(&self.theta3, k - 1)))
    }

    /// `(γ/β)·α = (θ₁/θ₃)·(θ₃²/θ₂)^{1/κ}`.
    pub fn gamma_over_beta_alpha(&self) -> Radical {
        Radical::root(&self.theta3 * &self.theta3 / &self.theta2, self.kappa)
            .scale(&(&self.theta1 / &self.theta3))
    }

    /// Whether `(γ/β)·α < α†`, decided as `θ₃θ₁^κ < θ₂^{κ+1}`.
    pub fn gamma_beta_alpha_below_alpha_dag(&self) -> bool {
        let k = self.kappa as u64;
        &self.theta3 * rpow(&self.theta1, k) < rpow(&self.theta2, k + 1)
    }

    /// The ordering relations every valid triple satisfies, each decided exactly.
    pub fn order_relations(&self) -> Vec<Check> {
        let lt = |a: &Radical, b: &Radical| radical_compare(a, b).ok() == Some(Ordering::Less);
        let le = |a: &Radical, b: &Radical| radical_compare(a, b).ok() != Some(Ordering::Greater);
        let zero = Radical::zero(self.kappa);
        let theta1_image = self
            .alpha
            .mul(&self.gamma.pow(self.kappa - 1))
            .expect("same index");
        let dagger_radical = radical_compare(&self.alpha_dag, &self.beta_dag).expect("same index");
        vec![
            Check::new("0 <= alpha < beta <= gamma", {
                le(&zero, &self.alpha) && lt(&self.alpha, &self.beta) && le(&self.beta, &self.gamma)
            }),
            Check::new("alpha < alpha_dag <= beta", {
                lt(&self.alpha, &self.alpha_dag) && le(&self.alpha_dag, &self.beta)
            }),
            Check::new("0 <= beta_dag < beta", {
                le(&zero, &self.beta_dag) && lt(&self.beta_dag, &self.beta)
            }),
            Check::new(
                "alpha*gamma^(kappa-1) < beta^kappa",
                lt(&theta1_image, &self.beta.pow(self.kappa)),
            ),
            Check::new(
                "alpha_dag < beta iff theta2 < theta3",
                lt(&self.alpha_dag, &self.beta) == (self.theta2 < self.theta3),
            ),
            Check::new(
                "alpha_dag vs beta_dag agrees with theta2^kappa vs theta1*theta3^(kappa-1)",
                dagger_radical == self.dagger_order(),
            ),
            Check::new(
                "(gamma/beta)*alpha < alpha_dag agrees with theta3*theta1^kappa < theta2^(kappa+1)",
                lt(&self.gamma_over_beta_alpha(), &self.alpha_dag)
                    == self.gamma_beta_alpha_below_alpha_dag(),
            ),
        ]
    }

    pub fn report(&self) -> TripleParamsReport {
        TripleParamsReport::from(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproxValue {
    pub value: String,
    pub precision_bits: u32,
}

/// JSON form of a radical; `exact` is present when the value is rational.
#[derive(Clone, Debug, Serialize)]
pub struct RadicalReport {
    pub coeff: String,
    pub radicand: String,
    pub index: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub approx: ApproxValue,
}

impl From<&Radical> for RadicalReport {
    fn from(r: &Radical) -> Self {
        let a = r.approx(DEFAULT_PRECISION);
        RadicalReport {
            coeff: rational_to_string(r.coeff()),
            radicand: rational_to_string(r.radicand()),
            index: r.index(),
            exact: r.to_rational().map(|q| rational_to_string(&q)),
            approx: ApproxValue {
                value: a.to_decimal(40),
                precision_bits: DEFAULT_PRECISION,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleParamsReport {
    pub theta1: String,
    pub theta2: String,
    pub theta3: String,
    pub kappa: u32,
    pub alpha: RadicalReport,
    pub alpha_dag: RadicalReport,
    pub beta: RadicalReport,
    pub beta_dag: RadicalReport,
    pub gamma: RadicalReport,
    pub iota_s: Option<u64>,
    pub iota_s_star: Option<u64>,
    /// `"Less"`, `"Equal"` or `"Greater"`: α† against β†.
    pub alpha_dag_vs_beta_dag: String,
    pub relations: Vec<Check>,
}

impl From<&TripleParams> for TripleParamsReport {
    fn from(p: &TripleParams) -> Self {
        TripleParamsReport {
            theta1: rational_to_string(&p.theta1),
            theta2: rational_to_string(&p.theta2),
            theta3: rational_to_string(&p.theta3),
            kappa: p.kappa,
            alpha: (&p.alpha).into(),
            alpha_dag: (&p.alpha_dag).into(),
            beta: (&p.beta).into(),
            beta_dag: (&p.beta_dag).into(),
            gamma: (&p.gamma).into(),
            iota_s: p.iota_s,
            iota_s_star: p.iota_s_star,
            alpha_dag_vs_beta_dag: format!("{:?}", p.dagger_order()),
            relations: p.order_relations(),
        }
    }
}

/// `θ₁θ₃` against `θ₂²`.
pub(crate) fn geometric_order(theta1: &Rational, theta2: &Rational, theta3: &Rational) -> Ordering {
    (theta1 * theta3).cmp(&(theta2 * theta2))
}

pub(crate) fn one() -> Rational {
    Rational::one()
}
