//! Instance checkers for the hole-transfer results.
//!
//! Every support question is answered exactly on κ-th powers. A checker
//! whose own preconditions fail returns a not-applicable report rather than
//! an error; errors are reserved for malformed input.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::report::{Check, Clause, TheoremReport};
use super::support::RadicalSupport;
use super::{check_kappa, check_order, iota_s_star, triple_params};
use crate::error::{Error, Result};
use crate::measures::{kappa_power_measure, AtomicMeasure};
use crate::numerics::{radical_compare, rational_to_string, Radical, Rational};
use crate::root::{decide_root, NuRepresentation, RootDecision};

fn cmp(a: &Radical, b: &Radical) -> Ordering {
    radical_compare(a, b).expect("radicals share an index")
}

fn lt(a: &Radical, b: &Radical) -> bool {
    cmp(a, b) == Ordering::Less
}

fn le(a: &Radical, b: &Radical) -> bool {
    cmp(a, b) != Ordering::Greater
}

fn s(q: &Rational) -> String {
    rational_to_string(q)
}

fn hole_instance(theta1: &Rational, theta2: &Rational, kappa: u32) -> String {
    format!("hole ({}, {}), kappa={kappa}", s(theta1), s(theta2))
}

fn require_root(mu: &AtomicMeasure, kappa: u32, nu: &NuRepresentation) -> Result<()> {
    if nu.kappa != kappa || !nu.reproduces(mu) {
        return Err(Error::NotARoot { kappa });
    }
    Ok(())
}

/// Checks the transfer of a ν-hole `(α, β)` to the μ-hole `(αγ^{κ-1}, β^κ)`.
///
/// `alpha` and `beta` share a radical index, which fixes the index used for
/// every comparison. With `canonicalize`, the hole is also widened to the
/// nearest support points of `ν` and the result re-checked there.
pub fn check_lem1(
    nu: &AtomicMeasure,
    alpha: &Radical,
    beta: &Radical,
    kappa: u32,
    canonicalize: bool,
) -> Result<TheoremReport> {
    check_kappa(kappa)?;
    if alpha.index() != beta.index() {
        return Err(Error::IndexMismatch {
            left: alpha.index(),
            right: beta.index(),
        });
    }
    let r = alpha.index();
    let nu_s = RadicalSupport::from_measure(nu, r);
    let gamma = Radical::rational(nu.max_point().clone(), r);
    let mut rep = TheoremReport::new("lem1", format!("nu hole ({alpha}, {beta}), kappa={kappa}"));
    let tail = gamma.pow(kappa - 1);
    let image = |a: &Radical| a.mul(&tail).expect("same index");
    rep.precondition("nu((alpha, beta)) = 0", nu_s.open_empty(alpha, beta));
    rep.precondition(
        "0 <= alpha < beta <= gamma = sup supp nu",
        lt(alpha, beta) && le(beta, &gamma),
    );
    rep.precondition(
        "alpha*gamma^(kappa-1) < beta^kappa",
        lt(&image(alpha), &beta.pow(kappa)),
    );
    let mut rep = match rep.skip_on_failed_preconditions() {
        Ok(r) => r,
        Err(r) => return Ok(r),
    };

    let mu = kappa_power_measure(nu, kappa)?;
    let mu_s = RadicalSupport::from_measure(&mu, r);
    let theta3 = gamma.pow(kappa);
    let sup_mu = Radical::rational(mu.max_point().clone(), r);

    let conclusions = |rep: &mut TheoremReport, a: &Radical, b: &Radical, suffix: &str| {
        let (t1, t2) = (image(a), b.pow(kappa));
        rep.clause(Clause::new(
            format!("(i){suffix}"),
            vec![],
            Check::new(
                "mu((theta1, theta2)) = 0 and theta3 = sup supp mu",
                mu_s.open_empty(&t1, &t2) && cmp(&theta3, &sup_mu) == Ordering::Equal,
            ),
        ));
        rep.clause(Clause::new(
            format!("(ii){suffix}"),
            vec![],
            Check::new(
                "alpha in supp nu iff theta1 in supp mu",
                nu_s.contains(a) == mu_s.contains(&t1),
            ),
        ));
        rep.clause(Clause::new(
            format!("(iii){suffix}"),
            vec![],
            Check::new(
                "beta in supp nu iff theta2 in supp mu",
                nu_s.contains(b) == mu_s.contains(&t2),
            ),
        ));
    };
    conclusions(&mut rep, alpha, beta, "");
    if let Some(t1) = image(alpha).to_rational() {
        rep.note(format!("theta1 = {}", s(&t1)));
    }
    if let Some(t2) = beta.pow(kappa).to_rational() {
        rep.note(format!("theta2 = {}", s(&t2)));
    }
    rep.note(format!("theta3 = {theta3}"));

    if canonicalize {
        let alpha_c = nu_s
            .max_at_most(alpha)
            .cloned()
            .unwrap_or_else(|| Radical::zero(r));
        let beta_c = nu_s
            .min_at_least(beta)
            .cloned()
            .expect("gamma bounds beta from above");
        let stays_valid = le(&alpha_c, alpha)
            && le(beta, &beta_c)
            && le(&beta_c, &gamma)
            && nu_s.open_empty(&alpha_c, &beta_c)
            && lt(&image(&alpha_c), &beta_c.pow(kappa));
        rep.clause(Clause::new(
            "canonical widening",
            vec![],
            Check::new(
                "0 <= alpha' <= alpha, beta <= beta' <= gamma, nu((alpha', beta')) = 0, \
                 alpha'*gamma^(kappa-1) < beta'^kappa",
                stays_valid,
            ),
        ));
        if stays_valid {
            conclusions(&mut rep, &alpha_c, &beta_c, " at (alpha', beta')");
        }
        rep.note(format!("alpha' = {alpha_c}, beta' = {beta_c}"));
    }
    Ok(rep.finish())
}

/// Checks which ν-holes are forced by the μ-hole `(θ₁, θ₂)`, given a certified root `nu`.
pub fn check_lem1plus(
    mu: &AtomicMeasure,
    theta1: &Rational,
    theta2: &Rational,
    kappa: u32,
    nu: &NuRepresentation,
) -> Result<TheoremReport> {
    check_kappa(kappa)?;
    require_root(mu, kappa, nu)?;
    let theta3 = mu.max_point().clone();
    let mut rep = TheoremReport::new("lem1+", hole_instance(theta1, theta2, kappa));
    rep.precondition(
        "0 <= theta1 < theta2",
        !theta1.is_negative() && theta1 < theta2,
    );
    rep.precondition(
        "mu((theta1, theta2)) = 0",
        mu.mass_open(theta1, theta2).is_zero(),
    );
    let mut rep = match rep.skip_on_failed_preconditions() {
        Ok(r) => r,
        Err(r) => return Ok(r),
    };
    let nu_s = RadicalSupport::from_nu(nu);
    let beta = Radical::root(theta2.clone(), kappa);
    let beta_dag = Radical::root(theta1.clone(), kappa);
    let beta_in = nu.has_atom_with_power(theta2);

    rep.clause(Clause::new(
        "(i)",
        vec![Check::new(
            "moment sequence determinate (compact support)",
            true,
        )],
        Check::new(
            "nu((beta_dag, beta)) = 0",
            nu_s.open_empty(&beta_dag, &beta),
        ),
    ));
    if theta2 > &theta3 {
        rep.note("theta2 > theta3: only (i) applies");
        return Ok(rep.finish());
    }
    let p = triple_params(theta1, theta2, &theta3, kappa)?;
    let dag = cmp(&p.beta_dag, &p.alpha_dag);
    let gba_below = lt(&p.gamma_over_beta_alpha(), &p.alpha_dag);
    let hole_ab = nu_s.open_empty(&p.alpha, &p.beta);
    let within = Check::new("theta2 <= theta3 = sup supp mu", true);

    rep.clause(Clause::new(
        "(ii)",
        vec![within.clone()],
        Check::new(
            "nu((alpha, alpha_dag)) = 0",
            nu_s.open_empty(&p.alpha, &p.alpha_dag),
        ),
    ));
    let iii_a = dag == Ordering::Less
        || (dag != Ordering::Greater && kappa >= 3)
        || (dag == Ordering::Equal && beta_in);
    rep.clause(Clause::new(
        "(iii-a)",
        vec![
            within.clone(),
            Check::new(
                "beta_dag < alpha_dag, or beta_dag <= alpha_dag and kappa >= 3, \
                 or beta_dag = alpha_dag and beta in supp nu",
                iii_a,
            ),
        ],
        Check::new("nu((alpha, beta)) = 0", hole_ab),
    ));
    rep.clause(Clause::new(
        "(iii-b)",
        vec![
            within,
            Check::new("(gamma/beta)*alpha < alpha_dag", gba_below),
            Check::new("beta in supp nu", beta_in),
        ],
        Check::new("nu((alpha, beta)) = 0", hole_ab),
    ));
    rep.clause(Clause::new(
        "remark: dagger order",
        vec![Check::new(
            "beta_dag <= alpha_dag",
            dag != Ordering::Greater,
        )],
        Check::new(
            "(gamma/beta)*alpha < alpha_dag via theta3*theta1^kappa < theta2^(kappa+1)",
            p.gamma_beta_alpha_below_alpha_dag(),
        ),
    ));
    if hole_ab && !iii_a && !(gba_below && beta_in) {
        rep.note("nu((alpha, beta)) = 0 although neither (iii-a) nor (iii-b) holds");
    }
    Ok(rep.finish())
}

/// Checks the five ι-parameter conditions, each forcing `ν((α, β)) = 0`.
pub fn check_thm17(
    mu: &AtomicMeasure,
    theta1: &Rational,
    theta2: &Rational,
    kappa: u32,
    nu: &NuRepresentation,
) -> Result<TheoremReport> {
    check_kappa(kappa)?;
    require_root(mu, kappa, nu)?;
    let theta3 = mu.max_point().clone();
    let mut rep = TheoremReport::new("thm17", hole_instance(theta1, theta2, kappa));
    rep.precondition(
        "0 < theta1 < theta2 < theta3 = sup supp mu",
        theta1.is_positive() && theta1 < theta2 && theta2 < &theta3,
    );
    rep.precondition(
        "mu((theta1, theta2)) = 0",
        mu.mass_open(theta1, theta2).is_zero(),
    );
    let mut rep = match rep.skip_on_failed_preconditions() {
        Ok(r) => r,
        Err(r) => return Ok(r),
    };
    let p = triple_params(theta1, theta2, &theta3, kappa)?;
    let is = p.iota_s.expect("defined for 0 < theta1 < theta2 < theta3");
    let iss = p
        .iota_s_star
        .expect("defined for 0 < theta1 < theta2 < theta3");
    let beta_in = Check::new("beta in supp nu", nu.has_atom_with_power(theta2));
    let hole = Check::new(
        "nu((alpha, beta)) = 0",
        RadicalSupport::from_nu(nu).open_empty(&p.alpha, &p.beta),
    );
    let k = kappa as u64;
    let conditions = [
        (
            "(i)",
            vec![Check::new("kappa >= iota_s*", k >= iss), beta_in.clone()],
        ),
        (
            "(ii)",
            vec![Check::new("iota_s >= iota_s*", is >= iss), beta_in.clone()],
        ),
        ("(iii)", vec![Check::new("iota_s >= 3", is >= 3), beta_in]),
        ("(iv)", vec![Check::new("iota_s >= 4", is >= 4)]),
        ("(v)", vec![Check::new("iota_s* = 1", iss == 1)]),
    ];
    for (label, hyps) in conditions {
        rep.clause(Clause::new(label, hyps, hole.clone()));
    }
    rep.note(format!("iota_s = {is}, iota_s* = {iss}"));
    Ok(rep.finish())
}

/// Checks the support consequences for a triple `θ₁ < θ₂ ≤ θ₃` against `ν` and its pushforward.
pub fn check_cor1(
    nu: &AtomicMeasure,
    kappa: u32,
    theta1: &Rational,
    theta2: &Rational,
    theta3: &Rational,
) -> Result<TheoremReport> {
    check_order(theta1, theta2, theta3)?;
    check_kappa(kappa)?;
    let mu = kappa_power_measure(nu, kappa)?;
    let p = triple_params(theta1, theta2, theta3, kappa)?;
    let nu_s = RadicalSupport::from_measure(nu, kappa);
    let sup_nu = Radical::rational(nu.max_point().clone(), kappa);
    let mut rep = TheoremReport::new(
        "cor1",
        format!(
            "theta = ({}, {}, {}), kappa={kappa}",
            s(theta1),
            s(theta2),
            s(theta3)
        ),
    );
    let hole12 = mu.mass_open(theta1, theta2).is_zero();
    let top = theta2 == mu.max_point();
    let theta1_in = mu.contains(theta1);
    let equal = theta2 == theta3;
    let beta_in = nu_s.contains(&p.beta);
    let alpha_in = nu_s.contains(&p.alpha);
    let hole_ab = nu_s.open_empty(&p.alpha, &p.beta);

    rep.clause(Clause::new(
        "(i)",
        vec![
            Check::new("theta2 < theta3", !equal),
            Check::new("moment sequence determinate (compact support)", true),
            Check::new("mu((theta1, theta2)) = 0", hole12),
            Check::new(
                "mu((theta2, theta3)) = 0",
                mu.mass_open(theta2, theta3).is_zero(),
            ),
        ],
        Check::new(
            "nu((beta_dag, beta)) = nu((beta, gamma)) = 0",
            nu_s.open_empty(&p.beta_dag, &p.beta) && nu_s.open_empty(&p.beta, &p.gamma),
        ),
    ));
    let top_hyps = vec![
        Check::new("theta2 = theta3", equal),
        Check::new("theta2 = sup supp mu", top),
        Check::new("mu((theta1, theta2)) = 0", hole12),
    ];
    rep.clause(Clause::new(
        "(ii)",
        top_hyps.clone(),
        Check::new(
            "nu((alpha, beta)) = 0 and beta in supp nu",
            hole_ab && beta_in,
        ),
    ));
    let mut hyps = top_hyps;
    hyps.push(Check::new("theta1 in supp mu", theta1_in));
    rep.clause(Clause::new(
        "(iii)",
        hyps,
        Check::new(
            "nu((alpha, beta)) = 0 and alpha, beta in supp nu",
            hole_ab && alpha_in && beta_in,
        ),
    ));
    let a = theta1_in && top && hole12;
    let b = alpha_in && cmp(&p.beta, &sup_nu) == Ordering::Equal && hole_ab;
    rep.clause(Clause::new(
        "(iv)",
        vec![Check::new("theta2 = theta3", equal)],
        Check::new(
            "(theta1 in supp mu, theta2 = sup supp mu, mu((theta1, theta2)) = 0) iff \
             (alpha in supp nu, beta = sup supp nu, nu((alpha, beta)) = 0)",
            a == b,
        ),
    ));
    if equal {
        rep.note(format!("(iv)(a) = {a}, (iv)(b) = {b}"));
    }
    Ok(rep.finish())
}

/// Checks that the bottom of `supp μ` is the κ-th power of the bottom of `supp ν`.
pub fn check_lower_support(nu: &AtomicMeasure, kappa: u32) -> Result<TheoremReport> {
    check_kappa(kappa)?;
    let mu = kappa_power_measure(nu, kappa)?;
    let nu_s = RadicalSupport::from_measure(nu, kappa);
    let b = nu.min_point();
    let theta = mu.min_point();
    let root_theta = Radical::root(theta.clone(), kappa);
    let b_pow = crate::numerics::rpow(b, kappa as u64);
    let mut rep = TheoremReport::new(
        "lower-support",
        format!("min supp nu = {}, kappa={kappa}", s(b)),
    );
    rep.clause(Clause::new(
        "(i)",
        vec![
            Check::new("nu([0, b)) = 0", nu.mass_below(b).is_zero()),
            Check::new("b in supp nu", nu.contains(b)),
        ],
        Check::new(
            "mu([0, b^kappa)) = 0 and b^kappa in supp mu",
            mu.mass_below(&b_pow).is_zero() && mu.contains(&b_pow),
        ),
    ));
    let below = Check::new("mu([0, theta)) = 0", mu.mass_below(theta).is_zero());
    let nu_below = nu_s.below_empty(&root_theta);
    rep.clause(Clause::new(
        "(ii)",
        vec![below.clone()],
        Check::new("nu([0, theta^(1/kappa))) = 0", nu_below),
    ));
    rep.clause(Clause::new(
        "(iii)",
        vec![below, Check::new("theta in supp mu", mu.contains(theta))],
        Check::new(
            "nu([0, theta^(1/kappa))) = 0 and theta^(1/kappa) in supp nu",
            nu_below && nu_s.contains(&root_theta),
        ),
    ));
    rep.note(format!("min supp mu = {}", s(theta)));
    Ok(rep.finish())
}

/// Checks the support equivalence across all κ with a Stieltjes κ-th root,
/// deciding roots for `κ = 2, …, kappa_max`.
pub fn check_co2(
    mu: &AtomicMeasure,
    theta1: &Rational,
    theta2: &Rational,
    kappa_max: u32,
) -> Result<TheoremReport> {
    check_kappa(kappa_max)?;
    let decisions = (2..=kappa_max)
        .map(|k| decide_root(mu, k))
        .collect::<Result<Vec<_>>>()?;
    check_co2_with(mu, theta1, theta2, &decisions)
}

/// [`check_co2`] with root decisions computed by the caller; `decisions`
/// covers `κ = 2, …, kappa_max` without gaps.
pub fn check_co2_with(
    mu: &AtomicMeasure,
    theta1: &Rational,
    theta2: &Rational,
    decisions: &[RootDecision],
) -> Result<TheoremReport> {
    for (i, d) in decisions.iter().enumerate() {
        if d.kappa() != i as u32 + 2 {
            return Err(Error::usage(
                "root decisions must cover kappa = 2, 3, ... in order",
            ));
        }
    }
    let kappa_max = decisions.len() as u32 + 1;
    let theta3 = mu.max_point().clone();
    let mut rep = TheoremReport::new(
        "co2",
        format!("hole ({}, {}), kappa <= {kappa_max}", s(theta1), s(theta2)),
    );
    rep.precondition(
        "0 < theta1 < theta2 < theta3 = sup supp mu",
        theta1.is_positive() && theta1 < theta2 && theta2 < &theta3,
    );
    rep.precondition(
        "mu((theta1, theta2)) = 0",
        mu.mass_open(theta1, theta2).is_zero(),
    );
    let rep = match rep.skip_on_failed_preconditions() {
        Ok(r) => r,
        Err(r) => return Ok(r),
    };
    let iss = iota_s_star(theta1, theta2, &theta3).expect("ordered triple");
    if iss != 1 {
        return Ok(rep.skip(format!("iota_s* = {iss} != 1")));
    }
    let roots: Vec<&NuRepresentation> = decisions.iter().filter_map(|d| d.nu()).collect();
    let j: Vec<u32> = roots.iter().map(|n| n.kappa).collect();
    if j.is_empty() {
        return Ok(rep.skip(format!("J is empty on [2, {kappa_max}]")));
    }
    let mut rep = rep;
    let in_mu = mu.contains(theta2);
    let some = roots.iter().any(|n| n.has_atom_with_power(theta2));
    let every = roots.iter().all(|n| n.has_atom_with_power(theta2));
    rep.clause(Clause::new(
        "equivalence",
        vec![
            Check::new("iota_s* = 1", true),
            Check::new("J nonempty", true),
        ],
        Check::new(
            "theta2 in supp mu iff beta(kappa) in supp nu_kappa for some kappa in J \
             iff for every kappa in J",
            in_mu == some && some == every,
        ),
    ));
    rep.note(format!(
        "J = {{{}}}",
        j.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
    ));
    rep.note(format!("(i) = {in_mu}, (ii) = {some}, (iii) = {every}"));
    Ok(rep.finish())
}
