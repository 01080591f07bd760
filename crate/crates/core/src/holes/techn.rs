use std::cmp::Ordering;

use num_traits::Signed;

use super::report::{Check, Clause, TheoremReport};
use super::{geometric_order, iota_s, iota_s_star, triple_params};
use crate::error::{Error, Result};
use crate::numerics::{pow2, radical_compare, rational_to_string, Rational};

fn strict_triple(theta1: &Rational, theta2: &Rational, theta3: &Rational) -> Result<(u64, u64)> {
    if !theta1.is_positive() || theta1 >= theta2 || theta2 >= theta3 {
        return Err(Error::usage(format!(
            "need 0 < theta1 < theta2 < theta3, got ({}, {}, {})",
            rational_to_string(theta1),
            rational_to_string(theta2),
            rational_to_string(theta3)
        )));
    }
    let is = iota_s(theta1, theta2, theta3).expect("strict triple");
    let iss = iota_s_star(theta1, theta2, theta3).expect("strict triple");
    Ok((is, iss))
}

fn instance(theta1: &Rational, theta2: &Rational, theta3: &Rational) -> String {
    format!(
        "theta = ({}, {}, {})",
        rational_to_string(theta1),
        rational_to_string(theta2),
        rational_to_string(theta3)
    )
}

/// The eight relations between `ι_s` and `ι_s*`.
pub fn techn_relations(
    theta1: &Rational,
    theta2: &Rational,
    theta3: &Rational,
) -> Result<TheoremReport> {
    let (is, iss) = strict_triple(theta1, theta2, theta3)?;
    let geo = geometric_order(theta1, theta2, theta3);
    let mut rep = TheoremReport::new("techn", instance(theta1, theta2, theta3));
    let c = Check::new;
    let implications = [
        ("(i)", c("iota_s = 2", is == 2), c("iota_s* >= 2", iss >= 2)),
        (
            "(ii)",
            c("iota_s = 3", is == 3),
            c("iota_s* in {1, 2}", iss <= 2),
        ),
        (
            "(iv)",
            c("iota_s >= 4", is >= 4),
            c("iota_s* = 1", iss == 1),
        ),
        (
            "(vi)",
            c("iota_s* = 1", iss == 1),
            c("iota_s >= 3", is >= 3),
        ),
        (
            "(vii)",
            c("iota_s* = 2", iss == 2),
            c("iota_s in {2, 3}", is == 2 || is == 3),
        ),
        (
            "(viii)",
            c("iota_s* >= 3", iss >= 3),
            c("iota_s = 2", is == 2),
        ),
    ];
    for (label, hyp, concl) in implications {
        rep.clause(Clause::new(label, vec![hyp], concl));
    }
    rep.clause(Clause::new(
        "(iii)",
        vec![],
        c(
            "iota_s = 3 and iota_s* = 2 iff theta1*theta3 = theta2^2",
            (is == 3 && iss == 2) == (geo == Ordering::Equal),
        ),
    ));
    rep.clause(Clause::new(
        "(v)",
        vec![],
        c(
            "iota_s* = 1 iff theta1*theta3 < theta2^2",
            (iss == 1) == (geo == Ordering::Less),
        ),
    ));
    rep.clauses.sort_by_key(|cl| roman_rank(&cl.label));
    rep.note(format!("iota_s = {is}, iota_s* = {iss}"));
    Ok(rep.finish())
}

fn roman_rank(label: &str) -> usize {
    const ORDER: [&str; 8] = [
        "(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "(vii)", "(viii)",
    ];
    ORDER
        .iter()
        .position(|l| *l == label)
        .unwrap_or(ORDER.len())
}

/// The κ-dependent relations between the dagger points and the ι-parameters.
pub fn techn_plus_relations(
    theta1: &Rational,
    theta2: &Rational,
    theta3: &Rational,
    kappa: u32,
) -> Result<TheoremReport> {
    let (is, iss) = strict_triple(theta1, theta2, theta3)?;
    let p = triple_params(theta1, theta2, theta3, kappa)?;
    let mut rep = TheoremReport::new(
        "techn+",
        format!("{}, kappa={kappa}", instance(theta1, theta2, theta3)),
    );
    let dag_equal = p.dagger_order() == Ordering::Equal;
    rep.clause(Clause::new(
        "(i)",
        vec![
            Check::new("alpha_dag = beta_dag", dag_equal),
            Check::new("kappa >= 3", kappa >= 3),
        ],
        Check::new("iota_s* = 1", iss == 1),
    ));
    rep.clause(Clause::new(
        "(ii)",
        vec![Check::new("kappa = 2", kappa == 2)],
        Check::new(
            "alpha_dag = beta_dag iff iota_s = 3 and iota_s* = 2",
            dag_equal == (is == 3 && iss == 2),
        ),
    ));
    let radical_route =
        radical_compare(&p.gamma_over_beta_alpha(), &p.alpha_dag).ok() == Some(Ordering::Less);
    rep.clause(Clause::new(
        "(iii)",
        vec![Check::new("kappa >= iota_s*", kappa as u64 >= iss)],
        Check::new(
            "(gamma/beta)*alpha < alpha_dag, i.e. (theta3/theta1)^kappa > (theta3/theta2)^(kappa+1)",
            radical_route && p.gamma_beta_alpha_below_alpha_dag(),
        ),
    ));
    for relation in p.order_relations() {
        rep.clause(Clause::new("order relations", vec![], relation));
    }
    rep.note(format!("iota_s = {is}, iota_s* = {iss}"));
    Ok(rep.finish())
}

/// A triple with `ι_s = 2` and `ι_s* = p`: `(2^{-(2p+1)}, 2^{-(2p-1)}, 1)`.
pub fn techn_witness(p: u32) -> Result<(Rational, Rational, Rational)> {
    if !(2..=64).contains(&p) {
        return Err(Error::usage(format!("p must lie in [2, 64], got {p}")));
    }
    let p = p as i64;
    let theta = (pow2(-(2 * p + 1)), pow2(-(2 * p - 1)), pow2(0));
    let is = iota_s(&theta.0, &theta.1, &theta.2);
    let iss = iota_s_star(&theta.0, &theta.1, &theta.2);
    if is != Some(2) || iss != Some(p as u64) {
        return Err(Error::usage(format!(
            "witness check failed for p = {p}: iota_s = {is:?}, iota_s* = {iss:?}"
        )));
    }
    Ok(theta)
}
