//! Worked examples with known exact answers.

use std::cmp::Ordering;

use serde::Serialize;

use crate::feasibility::{feasible, n_minus, n_plus, product_count, witness};
use crate::holes::{
    check_thm17, dagger_gap_sequence, iota_s, iota_s_star, podloga_scan, techn_witness,
    triple_params, Monotonicity, RadicalSupport,
};
use crate::measures::{kappa_power_measure, AtomicMeasure};
use crate::numerics::{
    frac, int, pow2, radical_compare, BigFloat, Radical, Rational, DEFAULT_PRECISION,
};
use crate::root::{decide_root, NuRepresentation};

#[derive(Clone, Debug, Serialize)]
pub struct FixtureResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn uniform(points: &[Rational]) -> AtomicMeasure {
    AtomicMeasure::uniform(points.iter().cloned()).expect("distinct positive points")
}

fn push(nu: &AtomicMeasure, kappa: u32) -> Result<AtomicMeasure, String> {
    kappa_power_measure(nu, kappa).map_err(|e| e.to_string())
}

fn root(mu: &AtomicMeasure, kappa: u32) -> Result<Option<NuRepresentation>, String> {
    decide_root(mu, kappa)
        .map(|d| d.nu().cloned())
        .map_err(|e| e.to_string())
}

fn support(mu: &AtomicMeasure) -> Vec<Rational> {
    mu.support().cloned().collect()
}

fn bound_table() -> Outcome {
    let minus: Vec<u64> = (1..=15).map(n_minus).collect();
    let plus: Vec<u64> = (1..=15).map(n_plus).collect();
    ensure(
        minus == [1, 2, 2, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 5],
        "n_minus row",
    )?;
    ensure(
        plus == [1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8],
        "n_plus row",
    )?;
    Ok(format!("n- = {minus:?}, n+ = {plus:?}"))
}

fn sparse_classes_empty() -> Outcome {
    ensure(
        (1..=10_000).all(|n| !feasible(2, n) && !feasible(4, n)),
        "M = 2 or 4 feasible for some N",
    )?;
    let mut count = 0;
    for m in 1..=36 {
        for n in n_minus(m)..=n_plus(m) {
            let w = witness(m, n).map_err(|e| e.to_string())?;
            ensure(
                product_count(&w.xs).map_err(|e| e.to_string())? == m,
                "witness product count",
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} witnesses for M <= 36 verified"))
}

fn prznotsq() -> Outcome {
    let nu = uniform(&[pow2(-33), int(1), int(8)]);
    let mu = push(&nu, 4)?;
    ensure(mu.len() == 15, "card supp mu = 15")?;
    let at4 = root(&mu, 4)?.ok_or("kappa = 4 not certified")?;
    ensure(
        at4.to_measure().as_ref() == Some(&nu),
        "exact recovery at kappa = 4",
    )?;
    ensure(root(&mu, 2)?.is_some(), "kappa = 2 certified")?;
    ensure(root(&mu, 3)?.is_none(), "kappa = 3 refuted")?;
    Ok("card supp mu = 15; J on [2, 4] = {2, 4}".into())
}

fn universal_pictures() -> Outcome {
    let mu = AtomicMeasure::new([(int(1), int(1)), (int(2), int(2)), (int(4), int(1))])
        .map_err(|e| e.to_string())?;
    let sq = root(&mu, 2)?.ok_or("kappa = 2 not certified")?;
    ensure(
        sq.to_measure() == Some(uniform(&[int(1), int(2)])),
        "square root is d1 + d2",
    )?;
    for k in 3..=5 {
        ensure(root(&mu, k)?.is_none(), "kappa = 3, 4, 5 refuted")?;
    }
    let p = triple_params(&int(1), &int(2), &int(4), 2).map_err(|e| e.to_string())?;
    ensure(
        p.iota_s == Some(3) && p.iota_s_star == Some(2),
        "iota values",
    )?;
    ensure(
        radical_compare(&p.alpha_dag, &p.beta_dag).ok() == Some(Ordering::Equal)
            && p.alpha_dag.to_rational() == Some(int(1)),
        "alpha_dag = beta_dag = 1",
    )?;
    Ok("iota_s = 3, iota_s* = 2, alpha_dag = beta_dag = 1".into())
}

fn universal_pictures_two() -> Outcome {
    let nu = uniform(&[frac(1, 6), frac(1, 3), int(1), int(3)]);
    let mu = push(&nu, 2)?;
    let expected = [
        frac(1, 36),
        frac(1, 18),
        frac(1, 9),
        frac(1, 6),
        frac(1, 3),
        frac(1, 2),
        int(1),
        int(3),
        int(9),
    ];
    ensure(support(&mu) == expected, "supp mu")?;
    let p = triple_params(&frac(1, 2), &int(1), &int(9), 2).map_err(|e| e.to_string())?;
    ensure(
        p.iota_s == Some(2) && p.iota_s_star == Some(4),
        "iota values",
    )?;
    ensure(
        p.alpha.to_rational() == Some(frac(1, 6)) && p.alpha_dag.to_rational() == Some(frac(1, 3)),
        "alpha = 1/6, alpha_dag = 1/3",
    )?;
    let rep = root(&mu, 2)?.ok_or("kappa = 2 not certified")?;
    let r = check_thm17(&mu, &frac(1, 2), &int(1), 2, &rep).map_err(|e| e.to_string())?;
    ensure(r.clauses.len() == 5, "five conditions")?;
    ensure(
        r.clauses.iter().all(|c| !c.applies()),
        "all five conditions false",
    )?;
    let s = RadicalSupport::from_nu(&rep);
    let inside = s
        .point_inside(&p.alpha, &p.beta)
        .ok_or("nu((1/6, 1)) = 0")?;
    ensure(inside.to_rational() == Some(frac(1, 3)), "witness atom 1/3")?;
    Ok("all five conditions false; nu((1/6, 1)) > 0 via 1/3".into())
}

fn universal_pictures_three() -> Outcome {
    let nu = uniform(&[frac(1, 16), int(2), int(16)]);
    let mu = push(&nu, 2)?;
    let expected = [frac(1, 256), frac(1, 8), int(1), int(4), int(32), int(256)];
    ensure(support(&mu) == expected, "supp mu")?;
    let rep = root(&mu, 2)?.ok_or("kappa = 2 not certified")?;
    let s = RadicalSupport::from_nu(&rep);
    let (a, b) = (
        Radical::rational(frac(1, 16), 2),
        Radical::rational(int(2), 2),
    );
    ensure(
        s.open_empty(&a, &b) && s.contains(&a) && s.contains(&b),
        "hole (1/16, 2) of nu",
    )?;
    let p = triple_params(&int(1), &int(4), &int(256), 2).map_err(|e| e.to_string())?;
    ensure(p.dagger_order() == Ordering::Less, "alpha_dag < beta_dag")?;
    ensure(
        radical_compare(&p.gamma_over_beta_alpha(), &p.alpha_dag).ok() == Some(Ordering::Greater),
        "(gamma/beta) alpha > alpha_dag",
    )?;
    ensure(
        p.iota_s == Some(2) && p.iota_s_star == Some(4),
        "iota_s = 2 < 4 = iota_s*",
    )?;
    Ok("nu((1/16, 2)) = 0 with both ends atoms".into())
}

fn on_the_left() -> Outcome {
    let nu = uniform(&[frac(1, 5), int(1), int(2)]);
    let mu = push(&nu, 3)?;
    let expected = [
        frac(1, 125),
        frac(1, 25),
        frac(2, 25),
        frac(1, 5),
        frac(2, 5),
        frac(4, 5),
        int(1),
        int(2),
        int(4),
        int(8),
    ];
    ensure(support(&mu) == expected, "supp mu")?;
    let rep = root(&mu, 3)?.ok_or("kappa = 3 not certified")?;
    ensure(
        rep.entries.len() == 10 && rep.support_size() == 3,
        "3 of 10 candidates",
    )?;
    Ok("3 positive entries among 10 candidates".into())
}

/// `δ_{θ₁}α₁ + δ_{θ₂}α₂ + δ_{θ₃}α₃` has a square root iff `θ₂² = θ₁θ₃` and `α₂² = 4α₁α₃`.
pub fn three_atom_mismatches(max_exp: i64, max_weight: i64) -> Result<(u64, u64), String> {
    let (mut cases, mut mismatches) = (0, 0);
    for e1 in 0..=max_exp {
        for e2 in e1 + 1..=max_exp {
            for e3 in e2 + 1..=max_exp {
                for w1 in 1..=max_weight {
                    for w2 in 1..=max_weight {
                        for w3 in 1..=max_weight {
                            let mu = AtomicMeasure::new([
                                (pow2(e1), int(w1)),
                                (pow2(e2), int(w2)),
                                (pow2(e3), int(w3)),
                            ])
                            .map_err(|e| e.to_string())?;
                            let yes = root(&mu, 2)?.is_some();
                            let predicted = 2 * e2 == e1 + e3 && w2 * w2 == 4 * w1 * w3;
                            cases += 1;
                            mismatches += u64::from(yes != predicted);
                        }
                    }
                }
            }
        }
    }
    Ok((cases, mismatches))
}

fn three_atoms() -> Outcome {
    let (cases, mismatches) = three_atom_mismatches(6, 8)?;
    ensure(mismatches == 0, &format!("{mismatches} mismatches"))?;
    Ok(format!("{cases} measures, 0 mismatches"))
}

fn iota_witnesses() -> Outcome {
    for p in 2..=10 {
        let (a, b, c) = techn_witness(p).map_err(|e| e.to_string())?;
        ensure(
            iota_s(&a, &b, &c) == Some(2) && iota_s_star(&a, &b, &c) == Some(p as u64),
            "iota_s = 2 and iota_s* = p",
        )?;
    }
    Ok("p = 2..10 verified".into())
}

fn dagger_scan() -> Outcome {
    let r = podloga_scan(&frac(1, 2), &int(1), &int(9), 50, DEFAULT_PRECISION)
        .map_err(|e| e.to_string())?;
    for label in ["(iii)", "(iv)"] {
        let c = r.clause_by_label(label).ok_or(label)?;
        ensure(c.applies() && c.conclusion.holds, label)?;
    }
    let gaps = dagger_gap_sequence(
        &int(2),
        &frac(5, 2),
        &int(20_000),
        2..=12,
        DEFAULT_PRECISION,
    )
    .map_err(|e| e.to_string())?;
    let values: Vec<_> = gaps.into_iter().map(|(_, g)| g).collect();
    match Monotonicity::of(&values) {
        Monotonicity::Decreasing { min_margin } => {
            let floor = BigFloat::from_rational(&pow2(-100), DEFAULT_PRECISION);
            ensure(min_margin > floor, "margin above 2^-100")?;
            Ok(format!(
                "decreasing on [2, 12], min margin {}",
                min_margin.to_decimal(6)
            ))
        }
        m => Err(format!("gap sequence is {}", m.label())),
    }
}

type Fixture = (&'static str, fn() -> Outcome);

const FIXTURES: [Fixture; 10] = [
    ("bound table", bound_table),
    ("sparse classes empty", sparse_classes_empty),
    ("prznotsq", prznotsq),
    ("universal pictures", universal_pictures),
    ("universal pictures 2", universal_pictures_two),
    ("universal pictures 3", universal_pictures_three),
    ("on the left", on_the_left),
    ("three-atom criterion", three_atoms),
    ("iota witnesses", iota_witnesses),
    ("dagger scan", dagger_scan),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

/// Runs the fixtures whose name contains `only`, or all of them when it is `None`.
pub fn fixtures_matching(only: Option<&str>) -> Vec<FixtureResult> {
    FIXTURES
        .iter()
        .filter(|(name, _)| only.is_none_or(|o| name.contains(o)))
        .map(|(name, f)| {
            let outcome = f();
            FixtureResult {
                name,
                passed: outcome.is_ok(),
                detail: outcome.unwrap_or_else(|e| format!("failed: {e}")),
            }
        })
        .collect()
}

pub fn fixtures() -> Vec<FixtureResult> {
    fixtures_matching(None)
}
