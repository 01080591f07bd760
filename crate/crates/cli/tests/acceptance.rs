//! Acceptance suite: one pass/fail line per criterion, then a hard failure
//! if any criterion did not pass. Runtime limits are wall-clock and include
//! process start-up for the criteria exercised through the binary.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use momentroot::feasibility::table;
use momentroot::harness::three_atom_mismatches;
use momentroot::holes::{
    check_thm17, dagger_gap_sequence, iota_s, iota_s_star, podloga_scan, techn_witness,
    Monotonicity, RadicalSupport,
};
use momentroot::numerics::{frac, int, pow2, rpow};
use momentroot::{
    decide_root, feasible, kappa_power_measure, product_count, triple_params, witness,
    AtomicMeasure, BigFloat, Radical, Rational,
};
use serde_json::Value;

type Verdict = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_momentroot"))
}

fn run(args: &[&str]) -> Result<(Output, Value), String> {
    let out = bin().args(args).output().map_err(|e| e.to_string())?;
    let json = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("{args:?}: stdout is not JSON ({e})"))?;
    Ok((out, json))
}

fn write_measure(dir: &Path, name: &str, m: &AtomicMeasure) -> String {
    let path = dir.join(name);
    std::fs::write(&path, m.to_json_string()).expect("temp file writable");
    path.to_string_lossy().into_owned()
}

fn uniform(points: &[Rational]) -> AtomicMeasure {
    AtomicMeasure::uniform(points.iter().cloned()).expect("distinct positive points")
}

fn exact(r: &Radical) -> Option<Rational> {
    r.to_rational()
}

/// Largest `m` with `base^m ≤ target`, by plain repeated multiplication.
fn naive_floor_log(base: &Rational, target: &Rational) -> u64 {
    let mut m = 0;
    let mut acc = base.clone();
    while &acc <= target {
        acc *= base;
        m += 1;
    }
    m
}

fn criterion_1() -> Verdict {
    let (out, rows) = run(&["table", "--max-m", "15", "--json"])?;
    ensure(out.status.success(), "table exited with failure")?;
    let column = |key: &str| -> Vec<u64> {
        rows.as_array()
            .map(|r| r.iter().filter_map(|row| row[key].as_u64()).collect())
            .unwrap_or_default()
    };
    let (minus, plus) = (column("n_minus"), column("n_plus"));
    ensure(
        minus == [1, 2, 2, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 5],
        format!("n- = {minus:?}"),
    )?;
    ensure(
        plus == [1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8],
        format!("n+ = {plus:?}"),
    )?;
    Ok(format!("n- = {minus:?}, n+ = {plus:?}"))
}

fn criterion_2() -> Verdict {
    for n in 1..=10_000 {
        ensure(
            !feasible(2, n) && !feasible(4, n),
            format!("M = 2 or 4 feasible at N = {n}"),
        )?;
    }
    let mut verified = 0;
    for row in table(36) {
        for n in row.n_minus..=row.n_plus {
            let w = witness(row.m, n).map_err(|e| format!("witness({}, {n}): {e}", row.m))?;
            let count = product_count(&w.xs).map_err(|e| e.to_string())?;
            ensure(
                count == row.m && w.xs.len() as u64 == n,
                format!("({}, {n}) miscounted", row.m),
            )?;
            verified += 1;
        }
    }
    Ok(format!(
        "M in {{2, 4}} infeasible for N <= 10^4; {verified} witnesses for M <= 36 verified"
    ))
}

fn criterion_3(dir: &Path) -> Verdict {
    let nu = uniform(&[pow2(-33), int(1), int(8)]);
    let mu = kappa_power_measure(&nu, 4).map_err(|e| e.to_string())?;
    ensure(mu.len() == 15, format!("card supp mu = {}", mu.len()))?;
    let file = write_measure(dir, "prznotsq.json", &mu);
    let mut codes = Vec::new();
    for kappa in ["2", "3", "4"] {
        let (out, json) = run(&["decide", "--measure", &file, "--kappa", kappa])?;
        codes.push((
            out.status.code(),
            json["status"].as_str().map(str::to_owned),
        ));
    }
    let yes = (Some(0), Some("CertifiedYes".to_owned()));
    let no = (Some(3), Some("CertifiedNo".to_owned()));
    ensure(
        codes == [yes.clone(), no, yes],
        format!("decide results {codes:?}"),
    )?;
    let d4 = decide_root(&mu, 4).map_err(|e| e.to_string())?;
    ensure(
        d4.nu().and_then(|r| r.to_measure()) == Some(nu),
        "kappa = 4 root is not nu",
    )?;
    Ok("card supp mu = 15; kappa 2, 4 CertifiedYes (exact nu at 4); kappa 3 CertifiedNo".into())
}

fn criterion_4() -> Verdict {
    let mu = AtomicMeasure::new([(int(1), int(1)), (int(2), int(2)), (int(4), int(1))])
        .map_err(|e| e.to_string())?;
    let d2 = decide_root(&mu, 2).map_err(|e| e.to_string())?;
    ensure(
        d2.nu().and_then(|r| r.to_measure()) == Some(uniform(&[int(1), int(2)])),
        "kappa = 2 root is not delta_1 + delta_2",
    )?;
    for kappa in 3..=5 {
        let d = decide_root(&mu, kappa).map_err(|e| e.to_string())?;
        ensure(!d.is_yes(), format!("kappa = {kappa} certified yes"))?;
    }
    let (out, json) = run(&[
        "params", "--theta1", "1", "--theta2", "2", "--theta3", "4", "--kappa", "2",
    ])?;
    ensure(out.status.success(), "params failed")?;
    ensure(
        json["iota_s"] == 3 && json["iota_s_star"] == 2,
        "iota values",
    )?;
    ensure(
        json["alpha_dag"]["exact"] == "1" && json["beta_dag"]["exact"] == "1",
        "alpha_dag and beta_dag not exactly 1",
    )?;
    ensure(
        json["alpha_dag_vs_beta_dag"] == "Equal",
        "dagger order not Equal",
    )?;
    Ok("nu = delta_1 + delta_2 at kappa 2; kappa 3..5 CertifiedNo; iota = (3, 2), alpha_dag = beta_dag = 1".into())
}

fn criterion_5() -> Verdict {
    let nu = uniform(&[frac(1, 6), frac(1, 3), int(1), int(3)]);
    let mu = kappa_power_measure(&nu, 2).map_err(|e| e.to_string())?;
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
    let support: Vec<Rational> = mu.support().cloned().collect();
    ensure(support == expected, "supp mu differs")?;
    let p = triple_params(&frac(1, 2), &int(1), &int(9), 2).map_err(|e| e.to_string())?;
    ensure(
        p.iota_s == Some(2) && p.iota_s_star == Some(4),
        "iota values",
    )?;
    ensure(exact(&p.alpha) == Some(frac(1, 6)), "alpha != 1/6")?;
    ensure(exact(&p.alpha_dag) == Some(frac(1, 3)), "alpha_dag != 1/3")?;
    let root = decide_root(&mu, 2).map_err(|e| e.to_string())?;
    let root = root.nu().ok_or("mu has no certified square root")?;
    let r = check_thm17(&mu, &frac(1, 2), &int(1), 2, root).map_err(|e| e.to_string())?;
    let applying: Vec<&str> = r
        .clauses
        .iter()
        .filter(|c| c.applies())
        .map(|c| c.label.as_str())
        .collect();
    ensure(
        r.clauses.len() == 5 && applying.is_empty(),
        format!("conditions holding: {applying:?}"),
    )?;
    ensure(
        nu.mass_open(&frac(1, 6), &int(1)) > Rational::from_integer(0.into()),
        "nu((1/6, 1)) = 0",
    )?;
    ensure(nu.contains(&frac(1, 3)), "1/3 not an atom")?;
    Ok("supp mu matches; iota = (2, 4), alpha = 1/6, alpha_dag = 1/3; all five conditions false; nu((1/6, 1)) > 0 via 1/3".into())
}

fn criterion_6() -> Verdict {
    let nu = uniform(&[frac(1, 16), int(2), int(16)]);
    let mu = kappa_power_measure(&nu, 2).map_err(|e| e.to_string())?;
    let support: Vec<Rational> = mu.support().cloned().collect();
    let expected = [frac(1, 256), frac(1, 8), int(1), int(4), int(32), int(256)];
    ensure(support == expected, format!("supp mu = {support:?}"))?;
    ensure(
        nu.mass_open(&frac(1, 16), &int(2)) == Rational::from_integer(0.into()),
        "nu((1/16, 2)) > 0",
    )?;
    ensure(
        nu.contains(&frac(1, 16)) && nu.contains(&int(2)),
        "endpoints not atoms of nu",
    )?;
    let p = triple_params(&int(1), &int(4), &int(256), 2).map_err(|e| e.to_string())?;
    ensure(
        p.dagger_order() == std::cmp::Ordering::Less,
        "alpha_dag < beta_dag fails",
    )?;
    let cmp = momentroot::radical_compare(&p.gamma_over_beta_alpha(), &p.alpha_dag)
        .map_err(|e| e.to_string())?;
    ensure(
        cmp == std::cmp::Ordering::Greater,
        "(gamma/beta) alpha > alpha_dag fails",
    )?;
    ensure(
        p.iota_s == Some(2) && p.iota_s_star == Some(4),
        "iota_s = 2 < 4 = iota_s* fails",
    )?;
    let support_nu = RadicalSupport::from_measure(&nu, 2);
    ensure(
        support_nu.open_empty(&p.alpha, &p.beta),
        "radical hole check fails",
    )?;
    Ok("supp mu matches; nu((1/16, 2)) = 0 with both ends atoms; alpha_dag < beta_dag; (gamma/beta) alpha > alpha_dag; iota = (2, 4)".into())
}

fn criterion_7() -> Verdict {
    let nu = uniform(&[frac(1, 5), int(1), int(2)]);
    let mu = kappa_power_measure(&nu, 3).map_err(|e| e.to_string())?;
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
    let support: Vec<Rational> = mu.support().cloned().collect();
    ensure(support == expected, format!("supp mu = {support:?}"))?;
    let d = decide_root(&mu, 3).map_err(|e| e.to_string())?;
    let root = d.nu().ok_or("no certified cube root")?;
    ensure(
        root.entries.len() == 10,
        format!("{} candidates", root.entries.len()),
    )?;
    ensure(
        root.support_size() == 3,
        format!("{} positive entries", root.support_size()),
    )?;
    ensure(root.to_measure() == Some(nu), "recovered root differs")?;
    Ok("10 increasing products; 3 positive-rho entries among 10 candidates".into())
}

fn criterion_8() -> Verdict {
    let (cases, mismatches) = three_atom_mismatches(6, 8)?;
    ensure(cases == 35 * 512, format!("{cases} cases"))?;
    ensure(mismatches == 0, format!("{mismatches} mismatches"))?;
    Ok(format!("{cases} measures, 0 mismatches"))
}

fn criterion_9() -> Verdict {
    let mut parts = Vec::new();
    for (suite, trials) in [("roundtrip", "1000"), ("theorems", "500"), ("iota", "2000")] {
        let start = Instant::now();
        let (out, json) = run(&[
            "fuzz",
            "--suite",
            suite,
            "--trials",
            trials,
            "--seed",
            "0",
            "--kappa-max",
            "4",
        ])?;
        let elapsed = start.elapsed();
        let violations = json["violations"].as_array().map_or(usize::MAX, Vec::len);
        ensure(
            out.status.success() && violations == 0,
            format!("{suite}: {violations} violations"),
        )?;
        ensure(json["skipped"] == 0, format!("{suite}: skipped trials"))?;
        ensure(
            elapsed < Duration::from_secs(120),
            format!("{suite}: {elapsed:?}"),
        )?;
        parts.push(format!(
            "{suite} {trials} trials in {:.1}s",
            elapsed.as_secs_f64()
        ));
    }
    Ok(format!("zero violations: {}", parts.join(", ")))
}

fn criterion_10() -> Verdict {
    for p in 2..=10u32 {
        let (a, b, c) = techn_witness(p).map_err(|e| e.to_string())?;
        let is = 1 + naive_floor_log(&(&c / &b), &(&c / &a));
        let iss = 1 + naive_floor_log(&(&b / &a), &(&c / &b));
        ensure(
            is == 2 && iss == p as u64,
            format!("p = {p}: ({is}, {iss})"),
        )?;
        ensure(
            iota_s(&a, &b, &c) == Some(is) && iota_s_star(&a, &b, &c) == Some(iss),
            format!("p = {p}: library iota differs"),
        )?;
    }
    Ok("p = 2..10: iota_s = 2, iota_s* = p by direct powering".into())
}

fn criterion_11() -> Verdict {
    let (t1, t2, t3) = (frac(1, 2), int(1), int(9));
    let r = podloga_scan(&t1, &t2, &t3, 50, 256).map_err(|e| e.to_string())?;
    for label in ["(iii)", "(iv)"] {
        let c = r.clause_by_label(label).ok_or(format!("{label} missing"))?;
        ensure(
            c.applies() && c.conclusion.holds,
            format!("{label} not confirmed"),
        )?;
    }
    // direct: α†(κ) < β†(κ) ⇔ θ₂^κ < θ₁θ₃^{κ-1}, from ι_s = 2 up to 50
    for k in 2..=50u64 {
        ensure(
            rpow(&t2, k) < &t1 * rpow(&t3, k - 1),
            format!("kappa = {k}"),
        )?;
    }
    let gaps = dagger_gap_sequence(&int(2), &frac(5, 2), &int(20_000), 2..=12, 256)
        .map_err(|e| e.to_string())?;
    let values: Vec<BigFloat> = gaps.into_iter().map(|(_, g)| g).collect();
    let Monotonicity::Decreasing { min_margin } = Monotonicity::of(&values) else {
        return Err("gap sequence on (2, 5/2, 20000) not strictly decreasing".into());
    };
    ensure(min_margin.to_rational() > pow2(-100), "margin below 2^-100")?;
    Ok(format!(
        "(iii)/(iv) exact for kappa <= 50; gap decreasing on 2..12, min margin {}",
        min_margin.to_decimal(6)
    ))
}

#[test]
fn acceptance_criteria() {
    let dir = tempfile::tempdir().expect("temp dir");
    type Criterion<'a> = (u32, &'a str, Duration, Box<dyn Fn() -> Verdict + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "bound table",
            Duration::from_secs(1),
            Box::new(criterion_1),
        ),
        (
            2,
            "sparse classes and witnesses",
            Duration::from_secs(10),
            Box::new(criterion_2),
        ),
        (
            3,
            "prznotsq at a = 2",
            Duration::from_secs(5),
            Box::new(|| criterion_3(dir.path())),
        ),
        (
            4,
            "universal pictures at a = 4",
            Duration::MAX,
            Box::new(criterion_4),
        ),
        (
            5,
            "universal pictures 2",
            Duration::MAX,
            Box::new(criterion_5),
        ),
        (
            6,
            "universal pictures 3 at a = 2",
            Duration::MAX,
            Box::new(criterion_6),
        ),
        (
            7,
            "on the left at (1/5, 1, 2)",
            Duration::MAX,
            Box::new(criterion_7),
        ),
        (
            8,
            "three-atom criterion grid",
            Duration::from_secs(60),
            Box::new(criterion_8),
        ),
        (9, "property suites", Duration::MAX, Box::new(criterion_9)),
        (10, "iota witnesses", Duration::MAX, Box::new(criterion_10)),
        (11, "dagger scans", Duration::MAX, Box::new(criterion_11)),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, check) in &criteria {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(detail) if elapsed > *limit => {
                Err(format!("{detail}; took {elapsed:?}, limit {limit:?}"))
            }
            v => v,
        };
        match verdict {
            Ok(detail) => println!(
                "criterion {id:>2} PASS [{name}] {detail} ({:.2}s)",
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                println!(
                    "criterion {id:>2} FAIL [{name}] {why} ({:.2}s)",
                    elapsed.as_secs_f64()
                );
                failed.push(*id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
