use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use super::{random_measure_from, random_triple, GenParams, MAX_ATOMS};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::feasibility::{feasible, product_count, witness};
use crate::holes::{
    check_co2_with, check_cor1, check_lem1, check_lem1plus, check_lower_support, check_thm17,
    iota_s, podloga_scan, techn_plus_relations, techn_relations, TheoremReport,
};
use crate::measures::{find_holes, kappa_power_measure, AtomicMeasure};
use crate::numerics::{pow2, rational_to_string, Radical, Rational, DEFAULT_PRECISION};
use crate::root::decide_root;

pub const MAX_TRIALS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Roundtrip,
    Theorems,
    Iota,
    Feasibility,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Roundtrip,
        Suite::Theorems,
        Suite::Iota,
        Suite::Feasibility,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roundtrip => "roundtrip",
            Suite::Theorems => "theorems",
            Suite::Iota => "iota",
            Suite::Feasibility => "feasibility",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown suite {s:?}")))
    }
}

/// One failed trial.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub trial: u64,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<TheoremReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzSummary {
    pub suite: Suite,
    pub seed: u64,
    pub trials: u64,
    /// Clauses or equalities evaluated across all trials.
    pub checks: u64,
    /// Trials that hit an enumeration guard and were not evaluated.
    pub skipped: u64,
    /// Sorted by trial.
    pub violations: Vec<Violation>,
    pub elapsed_ms: u128,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
struct Outcome {
    checks: u64,
    skipped: bool,
    violations: Vec<Violation>,
}

impl Outcome {
    fn fail(&mut self, trial: u64, detail: impl Into<String>) {
        self.violations.push(Violation {
            trial,
            detail: detail.into(),
            report: None,
        });
    }

    fn record(&mut self, trial: u64, report: Result<TheoremReport>) {
        match report {
            Ok(r) => {
                self.checks += r.clauses.len() as u64;
                if r.is_violation() {
                    self.violations.push(Violation {
                        trial,
                        detail: r.violation.clone().unwrap_or_default(),
                        report: Some(r),
                    });
                }
            }
            Err(Error::GuardExceeded { .. }) => self.skipped = true,
            Err(e) => self.fail(trial, format!("checker error: {e}")),
        }
    }
}

/// Runs `trials` independent trials of `suite`.
pub fn run_suite(
    suite: Suite,
    params: &GenParams,
    trials: u64,
    execution: Execution,
) -> Result<FuzzSummary> {
    params.validate()?;
    if trials > MAX_TRIALS {
        return Err(Error::usage(format!("trials must be at most {MAX_TRIALS}")));
    }
    let start = Instant::now();
    let indices: Vec<u64> = (0..trials).collect();
    let outcomes = execution.map(&indices, |&i| match suite {
        Suite::Roundtrip => roundtrip_trial(params, i),
        Suite::Theorems => theorems_trial(params, i),
        Suite::Iota => iota_trial(params, i),
        Suite::Feasibility => feasibility_trial(params, i),
    });
    let mut summary = FuzzSummary {
        suite,
        seed: params.seed,
        trials,
        checks: 0,
        skipped: 0,
        violations: Vec::new(),
        elapsed_ms: 0,
    };
    for o in outcomes {
        summary.checks += o.checks;
        summary.skipped += u64::from(o.skipped);
        summary.violations.extend(o.violations);
    }
    summary.violations.sort_by_key(|v| v.trial);
    summary.elapsed_ms = start.elapsed().as_millis();
    Ok(summary)
}

fn pick_kappa(rng: &mut impl Rng, params: &GenParams) -> u32 {
    params.kappa_set[rng.random_range(0..params.kappa_set.len())]
}

fn describe(nu: &AtomicMeasure) -> String {
    nu.to_json_string()
}

/// `ν → μ → decide_root` must certify and return `ν` exactly.
fn roundtrip_trial(params: &GenParams, i: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = params.rng(i);
    let nu = random_measure_from(&mut rng, params);
    let kappa = pick_kappa(&mut rng, params);
    let mu = match kappa_power_measure(&nu, kappa) {
        Ok(mu) => mu,
        Err(Error::GuardExceeded { .. }) => {
            out.skipped = true;
            return out;
        }
        Err(e) => {
            out.fail(i, format!("pushforward failed: {e}"));
            return out;
        }
    };
    out.checks += 1;
    match decide_root(&mu, kappa) {
        Ok(d) => match d.nu().and_then(|r| r.to_measure()) {
            Some(back) if back == nu => {}
            Some(back) => out.fail(
                i,
                format!(
                    "kappa={kappa}: recovered {} from {}",
                    describe(&back),
                    describe(&nu)
                ),
            ),
            None => out.fail(
                i,
                format!("kappa={kappa}: root of {} not certified", describe(&nu)),
            ),
        },
        Err(Error::GuardExceeded { .. }) => out.skipped = true,
        Err(e) => out.fail(i, format!("decide_root failed: {e}")),
    }
    out
}

/// Every hole of `μ` and of `ν` through every applicable checker.
fn theorems_trial(params: &GenParams, i: u64) -> Outcome {
    let mut out = Outcome::default();
    let mut rng = params.rng(i);
    let nu = random_measure_from(&mut rng, params);
    let kappa = pick_kappa(&mut rng, params);
    let mu = match kappa_power_measure(&nu, kappa) {
        Ok(mu) => mu,
        Err(_) => {
            out.skipped = true;
            return out;
        }
    };
    let decisions = match (2..=params.kappa_max())
        .map(|k| decide_root(&mu, k))
        .collect::<Result<Vec<_>>>()
    {
        Ok(d) => d,
        Err(Error::GuardExceeded { .. }) => {
            out.skipped = true;
            return out;
        }
        Err(e) => {
            out.fail(i, format!("decide_root failed: {e}"));
            return out;
        }
    };
    let Some(root) = decisions[kappa as usize - 2].nu().cloned() else {
        out.fail(
            i,
            format!("kappa={kappa}: root of {} not certified", describe(&nu)),
        );
        return out;
    };
    let theta3 = mu.max_point().clone();
    for hole in find_holes(&mu) {
        let (t1, t2) = (&hole.lower, &hole.upper);
        out.record(i, check_lem1plus(&mu, t1, t2, kappa, &root));
        out.record(i, check_thm17(&mu, t1, t2, kappa, &root));
        out.record(i, check_cor1(&nu, kappa, t1, t2, &theta3));
        out.record(i, check_co2_with(&mu, t1, t2, &decisions));
        if !t1.is_zero() && t2 < &theta3 {
            out.record(i, techn_plus_relations(t1, t2, &theta3, kappa));
        }
        let lower = iota_s(t1, t2, &theta3).unwrap_or(2).max(2);
        if lower <= 194 {
            let top = lower as u32 + 6;
            out.record(i, podloga_scan(t1, t2, &theta3, top, DEFAULT_PRECISION));
        }
    }
    // ν-holes, including the leading gap (0, min supp ν)
    let points: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(nu.support().cloned())
        .collect();
    for w in points.windows(2) {
        let a = Radical::rational(w[0].clone(), kappa);
        let b = Radical::rational(w[1].clone(), kappa);
        out.record(i, check_lem1(&nu, &a, &b, kappa, true));
    }
    out.record(i, check_lower_support(&nu, kappa));
    out
}

/// The ι-parameter relations on a random ordered triple.
fn iota_trial(params: &GenParams, i: u64) -> Outcome {
    let mut out = Outcome::default();
    let (a, b, c) = random_triple(params, i);
    out.record(i, techn_relations(&a, &b, &c));
    for &kappa in &params.kappa_set {
        out.record(i, techn_plus_relations(&a, &b, &c, kappa));
    }
    out
}

/// All feasible `(M, N)` with `N ≤ MAX_ATOMS`, in a fixed order.
fn feasible_pairs() -> Vec<(u64, u64)> {
    (1..=MAX_ATOMS as u64)
        .flat_map(|n| (2 * n - 1..=n * (n + 1) / 2).map(move |m| (m, n)))
        .collect()
}

/// A witness for a feasible pair, plus a random tuple whose product count
/// must itself be feasible.
fn feasibility_trial(params: &GenParams, i: u64) -> Outcome {
    let mut out = Outcome::default();
    let pairs = feasible_pairs();
    let (m, n) = pairs[(i % pairs.len() as u64) as usize];
    match witness(m, n) {
        Ok(w) => {
            out.checks += 1;
            if product_count(&w.xs).ok() != Some(m) {
                out.fail(
                    i,
                    format!("witness for ({m}, {n}) has the wrong product count"),
                );
            }
        }
        Err(e) => out.fail(i, format!("witness({m}, {n}) failed: {e}")),
    }
    let mut rng = params.rng(i);
    let size = rng.random_range(1..=params.max_atoms);
    let mut xs: Vec<Rational> = Vec::new();
    while xs.len() < size {
        let x =
            pow2(rng.random_range(-6..=6)) * Rational::from_integer(rng.random_range(1..=3).into());
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    xs.sort();
    match product_count(&xs) {
        Ok(count) => {
            out.checks += 1;
            if !feasible(count, size as u64) {
                let shown: Vec<String> = xs.iter().map(rational_to_string).collect();
                out.fail(
                    i,
                    format!(
                        "{} points [{}] give {count} products",
                        size,
                        shown.join(", ")
                    ),
                );
            }
        }
        Err(e) => out.fail(i, format!("product_count failed: {e}")),
    }
    out
}
