//! `momentroot`: batch front end for the exact κ-th root analysis.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 invariant violation,
//! 3 when `decide` certifies that no root exists.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use momentroot::feasibility::table;
use momentroot::harness::fixtures_matching;
use momentroot::holes::{
    check_co2_with, check_cor1, check_lem1plus, check_thm17, techn_plus_relations, RadicalReport,
};
use momentroot::numerics::int;
use momentroot::{
    decide_root, exec, feasible, find_holes, n_minus, n_plus, parse_rational, rational_to_string,
    run_suite, triple_params, witness, AtomicMeasure, Execution, GenParams, Rational, RootDecision,
    Suite, TheoremReport,
};

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_NO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "momentroot",
    version,
    about = "Exact kappa-th roots of atomic Stieltjes moment sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decision, support, holes and theorem reports for one measure.
    Analyze {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        kappa: u32,
        /// Include the holes of supp mu with their triple parameters.
        #[arg(long)]
        holes: bool,
        /// Evaluate the hole-transfer checkers on every hole.
        #[arg(long)]
        theorems: bool,
        #[arg(long)]
        json: bool,
    },
    /// Certified decision as JSON; exits 3 on CertifiedNo.
    Decide {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        kappa: u32,
    },
    /// Triple parameters of (theta1, theta2, theta3) at kappa.
    Params {
        #[arg(long, allow_hyphen_values = true)]
        theta1: String,
        #[arg(long, allow_hyphen_values = true)]
        theta2: String,
        #[arg(long, allow_hyphen_values = true)]
        theta3: String,
        #[arg(long)]
        kappa: u32,
    },
    /// Whether some N-atom measure has a square pushforward with M atoms.
    Feasible {
        m: u64,
        n: u64,
        /// Also construct and verify an explicit witness.
        #[arg(long)]
        witness: bool,
    },
    /// The n_minus / n_plus table for M = 1..max_m.
    Table {
        #[arg(long)]
        max_m: u64,
        #[arg(long)]
        json: bool,
    },
    /// Runs a property suite and prints its summary as JSON.
    Fuzz {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Draw kappa from 2..=K.
        #[arg(long)]
        kappa_max: Option<u32>,
        #[arg(long)]
        max_atoms: Option<usize>,
        /// Worker threads; 1 runs sequentially.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Runs the golden examples and prints one line per fixture.
    Fixtures {
        /// Only fixtures whose name contains this string.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    emit(&(serde_json::to_string_pretty(value)? + "\n"))
}

fn load_measure(path: &PathBuf) -> Result<AtomicMeasure> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    AtomicMeasure::from_json_str(&text).with_context(|| format!("in {}", path.display()))
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Analyze {
            measure,
            kappa,
            holes,
            theorems,
            json,
        } => analyze(&load_measure(&measure)?, kappa, holes, theorems, json),
        Command::Decide { measure, kappa } => {
            let d = decide_root(&load_measure(&measure)?, kappa)?;
            print_json(&d.report())?;
            Ok(if d.is_yes() { 0 } else { EXIT_NO })
        }
        Command::Params {
            theta1,
            theta2,
            theta3,
            kappa,
        } => {
            let p = triple_params(
                &parse_rational(&theta1)?,
                &parse_rational(&theta2)?,
                &parse_rational(&theta3)?,
                kappa,
            )?;
            print_json(&p.report())?;
            Ok(0)
        }
        Command::Feasible { m, n, witness: w } => {
            if m == 0 || n == 0 {
                bail!("M and N must be positive");
            }
            let ok = feasible(m, n);
            let mut out = json!({
                "M": m,
                "N": n,
                "feasible": ok,
                "n_minus": n_minus(m),
                "n_plus": n_plus(m),
            });
            if w && ok {
                out["witness"] = serde_json::to_value(witness(m, n)?)?;
            }
            print_json(&out)?;
            Ok(0)
        }
        Command::Table { max_m, json } => {
            if max_m == 0 || max_m > 100_000 {
                bail!("max-m must lie in [1, 100000]");
            }
            let rows = table(max_m);
            if json {
                print_json(&rows)?;
            } else {
                let mut text = format!("{:>6} {:>8} {:>8}\n", "M", "n_minus", "n_plus");
                for r in &rows {
                    writeln!(text, "{:>6} {:>8} {:>8}", r.m, r.n_minus, r.n_plus)?;
                }
                emit(&text)?;
            }
            Ok(0)
        }
        Command::Fuzz {
            suite,
            trials,
            seed,
            kappa_max,
            max_atoms,
            jobs,
        } => {
            let mut params = GenParams::with_seed(seed);
            if let Some(k) = kappa_max {
                if !(2..=8).contains(&k) {
                    bail!("kappa-max must lie in [2, 8]");
                }
                params.kappa_set = (2..=k).collect();
            }
            if let Some(n) = max_atoms {
                params.max_atoms = n;
            }
            let summary = match jobs {
                Some(0) => bail!("jobs must be positive"),
                Some(1) => run_suite(suite, &params, trials, Execution::Sequential)?,
                Some(j) => {
                    exec::with_jobs(j, || run_suite(suite, &params, trials, Execution::Parallel))?
                }
                None => run_suite(suite, &params, trials, Execution::default())?,
            };
            print_json(&summary)?;
            Ok(if summary.passed() { 0 } else { EXIT_VIOLATION })
        }
        Command::Fixtures { only, json } => {
            let results = fixtures_matching(only.as_deref());
            if results.is_empty() {
                bail!("no fixture matches {:?}", only.unwrap_or_default());
            }
            if json {
                print_json(&results)?;
            } else {
                let mut text = String::new();
                for r in &results {
                    let tag = if r.passed { "PASS" } else { "FAIL" };
                    writeln!(text, "{tag} {}: {}", r.name, r.detail)?;
                }
                emit(&text)?;
            }
            Ok(if results.iter().all(|r| r.passed) {
                0
            } else {
                EXIT_VIOLATION
            })
        }
    }
}

fn hole_theorems(
    mu: &AtomicMeasure,
    kappa: u32,
    decision: &RootDecision,
    decisions: &[RootDecision],
    theta1: &Rational,
    theta2: &Rational,
) -> Result<Vec<TheoremReport>> {
    let theta3 = mu.max_point();
    let mut reports = vec![check_co2_with(mu, theta1, theta2, decisions)?];
    if let Some(nu) = decision.nu() {
        reports.push(check_lem1plus(mu, theta1, theta2, kappa, nu)?);
        reports.push(check_thm17(mu, theta1, theta2, kappa, nu)?);
        if let Some(nu_measure) = nu.to_measure() {
            reports.push(check_cor1(&nu_measure, kappa, theta1, theta2, theta3)?);
        }
    }
    if theta1 > &int(0) && theta2 < theta3 {
        reports.push(techn_plus_relations(theta1, theta2, theta3, kappa)?);
    }
    Ok(reports)
}

fn analyze(mu: &AtomicMeasure, kappa: u32, holes: bool, theorems: bool, json: bool) -> Result<u8> {
    if !(2..=16).contains(&kappa) {
        bail!("kappa must lie in [2, 16]");
    }
    let decision = decide_root(mu, kappa)?;
    let support: Vec<String> = mu.support().map(rational_to_string).collect();
    let nu_support: Option<Vec<RadicalReport>> = decision.nu().map(|nu| {
        nu.support_radicals()
            .iter()
            .map(RadicalReport::from)
            .collect()
    });
    let mut out = json!({
        "kappa": kappa,
        "support": support,
        "decision": decision.report(),
        "nu_support": nu_support,
    });

    let theta3 = mu.max_point();
    let all_holes = find_holes(mu);
    if holes {
        let entries: Vec<Value> = all_holes
            .iter()
            .map(|h| {
                let params = triple_params(&h.lower, &h.upper, theta3, kappa)
                    .ok()
                    .map(|p| p.report());
                json!({ "hole": h, "params": params })
            })
            .collect();
        out["holes"] = Value::Array(entries);
    }

    let mut violated = false;
    if theorems {
        // co2 needs the decisions for every smaller kappa as well
        let decisions = (2..=kappa)
            .map(|k| decide_root(mu, k))
            .collect::<momentroot::Result<Vec<_>>>()?;
        let mut reports = Vec::new();
        for h in &all_holes {
            reports.extend(hole_theorems(
                mu, kappa, &decision, &decisions, &h.lower, &h.upper,
            )?);
        }
        violated = reports.iter().any(TheoremReport::is_violation);
        out["theorems"] = serde_json::to_value(&reports)?;
    }

    if json {
        print_json(&out)?;
    } else {
        emit(&render_text(&out)?)?;
    }
    Ok(if violated { EXIT_VIOLATION } else { 0 })
}

fn render_text(out: &Value) -> Result<String, std::fmt::Error> {
    let mut s = String::new();
    let decision = &out["decision"];
    writeln!(s, "kappa: {}", out["kappa"])?;
    writeln!(s, "supp mu: {{{}}}", join(&out["support"]))?;
    writeln!(
        s,
        "decision: {}",
        decision["status"].as_str().unwrap_or("?")
    )?;
    if let Some(cert) = decision["certificate"].as_object() {
        writeln!(
            s,
            "certificate: {} at {}",
            cert["kind"].as_str().unwrap_or("?"),
            cert["location"].as_str().unwrap_or("?")
        )?;
    }
    if let Some(points) = out["nu_support"].as_array() {
        let shown: Vec<String> = points.iter().map(radical_text).collect();
        writeln!(s, "supp nu: {{{}}}", shown.join(", "))?;
    }
    if let Some(holes) = out["holes"].as_array() {
        writeln!(s, "holes:")?;
        for h in holes {
            let hole = &h["hole"];
            let params = &h["params"];
            let iota = if params.is_null() {
                String::new()
            } else {
                format!(
                    "  iota_s = {}, iota_s* = {}, alpha_dag vs beta_dag: {}",
                    params["iota_s"],
                    params["iota_s_star"],
                    params["alpha_dag_vs_beta_dag"].as_str().unwrap_or("?")
                )
            };
            writeln!(
                s,
                "  ({}, {}){iota}",
                hole["lower"].as_str().unwrap_or("?"),
                hole["upper"].as_str().unwrap_or("?")
            )?;
        }
    }
    if let Some(reports) = out["theorems"].as_array() {
        writeln!(s, "theorems:")?;
        for r in reports {
            let status = if !r["not_applicable"].is_null() {
                "n/a"
            } else if !r["violation"].is_null() {
                "VIOLATION"
            } else {
                "ok"
            };
            writeln!(
                s,
                "  {} [{}]: {status}",
                r["theorem"].as_str().unwrap_or("?"),
                r["instance"].as_str().unwrap_or("?")
            )?;
        }
    }
    Ok(s)
}

fn join(values: &Value) -> String {
    values
        .as_array()
        .map(|v| {
            v.iter()
                .filter_map(Value::as_str)
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_default()
}

fn radical_text(r: &Value) -> String {
    if let Some(exact) = r["exact"].as_str() {
        return exact.to_string();
    }
    let coeff = r["coeff"].as_str().unwrap_or("?");
    let root = format!(
        "{}^(1/{})",
        r["radicand"].as_str().unwrap_or("?"),
        r["index"]
    );
    if coeff == "1" {
        root
    } else {
        format!("{coeff}*{root}")
    }
}
