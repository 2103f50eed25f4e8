//! `scenario-lab`: runs the scenario-decision experiments and analyzers in
//! batch, writing a JSON report (and CSV curves where applicable).
//!
//! Exit status: 0 when every asserted property holds, 1 when one fails (the
//! counterexample is in the report), 2 on usage or configuration errors.

mod commands;
mod config;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use commands::{Check, Outcome};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser, Debug)]
#[command(
    name = "scenario-lab",
    version,
    about = "Scenario decision algorithms: PAC curves, shattering and compression certificates"
)]
struct Cli {
    /// Flat key-value config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed for every randomized step (echoed in the report).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON report here (it is also printed to stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the risk curve as CSV here.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canned demonstration for one system.
    Demo(commands::DemoArgs),
    /// Empirical exceedance curve q(N) for one system.
    RiskCurve(commands::RiskCurveArgs),
    /// Exhaustive dVC shattering check of a candidate set.
    Shatter(commands::ShatterArgs),
    /// Compression map search or scheme-impossibility counting.
    Compression(commands::CompressionArgs),
    /// VC and compression sample-size bounds.
    Bounds(commands::BoundsArgs),
    /// Run a path planner on given or random barriers.
    Pathplan(commands::PathplanArgs),
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Globals {
    seed: Option<u64>,
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    config: serde_json::Value,
    seed: u64,
    seed_source: &'static str,
    passed: bool,
    checks: Vec<Check>,
    result: serde_json::Value,
    wall_clock_ms: f64,
}

fn resolve<T>(file: toml::Table, flags: &T) -> Result<(T, serde_json::Value)>
where
    T: Serialize + serde::de::DeserializeOwned,
{
    let args: T = config::merge(file, flags)?;
    let echo = serde_json::to_value(&args)?;
    Ok((args, echo))
}

fn create(path: &Option<PathBuf>) -> Result<Option<File>> {
    path.as_ref()
        .map(|p| File::create(p).with_context(|| format!("cannot write {}", p.display())))
        .transpose()
}

fn run(cli: Cli) -> Result<bool> {
    let (file_globals, file_cmd) = match &cli.config {
        Some(p) => config::split(config::load(p)?),
        None => Default::default(),
    };
    let globals: Globals = config::merge(
        file_globals,
        &Globals {
            seed: cli.seed,
            out: cli.out.clone(),
            csv: cli.csv.clone(),
        },
    )?;
    let (seed, seed_source) = match (cli.seed, globals.seed) {
        (Some(s), _) => (s, "flag"),
        (None, Some(s)) => (s, "config"),
        (None, None) => (DEFAULT_SEED, "default"),
    };
    eprintln!("seed = {seed} ({seed_source})");

    // Fail on unwritable outputs before any work is done.
    let mut out_file = create(&globals.out)?;
    let mut csv_file = create(&globals.csv)?;

    let started = Instant::now();
    let (name, echo, outcome): (&'static str, _, Outcome) = match &cli.command {
        Command::Demo(a) => {
            let (a, echo) = resolve(file_cmd, a)?;
            ("demo", echo, commands::demo(&a, seed)?)
        }
        Command::RiskCurve(a) => {
            let (a, echo) = resolve(file_cmd, a)?;
            ("risk-curve", echo, commands::risk_curve(&a, seed)?)
        }
        Command::Shatter(a) => {
            let (a, echo) = resolve(file_cmd, a)?;
            ("shatter", echo, commands::shatter(&a)?)
        }
        Command::Compression(a) => {
            let (a, echo) = resolve(file_cmd, a)?;
            ("compression", echo, commands::compression(&a)?)
        }
        Command::Bounds(a) => {
            let (a, echo) = resolve(file_cmd, a)?;
            ("bounds", echo, commands::bounds(&a)?)
        }
        Command::Pathplan(a) => {
            let (a, echo) = resolve(file_cmd, a)?;
            ("pathplan", echo, commands::pathplan(&a, seed)?)
        }
    };
    let passed = outcome.checks.iter().all(|c| c.passed);
    let report = Report {
        command: name,
        config: echo,
        seed,
        seed_source,
        passed,
        checks: outcome.checks,
        result: outcome.result,
        wall_clock_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    let json = serde_json::to_string_pretty(&report)?;
    println!("{json}");
    if let Some(f) = out_file.as_mut() {
        writeln!(f, "{json}").context("writing report")?;
    }
    if let Some(f) = csv_file.as_mut() {
        match &outcome.csv {
            Some(csv) => f.write_all(csv.as_bytes()).context("writing CSV")?,
            None => eprintln!("note: `{name}` produces no curve; CSV file left empty"),
        }
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
