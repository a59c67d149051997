//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on invalid input (flags or files), 2 when a
//! solver fails. Solver failures print the error name on stderr.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::counterexample::{
    self, diperna_verdict, reproduce_theorem, sweep_cv, CounterexampleReport,
};
use crate::gas::GasConstants;
use crate::io::{self, ParseError};
use crate::profile::{self, DEFAULT_MARGIN};
use crate::rate::{entropy_rate, entropy_rate_oracle, PiecewiseFan};
use crate::riemann::{solve_riemann, RiemannData, SelfSimilarSolution};
use crate::subsolution::{check_admissibility, solve_fan_subsolution, subsolution_entropy_states};

#[derive(Debug, Parser)]
#[command(
    name = "euler-entropy",
    version,
    about = "Entropy production of Riemann fans for the 2-D Euler system"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact self-similar solution of the Riemann problem
    Riemann(DataArgs),
    /// Entropy production rate of the self-similar solution, with oracle check
    Rate(RateArgs),
    /// Fan subsolution for a given wedge density
    Subsolution(SubArgs),
    /// Compare the self-similar solution with the fan subsolution
    Counterexample(SubArgs),
    /// Repeat the comparison over a grid of c_v values
    Sweep(SweepArgs),
    /// Check the fields of the entropy-profile construction
    Profile(ProfileArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Paper,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Specific heat at constant volume
    #[arg(long = "cv", default_value_t = 1.5)]
    pub cv: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report to PATH instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Built-in Riemann data (used when --data is absent)
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Riemann data file: two lines `rho v1 v2 p`
    #[arg(long, conflicts_with = "preset")]
    pub data: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Half width of the box [-L, L]^2 used by the oracle
    #[arg(long = "L", default_value_t = 1e4)]
    pub half_width: f64,
}

#[derive(Debug, Args)]
pub struct SubArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Density of the subsolution wedge
    #[arg(long, default_value_t = counterexample::DEFAULT_RHO1, allow_hyphen_values = true)]
    pub rho1: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub sub: SubArgs,
    /// Comma-separated c_v values
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 1.25, 1.5])]
    pub cv_grid: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub profile: PathBuf,
    #[arg(long)]
    pub partition: PathBuf,
    /// Time shift, 0 < epsilon < delta
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: f64,
    /// Relative feasibility margin of the total energy constant
    #[arg(long, default_value_t = DEFAULT_MARGIN, allow_hyphen_values = true)]
    pub margin: f64,
    /// Number of sample times in [0, T - epsilon)
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Solver { name: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => 1,
            Self::Solver { .. } => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self::Input(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// the report to stdout or `--out` and diagnostics to `stderr`.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
        }
    };
    match run(&cli.command) {
        Ok((body, out)) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &body) {
                    let _ = writeln!(stderr, "error: {}: {e}", path.display());
                    return 1;
                }
            } else if stdout.write_all(body.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(e) => {
            match &e {
                CliError::Input(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                }
                CliError::Solver { name, message } => {
                    let _ = writeln!(stderr, "{name}: {message}");
                }
            }
            e.exit_code()
        }
    }
}

/// Runs one command and returns the rendered report and its destination.
pub fn run(command: &Command) -> Result<(String, Option<PathBuf>), CliError> {
    match command {
        Command::Riemann(a) => {
            let (data, g) = load(a)?;
            let sol = solve_riemann(&data, g).map_err(|e| solver(e.name(), e))?;
            Ok((
                render("riemann", a.common.format, riemann_report(&data, g, &sol)),
                a.common.out.clone(),
            ))
        }
        Command::Rate(a) => {
            let (data, g) = load(&a.data)?;
            if !(a.half_width.is_finite() && a.half_width > 0.0) {
                return Err(CliError::Input("L must be positive".into()));
            }
            let sol = solve_riemann(&data, g).map_err(|e| solver(e.name(), e))?;
            let fan =
                PiecewiseFan::from_solution(&sol).map_err(|e| solver("NotPiecewiseConstant", e))?;
            let rep = entropy_rate(&fan, g);
            let t2 = 0.5 * rep.validity_time(a.half_width).min(1.0);
            let oracle = entropy_rate_oracle(&fan, g, a.half_width, 0.5 * t2, t2)
                .map_err(|e| solver("WavesLeftBox", e))?;
            let body = json!({
                "command": "rate",
                "inputs": {"data": data, "c_v": g.c_v(), "L": a.half_width},
                "outputs": {
                    "rate_per_width": rep.rate_per_width,
                    "rate_on_box": rep.rate_on_box(a.half_width),
                    "per_front_contributions": rep.per_front_contributions,
                    "front_speeds": fan.front_speeds(),
                    "oracle_rate_per_width": oracle,
                    "oracle_window": [0.5 * t2, t2],
                },
                "residuals": {
                    "oracle_relative_difference": rel_diff(oracle, rep.rate_per_width),
                    "max_jump_residual": sol.max_jump_residual(),
                },
                "verdicts": {},
            });
            Ok((
                render("rate", a.data.common.format, body),
                a.data.common.out.clone(),
            ))
        }
        Command::Subsolution(a) => {
            let (data, g) = load(&a.data)?;
            check_rho1(a.rho1)?;
            let sub = solve_fan_subsolution(&data, a.rho1, g).map_err(|e| solver(e.name(), e))?;
            let diag = check_admissibility(&sub, &data, g);
            let (s_minus, s1, s_plus) = subsolution_entropy_states(&sub, &data, g);
            let rate = sub
                .to_fan(&data)
                .map(|f| entropy_rate(&f, g).rate_per_width)
                .ok();
            let body = json!({
                "command": "subsolution",
                "inputs": {"data": data, "c_v": g.c_v(), "rho1": a.rho1},
                "outputs": {
                    "mu_minus": sub.mu_minus, "mu_plus": sub.mu_plus, "beta": sub.beta,
                    "p1": sub.p1, "C1": sub.c1, "gamma": sub.gamma, "alpha": sub.alpha,
                    "entropy": {"s_minus": s_minus, "s1": s1, "s_plus": s_plus},
                    "rate_per_width": rate,
                    "iterations": sub.iterations,
                    "admissibility": diag.checks,
                },
                "residuals": {"rankine_hugoniot": sub.residuals, "max": sub.max_residual()},
                "verdicts": {"admissible": diag.all_passed()},
            });
            Ok((
                render("subsolution", a.data.common.format, body),
                a.data.common.out.clone(),
            ))
        }
        Command::Counterexample(a) => {
            let (data, g) = load(&a.data)?;
            check_rho1(a.rho1)?;
            let rep = reproduce_theorem(&data, a.rho1, g);
            Ok((
                render(
                    "counterexample",
                    a.data.common.format,
                    counterexample_report(&rep),
                ),
                a.data.common.out.clone(),
            ))
        }
        Command::Sweep(a) => {
            let (data, _) = load(&a.sub.data)?;
            check_rho1(a.sub.rho1)?;
            if let Some(bad) = a.cv_grid.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
                return Err(CliError::Input(format!(
                    "c_v grid values must be positive, got {bad}"
                )));
            }
            let reports = sweep_cv(&data, a.sub.rho1, &a.cv_grid);
            let common = &a.sub.data.common;
            let body = match common.format {
                Format::Csv => sweep_csv(&reports),
                format => {
                    let points: Vec<Value> = reports.iter().map(counterexample_report).collect();
                    let body = json!({
                        "command": "sweep",
                        "inputs": {"data": data, "rho1": a.sub.rho1, "cv_grid": a.cv_grid},
                        "outputs": {"points": points},
                        "residuals": {"max": reports.iter().filter_map(|r| r.max_residual).fold(0.0, f64::max)},
                        "verdicts": {"positive": reports.iter().map(|r| r.is_positive()).collect::<Vec<_>>()},
                    });
                    render("sweep", format, body)
                }
            };
            Ok((body, common.out.clone()))
        }
        Command::Profile(a) => {
            let g = GasConstants::new(a.common.cv).map_err(|e| CliError::Input(e.to_string()))?;
            let prof = io::parse_profile_file(&a.profile)?;
            let part = io::parse_partition_file(&a.partition)?;
            let validation = profile::validate_profile(&prof);
            if !validation.valid {
                return Err(CliError::Input(format!(
                    "profile is not admissible: {:?}",
                    validation.violations
                )));
            }
            if a.samples == 0 {
                return Err(CliError::Input("samples must be positive".into()));
            }
            if !(a.epsilon > 0.0 && a.epsilon < prof.delta()) {
                let e = profile::ProfileError::EpsilonOutOfRange {
                    epsilon: a.epsilon,
                    delta: prof.delta(),
                };
                return Err(solver(e.name(), e));
            }
            let lambda = profile::minimal_lambda(&part, &prof, g, a.margin)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let span = prof.horizon() - a.epsilon;
            let times: Vec<f64> = (0..a.samples)
                .map(|k| span * (k as f64 + 0.5) / a.samples as f64)
                .collect();
            let balance = profile::verify_entropy_balance(&part, &prof, g, a.epsilon, &times)
                .map_err(|e| solver(e.name(), e))?;
            let advanced = prof.shifted(a.epsilon).map_err(|e| solver(e.name(), e))?;
            let energy = profile::total_energy_check(&part, &advanced, g, lambda, &times)
                .map_err(|e| solver(e.name(), e))?;
            let body = json!({
                "command": "profile",
                "inputs": {
                    "c_v": g.c_v(), "epsilon": a.epsilon, "margin": a.margin,
                    "delta": prof.delta(), "horizon": prof.horizon(),
                    "breakpoints": prof.breakpoints().collect::<Vec<_>>(),
                    "cells": part.cells(),
                },
                "outputs": {
                    "lambda": lambda,
                    "total_mass": balance.total_mass,
                    "initial_entropy": balance.initial_entropy,
                    "temperature_bounds": part.temperature_bounds(),
                    "balance": balance.samples,
                    "increments": balance.increments,
                    "min_kinetic_energy": energy.min_kinetic,
                    "energy": energy.entries,
                },
                "residuals": {
                    "max_entropy_relative_error": balance.max_relative_error,
                    "max_energy_defect": energy.max_energy_defect,
                },
                "verdicts": {
                    "entropy_balance": balance.holds(),
                    "nondecreasing": balance.nondecreasing,
                    "kinetic_energy_positive": energy.min_kinetic > 0.0,
                },
            });
            Ok((
                render("profile", a.common.format, body),
                a.common.out.clone(),
            ))
        }
    }
}

fn solver(name: &'static str, e: impl std::fmt::Display) -> CliError {
    let message = e.to_string();
    let message = message
        .strip_prefix(name)
        .and_then(|m| m.strip_prefix(": "))
        .map(str::to_string)
        .unwrap_or(message);
    CliError::Solver { name, message }
}

fn check_rho1(rho1: f64) -> Result<(), CliError> {
    if rho1.is_finite() && rho1 > 0.0 {
        Ok(())
    } else {
        Err(CliError::Input("rho1 must be positive".into()))
    }
}

fn load(a: &DataArgs) -> Result<(RiemannData, GasConstants), CliError> {
    let g = GasConstants::new(a.common.cv).map_err(|e| CliError::Input(e.to_string()))?;
    let data = match (&a.data, a.preset) {
        (Some(path), _) => io::parse_riemann_file(path)?,
        (None, Some(Preset::Paper) | None) => RiemannData::paper_preset(),
    };
    Ok((data, g))
}

fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn riemann_report(data: &RiemannData, g: GasConstants, sol: &SelfSimilarSolution) -> Value {
    let entropy: Vec<f64> = sol.waves.iter().map(|w| w.entropy_production(g)).collect();
    json!({
        "command": "riemann",
        "inputs": {"data": data, "c_v": g.c_v()},
        "outputs": {
            "pattern": sol.pattern.to_string(),
            "p_m": sol.p_m,
            "v_m2": sol.v_m2,
            "waves": sol.waves,
            "states": sol.states,
        },
        "residuals": {
            "rankine_hugoniot": sol.waves.iter().map(|w| w.rankine_hugoniot_residuals(g)).collect::<Vec<_>>(),
            "max": sol.max_jump_residual(),
            "front_entropy_production": entropy,
        },
        "verdicts": {"constant_solution": sol.waves.is_empty(), "two_shock": sol.pattern.is_two_shock()},
    })
}

fn counterexample_report(rep: &CounterexampleReport) -> Value {
    json!({
        "command": "counterexample",
        "inputs": {"data": rep.data, "c_v": rep.c_v, "rho1": rep.rho1},
        "outputs": {
            "self_similar_rate": rep.self_similar_rate,
            "fan_rate": rep.fan_rate,
            "subsolution": rep.subsolution,
            "admissibility": rep.admissibility.as_ref().map(|d| &d.checks),
            "cv_status": rep.cv_status,
        },
        "residuals": {
            "max": rep.max_residual,
            "min_shock_entropy_production": rep.min_shock_entropy_production,
        },
        "verdicts": {
            "verdict": rep.verdict,
            "cause": rep.cause,
            "self_similar_in_bracket": rep.rate_bounds_check.self_similar_in_bracket,
            "fan_in_bracket": rep.rate_bounds_check.fan_in_bracket,
            "diperna": diperna_verdict(rep),
        },
    })
}

fn sweep_csv(reports: &[CounterexampleReport]) -> String {
    let opt = |x: Option<f64>| x.map(|v| format!("{v:?}")).unwrap_or_default();
    let mut out = String::from("cv,rho1,rate_self_similar,rate_fan,verdict,max_residual\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{:?},{}\n",
            r.c_v,
            r.rho1,
            opt(r.self_similar_rate),
            opt(r.fan_rate),
            r.verdict,
            opt(r.max_residual)
        ));
    }
    out
}

/// Six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exponent) {
        let decimals = (5 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

fn render(command: &str, format: Format, body: Value) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&body).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!("{command}\n");
            flatten("", &body, &mut |k, v| {
                out.push_str(&format!("  {k} = {}\n", text_value(v)))
            });
            out
        }
        Format::Csv => {
            let mut out = String::from("key,value\n");
            flatten("", &body, &mut |k, v| {
                out.push_str(&format!("{k},{}\n", csv_value(v)))
            });
            out
        }
    }
}

fn flatten(prefix: &str, v: &Value, emit: &mut dyn FnMut(&str, &Value)) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, child, emit);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, emit);
            }
        }
        _ if prefix == "command" => {}
        _ => emit(prefix, v),
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Number(n) => n.as_f64().map(sig6).unwrap_or_else(|| n.to_string()),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
