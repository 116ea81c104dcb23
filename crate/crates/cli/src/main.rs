//! `sendov`: JSON front end to the sendov-core toolkit.

mod commands;
mod parse;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use report::{to_json, RunReport};

#[derive(Parser, Debug)]
#[command(name = "sendov", version, about = "Zeros and critical points of complex polynomials")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Tolerance used by checks whose default is 1e-8.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Spaces per indentation level; 0 prints compact JSON.
    #[arg(long = "json-indent", global = true, default_value_t = 2)]
    pub json_indent: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Distances between zeros and critical points.
    #[command(subcommand)]
    Metrics(commands::MetricsCmd),
    /// First-order variation at a zero: sensitivity matrices and extensibility.
    #[command(subcommand)]
    Varfirst(commands::VarfirstCmd),
    /// Second-order families and the perturbation inequalities.
    #[command(subcommand)]
    Varsecond(commands::VarsecondCmd),
    /// Polynomials maximizing the critical radius at the origin.
    #[command(subcommand)]
    Zeromax(commands::ZeromaxCmd),
    /// Normal matrices and their compressions.
    #[command(subcommand)]
    Normal(commands::NormalCmd),
    /// Majorization of critical-point products by zero products.
    #[command(subcommand)]
    Major(commands::MajorCmd),
    /// Acceptance batteries.
    #[command(subcommand)]
    Suite(commands::SuiteCmd),
    /// Write a seeded polynomial corpus as JSON files.
    Gen(commands::GenArgs),
}

fn command_name(args: &[String]) -> String {
    args.iter()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .take(2)
        .cloned()
        .collect::<Vec<_>>()
        .join(" ")
}

fn emit(report: &RunReport, indent: usize) {
    use std::io::Write;
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout(), "{}", to_json(report, indent));
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let start = Instant::now();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            let report = RunReport {
                command: command_name(&argv),
                inputs: Value::Array(argv.iter().skip(1).cloned().map(Value::String).collect()),
                outputs: Value::Null,
                checks: Vec::new(),
                pass: false,
                seed: 0,
                duration_ms: 0,
                error: Some(format!("usage: {}", e.kind())),
            };
            emit(&report, 2);
            return ExitCode::from(2);
        }
    };
    let g = cli.global.clone();
    let result = commands::run(&cli.command, &g);
    let duration_ms = start.elapsed().as_millis() as u64;
    let command = command_name(&argv);
    let (report, code) = match result {
        Ok(out) => {
            let pass = out.checks.iter().all(|c| c.pass);
            (
                RunReport {
                    command,
                    inputs: out.inputs,
                    outputs: out.outputs,
                    checks: out.checks,
                    pass,
                    seed: g.seed,
                    duration_ms,
                    error: None,
                },
                if pass { 0 } else { 1 },
            )
        }
        Err(e) => {
            eprintln!("error: {e}");
            (
                RunReport {
                    command,
                    inputs: Value::Array(argv.iter().skip(1).cloned().map(Value::String).collect()),
                    outputs: Value::Null,
                    checks: Vec::new(),
                    pass: false,
                    seed: g.seed,
                    duration_ms,
                    error: Some(e.to_string()),
                },
                e.exit_code(),
            )
        }
    };
    emit(&report, g.json_indent);
    ExitCode::from(code)
}
