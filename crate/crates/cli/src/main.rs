use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lefschetz::error::Error;
use lefschetz::field::FieldSpec;
use lefschetz::instance::parse_instance;
use lefschetz::pipeline::{
    analyze_unchecked, ci_instance_spec, fuzz, FuzzConfig, DEFAULT_FUZZ_BUDGET,
};
use lefschetz::report::Report;

/// Weak Lefschetz checks for cokernels of graded maps over K[x,y,z].
#[derive(Parser)]
#[command(name = "lefschetz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one instance file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// A prime, or Q for exact rationals. Overrides the file.
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
        /// Overrides the file.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random linear forms. Overrides the file.
        #[arg(long)]
        samples: Option<usize>,
        /// Include per-stage wall-clock times.
        #[arg(long)]
        timings: bool,
    },
    /// Analyze a random corpus.
    Fuzz {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_twist: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        /// Largest estimated elimination cost of a generated shape.
        #[arg(long, default_value_t = DEFAULT_FUZZ_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Analyze R/(f1, f2, f3) for random forms of the given degrees.
    Ci {
        d1: i64,
        d2: i64,
        d3: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        timings: bool,
    },
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    FieldSpec::parse_cli(s).map_err(|e| e.to_string())
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(report: &Report, json: bool, timings: bool) -> ExitCode {
    if json {
        out(&(report.to_json_string(timings) + "\n"));
    } else {
        out(&report.render(timings));
    }
    match report.check() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Analyze {
            file,
            json,
            field,
            seed,
            samples,
            timings,
        } => {
            let mut inst = match parse_instance(&file) {
                Ok(i) => i,
                Err(e) => return fail(e),
            };
            if let Some(f) = field {
                inst.field = f;
            }
            if let Some(s) = seed {
                inst.seed = s;
            }
            if let Some(n) = samples {
                inst.samples = n;
            }
            match analyze_unchecked(&inst) {
                Ok(r) => emit(&r, json, timings),
                Err(e) => fail(e),
            }
        }
        Command::Ci {
            d1,
            d2,
            d3,
            seed,
            field,
            json,
            timings,
        } => {
            let report = ci_instance_spec([d1, d2, d3], seed, field.unwrap_or_default())
                .and_then(|inst| analyze_unchecked(&inst));
            match report {
                Ok(r) => emit(&r, json, timings),
                Err(e) => fail(e),
            }
        }
        Command::Fuzz {
            count,
            max_n,
            max_twist,
            seed,
            samples,
            budget,
            json,
        } => {
            let mut cfg = FuzzConfig::new(count, max_n, max_twist, seed);
            cfg.samples = samples;
            cfg.budget = budget;
            let summary = match fuzz(&cfg) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            if json {
                out(&(serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n"));
            } else {
                for c in &summary.cases {
                    let outcome = match (&c.error, &c.class) {
                        (Some(e), _) => format!("FAIL {e}"),
                        (None, Some(class)) => format!("ok   {class}"),
                        (None, None) => "ok".to_string(),
                    };
                    out(&format!(
                        "{:>4}  F={:?} G={:?}  {outcome}\n",
                        c.index, c.source, c.target
                    ));
                }
                out(&format!(
                    "{} instances: {} passed, {} failed; wlp {}, splitting {}, unimodal {}\n",
                    summary.total,
                    summary.passed,
                    summary.failed,
                    summary.wlp,
                    summary.splitting_concordant,
                    summary.unimodal
                ));
                for (class, n) in &summary.classes {
                    out(&format!("  {class}: {n}\n"));
                }
            }
            ExitCode::from(summary.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
