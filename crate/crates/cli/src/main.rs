mod eval;
mod suites;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use kappa_core::indrep::Spin;
use kappa_core::report::{all_passed, CheckRecord};
use rayon::prelude::*;
use serde::Serialize;

use suites::{has_control, run_suite, Params, SUITES};

#[derive(Parser, Debug)]
#[command(name = "kappa", version, about = "Exact verification suites for the kappa-Poincare group, algebra and kappa-Minkowski space")]
struct Cli {
    /// List the available suites and exit.
    #[arg(long, global = true)]
    list: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one suite, or `all`.
    Verify(VerifyArgs),
    /// Evaluate an expression and print its normal form.
    Eval {
        /// e.g. "comm(v[0], v[1])" or "pair(P[1], v[1]*v[0])"
        expr: String,
    },
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(value_parser = suite_name)]
    suite: Option<String>,
    /// Spin of the induced representation (0, 1/2, 1); all three when omitted.
    #[arg(long, value_parser = parse_spin)]
    spin: Option<Spin>,
    /// Degree bound for sampled elements and the antirep basis. The star
    /// suite never goes below 4.
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Truncation order of the 1/k series in the limit checks.
    #[arg(long, default_value_t = 4)]
    order: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report wall time (makes the report non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Swap in the negative control of each selected suite.
    #[arg(long, hide = true, value_parser = ["demo"])]
    corrupt: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

fn suite_name(s: &str) -> Result<String, String> {
    if s == "all" || SUITES.iter().any(|(n, _)| *n == s) {
        Ok(s.to_string())
    } else {
        Err(format!("unknown suite '{}' (see --list)", s))
    }
}

fn parse_spin(s: &str) -> Result<Spin, String> {
    Spin::parse(s).ok_or_else(|| format!("spin must be 0, 1/2 or 1, not '{}'", s))
}

#[derive(Serialize)]
struct Config {
    suites: Vec<String>,
    spin: String,
    max_degree: u32,
    samples: usize,
    seed: u64,
    order: u32,
    format: Format,
    corrupt: bool,
}

#[derive(Serialize)]
struct Report {
    config: Config,
    checks: Vec<CheckRecord>,
    elapsed_ms: Option<u64>,
}

fn list() {
    for (name, about) in SUITES {
        println!("{:<16} {}", name, about);
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let start = Instant::now();
    let Some(suite) = args.suite else {
        eprintln!("error: verify needs a suite name or `all` (see --list)");
        return ExitCode::from(2);
    };
    let corrupt = args.corrupt.is_some();
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|(n, _)| *n).collect()
    } else {
        vec![SUITES.iter().find(|(n, _)| *n == suite).map(|(n, _)| *n).expect("validated")]
    };
    if corrupt && suite != "all" && !has_control(&suite) {
        eprintln!("error: suite '{}' has no negative control", suite);
        return ExitCode::from(2);
    }
    let params = Params {
        spin: args.spin,
        max_degree: args.max_degree,
        samples: args.samples,
        seed: args.seed,
        order: args.order,
        corrupt,
    };
    let checks: Vec<CheckRecord> = names
        .par_iter()
        .map(|n| {
            let p = Params { corrupt: corrupt && has_control(n), ..params.clone() };
            run_suite(n, &p)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let elapsed = args.timing.then(|| start.elapsed().as_millis() as u64);
    let ok = all_passed(&checks);
    let report = Report {
        config: Config {
            suites: names.iter().map(|s| s.to_string()).collect(),
            spin: args.spin.map(|s| s.label().to_string()).unwrap_or_else(|| "all".into()),
            max_degree: args.max_degree,
            samples: args.samples,
            seed: args.seed,
            order: args.order,
            format: args.format,
            corrupt,
        },
        checks,
        elapsed_ms: elapsed,
    };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Text => {
            for c in &report.checks {
                println!("{}", c);
            }
            let failed = report.checks.iter().filter(|c| !c.passed()).count();
            println!("{} checks, {} failed (seed {})", report.checks.len(), failed, args.seed);
            if let Some(ms) = elapsed {
                println!("elapsed: {} ms", ms);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list {
        list();
        return ExitCode::SUCCESS;
    }
    match cli.command {
        None => {
            eprintln!("error: expected a subcommand: verify or eval (see --help)");
            ExitCode::from(2)
        }
        Some(Command::Verify(args)) => verify(args),
        Some(Command::Eval { expr }) => match eval::Evaluator::new().eval(&expr) {
            Ok(s) => {
                println!("{}", s);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {}", e);
                ExitCode::from(if e.is_usage() { 2 } else { 1 })
            }
        },
    }
}
