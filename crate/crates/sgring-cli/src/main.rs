//! `sgring-lab`: exact invariants of simplicial affine semigroups.

mod error;
mod input;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sgring_core::cyclic;
use sgring_core::pipeline::{analyze, verification_checks};
use sgring_core::Limits;

use error::CliError;
use report::{BatchItem, CheckReport};

#[derive(Parser)]
#[command(
    name = "sgring-lab",
    version,
    about = "Exact invariants of simplicial affine semigroups: Apéry sets, Hilbert series, canonical modules, almost Gorenstein certificates, cyclic-quotient classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Maximum membership box volume
    #[arg(long, global = true, value_name = "N")]
    max_box: Option<u128>,

    /// Maximum number of Apéry elements
    #[arg(long, global = true, value_name = "N")]
    max_apery: Option<usize>,

    /// Maximum number of enumerated elements
    #[arg(long, global = true, value_name = "N")]
    max_enum: Option<usize>,

    /// Series comparison depth for --verify (default 3 m d)
    #[arg(long, global = true, value_name = "N")]
    truncate: Option<i64>,

    /// Run the inline verification oracles
    #[arg(long, global = true)]
    verify: bool,

    /// Include wall-clock timing in the report
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a presentation read from a file
    Analyze {
        path: PathBuf,
        /// Read a plain-text matrix whose columns are the generators
        #[arg(long)]
        matrix: bool,
    },
    /// Classify the two-dimensional cyclic-quotient semigroup of (n, m1)
    Cyclic { n: i64, m1: i64 },
    /// Analyze a list of files and/or a cyclic range, with a summary
    Batch {
        /// Input files (JSON presentations unless --matrix)
        paths: Vec<PathBuf>,
        /// Classify all coprime pairs with n in LO..HI (inclusive), e.g. 2..11
        #[arg(long, value_name = "LO..HI")]
        cyclic_range: Option<String>,
        /// Read plain-text matrices instead of JSON
        #[arg(long)]
        matrix: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn limits_from(cli: &Cli) -> Limits {
    let mut limits = Limits::default();
    if let Some(v) = cli.max_box {
        limits.max_box_volume = v;
    }
    if let Some(v) = cli.max_apery {
        limits.max_apery = v;
    }
    if let Some(v) = cli.max_enum {
        limits.max_enumeration = v;
    }
    limits
}

fn emit<T: serde::Serialize>(cli: &Cli, value: &T, text: String) -> Result<(), CliError> {
    match cli.format {
        Format::Text => print!("{text}"),
        Format::Json => {
            // sorted object keys keep the output byte-deterministic
            let value = serde_json::to_value(value)
                .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
            let rendered = serde_json::to_string_pretty(&value)
                .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
            println!("{rendered}");
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let limits = limits_from(cli);
    match &cli.command {
        Command::Analyze { path, matrix } => {
            let started = Instant::now();
            let doc = input::load(path, *matrix)?;
            let mut report = analyze_document(cli, &limits, &doc)?;
            if cli.timing {
                report.timing_ms = Some(started.elapsed().as_millis() as u64);
            }
            let failed = report
                .verification
                .as_ref()
                .is_some_and(|checks| checks.iter().any(|c| !c.passed));
            emit(cli, &report, report::render_analysis_text(&report))?;
            Ok(if failed { 1 } else { 0 })
        }
        Command::Cyclic { n, m1 } => {
            let started = Instant::now();
            let verified = if cli.verify {
                Some(cyclic::cross_validate(*n, *m1, &limits)?)
            } else {
                None
            };
            let mut report = report::build_cyclic(*n, *m1, verified.as_ref())?;
            if cli.timing {
                report.timing_ms = Some(started.elapsed().as_millis() as u64);
            }
            emit(cli, &report, report::render_cyclic_text(&report))?;
            Ok(0)
        }
        Command::Batch { paths, cyclic_range, matrix } => {
            let mut items = Vec::new();
            let mut parse_failures = 0usize;
            for path in paths {
                match input::load(path, *matrix) {
                    Err(e) => {
                        parse_failures += 1;
                        items.push(error_item(path.display().to_string(), &e));
                    }
                    Ok(doc) => match analyze_document(cli, &limits, &doc) {
                        Ok(report) => items.push(BatchItem::Analysis(Box::new(report))),
                        Err(e) => items.push(error_item(path.display().to_string(), &e)),
                    },
                }
            }
            if let Some(range) = cyclic_range {
                let (lo, hi) = parse_range(range)?;
                for n in lo..=hi {
                    for m1 in 1..n {
                        if gcd(n, m1) != 1 {
                            continue;
                        }
                        let item = cyclic_item(cli, &limits, n, m1);
                        items.push(item);
                    }
                }
            }
            let report = report::build_batch(items);
            emit(cli, &report, report::render_batch_text(&report))?;
            Ok(if parse_failures > 0 { 2 } else { 0 })
        }
    }
}

fn error_item(source: String, e: &CliError) -> BatchItem {
    BatchItem::Error(report::ErrorItem {
        kind: "error".to_string(),
        source,
        message: e.to_string(),
        exit_code: e.exit_code(),
    })
}

fn cyclic_item(cli: &Cli, limits: &Limits, n: i64, m1: i64) -> BatchItem {
    let verified = if cli.verify {
        match cyclic::cross_validate(n, m1, limits) {
            Ok(cv) => Some(cv),
            Err(e) => return error_item(format!("cyclic ({n}, {m1})"), &CliError::Core(e)),
        }
    } else {
        None
    };
    match report::build_cyclic(n, m1, verified.as_ref()) {
        Ok(report) => BatchItem::Cyclic(report),
        Err(e) => error_item(format!("cyclic ({n}, {m1})"), &e),
    }
}

fn analyze_document(
    cli: &Cli,
    limits: &Limits,
    doc: &input::InputDocument,
) -> Result<report::AnalysisReport, CliError> {
    let presentation = doc.to_presentation()?;
    let analysis = analyze(&presentation, limits)?;
    let mut report = report::build_analysis(doc, &analysis)?;
    if cli.verify {
        match verification_checks(&analysis, limits, cli.truncate) {
            Ok(checks) => {
                report.verification = Some(checks.iter().map(CheckReport::from_check).collect());
            }
            Err(e) if CliError::Core(e.clone()).exit_code() == 3 => {
                report.limits_hit.push(format!("verification skipped: {e}"));
            }
            Err(e) => return Err(CliError::Core(e)),
        }
    }
    Ok(report)
}

fn parse_range(spec: &str) -> Result<(i64, i64), CliError> {
    let parse = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| CliError::Input(format!("invalid range bound {s:?}")))
    };
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo = parse(lo)?;
        let hi = parse(hi.trim_start_matches('='))?;
        if lo < 2 || hi < lo {
            return Err(CliError::Input(format!("invalid cyclic range {spec:?}")));
        }
        Ok((lo, hi))
    } else {
        let hi = parse(spec)?;
        if hi < 2 {
            return Err(CliError::Input(format!("invalid cyclic range {spec:?}")));
        }
        Ok((2, hi))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
