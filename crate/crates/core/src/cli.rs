//! Command-line front end. Results go to stdout as one JSON document (or
//! markdown for reports); diagnostics go to stderr.
//!
//! Exit codes: `0` success, `1` a failed check or an unsupported request,
//! `2` usage and parse errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::cesaro::{certified_tail_sup, cesaro_iterate, envelope};
use crate::classify::membership;
use crate::error::Error;
use crate::norms::{ces_norm, d_norm, lp_norm};
use crate::sequence::SymbolicSequence;
use crate::space::{Grade, Scale, SpaceSpec};
use crate::verify::{self, Budget, Report, ReportFormat, VerifyConfig};
use crate::witness::{build_witness, list_claims};

#[derive(Debug, Parser)]
#[command(name = "cesaro-spaces", version, about = "Norms, Cesàro operators and membership in the ℓ, ces and d sequence spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_seq(s: &str) -> Result<SymbolicSequence, String> {
    serde_json::from_str(s).map_err(|e| format!("invalid sequence JSON: {e}"))
}

fn parse_space(s: &str) -> Result<SpaceSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_exponent(s: &str) -> Result<f64, String> {
    match s {
        "inf" | "∞" => Ok(f64::INFINITY),
        _ => s.parse().map_err(|_| format!("`{s}` is not a number")),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certified enclosure of a norm at an exact grade.
    Norm {
        #[arg(long, value_parser = parse_seq)]
        seq: SymbolicSequence,
        /// `ell:p`, `ces:p` or `d:p`.
        #[arg(long, value_parser = parse_space)]
        space: SpaceSpec,
        /// Prefix length summed explicitly.
        #[arg(long = "N", default_value_t = 100_000)]
        n: u64,
    },
    /// First N terms of C|x| (or C²|x|).
    Cesaro {
        #[arg(long, value_parser = parse_seq)]
        seq: SymbolicSequence,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=2))]
        iterate: u32,
    },
    /// First N terms of the decreasing envelope.
    Envelope {
        #[arg(long, value_parser = parse_seq)]
        seq: SymbolicSequence,
        #[arg(long = "N")]
        n: usize,
    },
    /// Membership verdict for a space.
    Classify {
        #[arg(long, value_parser = parse_seq)]
        seq: SymbolicSequence,
        #[arg(long, value_parser = parse_space)]
        space: SpaceSpec,
    },
    /// Build a witness for a catalog claim, or list the catalog.
    Witness {
        #[arg(long, required_unless_present = "list")]
        claim: Option<String>,
        #[arg(long, value_parser = parse_exponent)]
        p: Option<f64>,
        #[arg(long, value_parser = parse_exponent)]
        q: Option<f64>,
        #[arg(long, conflicts_with_all = ["claim", "p", "q"])]
        list: bool,
    },
    /// Run the verification suite.
    Verify {
        /// One check by id (`V1`..`V11`) or name.
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "full", value_parser = |s: &str| s.parse::<Budget>().map_err(|e| e.to_string()))]
        budget: Budget,
        #[arg(long, default_value = "json", value_parser = |s: &str| s.parse::<ReportFormat>().map_err(|e| e.to_string()))]
        format: ReportFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-check wall-clock time (makes reports non-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::WitnessMismatch(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

/// `(stdout document, exit code)`.
fn execute(command: Command) -> Result<(String, i32), Failure> {
    match command {
        Command::Norm { seq, space, n } => {
            let Grade::Exact(p) = space.grade else {
                return Err(Failure::Usage(format!("norms are defined at exact grades only, got `{space}`")));
            };
            let enc = match space.scale {
                Scale::Ell => lp_norm(&seq, p, n),
                Scale::Ces => ces_norm(&seq, p, n),
                Scale::D => d_norm(&seq, p, n),
            }?;
            Ok((to_json(&enc), 0))
        }
        Command::Cesaro { seq, n, iterate } => {
            let view = cesaro_iterate(&seq.truncate(n)?, iterate)?;
            Ok((to_json(&view), 0))
        }
        Command::Envelope { seq, n } => {
            let tail = certified_tail_sup(&seq, n as u64)?;
            Ok((to_json(&envelope(&seq.truncate(n)?, tail)?), 0))
        }
        Command::Classify { seq, space } => Ok((to_json(&membership(&seq, space)), 0)),
        Command::Witness { list: true, .. } => Ok((to_json(&list_claims()), 0)),
        Command::Witness { claim, p, q, .. } => {
            let claim = claim.expect("clap enforces --claim without --list");
            Ok((to_json(&build_witness(&claim, p, q)?), 0))
        }
        Command::Verify { check, seed, budget, format, out, timing } => {
            let mut config = VerifyConfig { budget, timing, ..VerifyConfig::default() };
            if let Some(s) = seed {
                config.seed = s;
            }
            let results = match check {
                Some(id) => vec![verify::run_check(&id, &config)?],
                None => verify::run_all(&config),
            };
            let report = Report::new(&config, results);
            let code = if report.any_failed() { 1 } else { 0 };
            let text = verify::render_report(&report, format);
            match out {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
                    Ok((String::new(), code))
                }
                None => Ok((text, code)),
            }
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            if !text.is_empty() {
                println!("{text}");
            }
            code
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run with --help for usage");
            2
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
