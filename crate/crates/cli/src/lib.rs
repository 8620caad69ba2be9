//! Batch front-end for `spinlens-core`: argument parsing, report assembly
//! and output.

pub mod commands;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::CliError;
use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "spinlens",
    version,
    about = "Lens-space bordism invariants and exhaustive checks"
)]
pub struct Cli {
    /// Worker threads; 0 uses one per core. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_triple(s: &str) -> Result<[u64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!(
            "expected three comma-separated integers, got {s:?}"
        ));
    };
    let parse = |x: &str| x.parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok([parse(a)?, parse(b)?, parse(c)?])
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find and verify an independent lens-space pair for every prime in a range.
    Lemma5 {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        /// Cross-check with the brute-force oracle for primes up to this bound.
        #[arg(long = "brute-below", default_value_t = 31)]
        brute_below: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Pontrjagin pair and canonical form of one lens space.
    Invariants {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "q", value_parser = parse_triple)]
        q: [u64; 3],
        #[command(flatten)]
        output: Output,
    },
    /// Independence test for two lens spaces.
    Independent {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "qa", value_parser = parse_triple)]
        qa: [u64; 3],
        #[arg(long = "qb", value_parser = parse_triple)]
        qb: [u64; 3],
        /// Also run the brute-force oracle and require agreement.
        #[arg(long)]
        brute: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Bordism and lens-class orders for Z/p^k.
    Orders {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "k", default_value_t = 1)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Bordism order for the metacyclic group D_(p^k,3).
    #[command(name = "orders-d3")]
    OrdersD3 {
        #[arg(long = "p")]
        p: u64,
        #[arg(long = "k", default_value_t = 1)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Enumerate odd-order metacyclic presentations.
    Groups {
        #[arg(long = "max-order")]
        max_order: u64,
        #[command(flatten)]
        output: Output,
    },
}

/// A rendered report and the exit code it implies.
pub struct Rendered {
    pub body: String,
    pub exit_code: i32,
    /// Extra diagnostics for standard error.
    pub diagnostics: Option<String>,
}

fn rendered(body: String, failures: u64) -> Rendered {
    Rendered {
        body,
        exit_code: i32::from(failures > 0),
        diagnostics: None,
    }
}

pub fn execute(command: &Command) -> Result<(Rendered, &Output), CliError> {
    Ok(match command {
        Command::Lemma5 {
            min,
            max,
            brute_below,
            output,
        } => {
            let (report, failures) = commands::lemma5(*min, *max, *brute_below)?;
            let mut r = rendered(report.render(output.format)?, report.summary.failures);
            if !failures.is_empty() {
                r.diagnostics =
                    Some(serde_json::to_string_pretty(&failures).map_err(anyhow::Error::from)?);
            }
            (r, output)
        }
        Command::Invariants { p, q, output } => {
            let report = commands::invariants(*p, *q)?;
            (
                rendered(report.render(output.format)?, report.summary.failures),
                output,
            )
        }
        Command::Independent {
            p,
            qa,
            qb,
            brute,
            output,
        } => {
            let report = commands::independent_cmd(*p, *qa, *qb, *brute)?;
            (
                rendered(report.render(output.format)?, report.summary.failures),
                output,
            )
        }
        Command::Orders { p, k, output } => {
            let report = commands::orders(*p, *k)?;
            (rendered(report.render(output.format)?, 0), output)
        }
        Command::OrdersD3 { p, k, output } => {
            let report = commands::orders_d3(*p, *k)?;
            (rendered(report.render(output.format)?, 0), output)
        }
        Command::Groups { max_order, output } => {
            let report = commands::groups(*max_order)?;
            (rendered(report.render(output.format)?, 0), output)
        }
    })
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let result = pool.install(|| execute(&cli.command));
    let (rendered, output) = match result {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if let Some(diag) = &rendered.diagnostics {
        eprintln!("verification failures:\n{diag}");
    }
    let written = match &output.out {
        Some(path) => fs::write(path, &rendered.body),
        None => std::io::stdout().lock().write_all(rendered.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return 1;
    }
    rendered.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples() {
        assert_eq!(parse_triple("1,1,2"), Ok([1, 1, 2]));
        assert_eq!(parse_triple(" 3, 4 ,5"), Ok([3, 4, 5]));
        assert!(parse_triple("1,2").is_err());
        assert!(parse_triple("1,2,x").is_err());
        assert!(parse_triple("1,2,3,4").is_err());
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "spinlens",
            "--jobs",
            "2",
            "independent",
            "--p",
            "7",
            "--qa",
            "1,1,1",
            "--qb",
            "1,2,2",
            "--brute",
        ])
        .unwrap();
        assert_eq!(cli.jobs, 2);
        assert!(matches!(
            cli.command,
            Command::Independent {
                p: 7,
                qa: [1, 1, 1],
                qb: [1, 2, 2],
                brute: true,
                ..
            }
        ));
        assert!(
            Cli::try_parse_from(["spinlens", "groups", "--max-order", "9", "--format", "xml"])
                .is_err()
        );
    }

    #[test]
    fn text_rendering_is_aligned() {
        let report = commands::invariants(5, [1, 1, 1]).unwrap();
        let text = report.render(Format::Text).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], format!("# invariants {}", report::TOOL_VERSION));
        assert_eq!(lines[1], "p  weights  Q  pair  canonical  orbit_size");
        assert_eq!(lines[2], "5  1,1,1    3  1,3   1,3        4");
        assert_eq!(lines[3], "count=1 failures=0");
    }
}
