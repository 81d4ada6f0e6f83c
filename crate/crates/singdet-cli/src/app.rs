//! Argument parsing and command dispatch for the `singdet` binary.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use singdet::diagrams::{corpus_root, BRACKET_BUDGET, CORPUS_ENV, SKEIN_BUDGET};
use singdet::numtheory::check_odd_prime;

use crate::input::{load, MatrixKind};
use crate::report::{self, Format, ReportConfig};
use crate::verify::{self, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "singdet", version, about = "Singular determinants, linking forms and special values of knot polynomials")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Odd primes to report, comma separated.
    #[arg(long = "prime", global = true, value_delimiter = ',', default_value = "3,5,7,11,13")]
    primes: Vec<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest crossing count handed to the diagram oracles.
    #[arg(long, global = true, default_value_t = BRACKET_BUDGET)]
    budget: usize,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Corpus directory, used to resolve bare record names.
    #[arg(long, global = true, env = CORPUS_ENV)]
    corpus: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classical invariants, singular determinants and special values.
    Invariants {
        /// Matrix files, PD files, corpus records or corpus record names.
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long, value_enum, default_value_t = MatrixKind::Auto)]
        matrix_kind: MatrixKind,
    },
    /// Unknotting-number obstructions at each prime.
    Obstruct {
        #[arg(required = true)]
        inputs: Vec<String>,
        #[arg(long, value_enum, default_value_t = MatrixKind::Auto)]
        matrix_kind: MatrixKind,
    },
    /// Run verification suites; exits nonzero if any check fails.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

/// `Ok(false)` when an input failed or a check disagreed.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let c = cli.common;
    for &p in &c.primes {
        if let Err(e) = check_odd_prime(p) {
            bail!("--prime {p}: {e}");
        }
    }
    let corpus = c.corpus.clone().unwrap_or_else(corpus_root);
    match cli.command {
        Command::Invariants {
            inputs,
            matrix_kind,
        } => {
            let cfg = ReportConfig {
                primes: c.primes.clone(),
                budget: c.budget,
            };
            batch(&inputs, out, err, |arg| {
                let input = load(arg, &corpus, matrix_kind)?;
                let r = report::invariants(&input, &cfg)?;
                Ok((r.render(c.format), !r.failed))
            })
        }
        Command::Obstruct {
            inputs,
            matrix_kind,
        } => batch(&inputs, out, err, |arg| {
            let input = load(arg, &corpus, matrix_kind)?;
            Ok((report::obstruct(&input, &c.primes, c.format)?, true))
        }),
        Command::Verify { suite } => {
            let cfg = VerifyConfig {
                seed: c.seed,
                primes: c.primes.clone(),
                budget: c.budget,
                skein_budget: c.budget.min(SKEIN_BUDGET),
                corpus,
            };
            let mut ok = true;
            for s in suite.expand() {
                let res = verify::run(s, &cfg)?;
                match c.format {
                    Format::Text => write!(out, "{}", verify::render(&res))?,
                    Format::Machine => write!(out, "{}", verify::render_machine(&res))?,
                }
                ok &= res.passed();
            }
            if c.format == Format::Text {
                writeln!(out, "{}", if ok { "all checks passed" } else { "some checks FAILED" })?;
            }
            Ok(ok)
        }
    }
}

/// Processes inputs in parallel and prints results in input order. Errors
/// go to stderr and mark the run as failed without stopping the others.
fn batch<F>(inputs: &[String], out: &mut dyn Write, err: &mut dyn Write, f: F) -> Result<bool>
where
    F: Fn(&str) -> Result<(String, bool)> + Sync,
{
    let results: Vec<Result<(String, bool)>> = inputs.par_iter().map(|s| f(s)).collect();
    let mut ok = true;
    for (arg, res) in inputs.iter().zip(results) {
        match res {
            Ok((text, good)) => {
                write!(out, "{text}")?;
                ok &= good;
            }
            Err(e) => {
                writeln!(err, "{arg}: {e:#}")?;
                ok = false;
            }
        }
    }
    Ok(ok)
}
