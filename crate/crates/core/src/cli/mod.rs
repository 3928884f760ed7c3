//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code: 0 on success, 1 for a failed
//! check or an internal invariant violation, 2 for usage and input errors.

mod input;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cd::BruteEngine;
use crate::class2::{Class2Engine, DEFAULT_SUBSPACE_BUDGET};
use crate::constructions::{GroupProduct, GroupRecipe};
use crate::error::{Error, Result};
use crate::group::DEFAULT_ORDER_CAP;
use crate::verify::{self, SuiteOptions};

pub use input::{load_group, parse_builtin_ref, GroupSpecFile, LoadedGroup};
pub use report::{CdReport, MemberReport, Quantity};

#[derive(Debug, Parser)]
#[command(
    name = "cdlattice",
    version,
    about = "Chermak-Delgado lattices of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Auto,
    Brute,
    Class2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute CD(G) and write a JSON report.
    Cd {
        /// Group-spec file, or a builtin such as `dihedral:8` or `paper_Gn?p=2&n=2`.
        group: String,
        #[arg(long, value_enum, default_value = "auto")]
        engine: Engine,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Largest group order the brute-force engine accepts.
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: usize,
        /// Largest number of subspaces the class-2 engine scans.
        #[arg(long, default_value_t = DEFAULT_SUBSPACE_BUDGET)]
        budget: u128,
    },
    /// Run named checks (or `all`) and print one line per report.
    Verify {
        checks: Vec<String>,
        /// Group references replacing the default corpus.
        #[arg(long)]
        corpus: Vec<String>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_SUBSPACE_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = verify::DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Render a CD report as a Hasse diagram.
    Export {
        report: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Exit code for an error: invariant violations are internal failures,
/// everything else is bad input.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_invariant_violation() {
        1
    } else {
        2
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Cd {
            group,
            engine,
            output,
            format,
            cap,
            budget,
        } => cmd_cd(&group, engine, format, cap, budget)
            .and_then(|text| emit(&text, output.as_ref(), out).map(|_| 0)),
        Command::Verify {
            checks,
            corpus,
            p,
            n,
            cap,
            budget,
            seed,
            trials,
            format,
        } => cmd_verify(
            &checks,
            &corpus,
            p,
            n,
            SuiteOptions {
                cap,
                budget,
                seed,
                trials,
                ..Default::default()
            },
            format,
            out,
        ),
        Command::Export {
            report,
            format,
            output,
        } => cmd_export(&report, format)
            .and_then(|text| emit(&text, output.as_ref(), out).map(|_| 0)),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Computes the report for a group reference.
pub fn cd_report(reference: &str, engine: &str, cap: usize, budget: u128) -> Result<CdReport> {
    let engine = Engine::from_str(engine, true).map_err(Error::Input)?;
    compute_report(&load_group(reference)?, engine, cap, budget)
}

fn compute_report(
    group: &LoadedGroup,
    engine: Engine,
    cap: usize,
    budget: u128,
) -> Result<CdReport> {
    match (&group.product, engine) {
        (GroupProduct::Class2(pres), Engine::Auto | Engine::Class2) => {
            let engine = Class2Engine::with_budget(pres, budget);
            let cd = pres.cd_lattice(budget)?;
            Ok(CdReport::from_class2(&group.name, &engine, &cd))
        }
        (GroupProduct::Class2(pres), Engine::Brute) => {
            let table = pres.to_cayley(cap)?;
            let engine = BruteEngine::with_cap(&table, cap);
            let cd = engine.cd_lattice()?;
            Ok(CdReport::from_brute(&group.name, &engine, &cd))
        }
        (GroupProduct::Cayley(g), Engine::Auto | Engine::Brute) => {
            let engine = BruteEngine::with_cap(g, cap);
            let cd = engine.cd_lattice()?;
            Ok(CdReport::from_brute(&group.name, &engine, &cd))
        }
        (GroupProduct::Cayley(_), Engine::Class2) => Err(Error::Input(
            "the class2 engine needs a class-2 presentation".into(),
        )),
    }
}

fn cmd_cd(
    reference: &str,
    engine: Engine,
    format: Format,
    cap: usize,
    budget: u128,
) -> Result<String> {
    let report = compute_report(&load_group(reference)?, engine, cap, budget)?;
    match format {
        Format::Json => Ok(report.to_json()),
        Format::Text => {
            let mut s = format!(
                "{}: order {}, m* = {}, {} members ({} engine)\n",
                report.group,
                report.order,
                report.max_measure,
                report.members.len(),
                report.engine
            );
            for m in &report.members {
                s.push_str(&format!(
                    "  {:>3}  order {:<8} <{}>\n",
                    m.id,
                    m.order.to_string(),
                    m.generators.join(", ")
                ));
            }
            Ok(s)
        }
        Format::Dot => report.to_dot(),
    }
}

fn cmd_verify(
    checks: &[String],
    corpus: &[String],
    p: Option<u32>,
    n: Option<usize>,
    mut options: SuiteOptions,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let names: Vec<&str> = checks
        .iter()
        .map(String::as_str)
        .filter(|&c| c != "all")
        .collect();
    match (p, n) {
        (Some(p), Some(n)) => {
            options.gn_params = vec![(p, n)];
            options.scalar_params = vec![(n, p)];
        }
        (None, None) => {}
        _ => return Err(Error::Input("--p and --n must be given together".into())),
    }
    let recipes: Vec<GroupRecipe> = if corpus.is_empty() {
        verify::default_corpus()
            .into_iter()
            .map(|(name, params)| GroupRecipe::build_with(name, &params))
            .collect::<Result<_>>()?
    } else {
        corpus
            .iter()
            .map(|r| {
                let g = load_group(r)?;
                Ok(g.recipe.unwrap_or(GroupRecipe {
                    name: g.name,
                    params: Default::default(),
                    product: g.product,
                }))
            })
            .collect::<Result<_>>()?
    };
    let reports = verify::run_suite(&names, &recipes, &options)?;
    match format {
        Format::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            )?;
        }
        _ => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
        }
    }
    Ok(if reports.iter().any(|r| r.failed()) {
        1
    } else {
        0
    })
}

fn cmd_export(path: &PathBuf, format: Format) -> Result<String> {
    let text = std::fs::read_to_string(path)?;
    let report = CdReport::parse(&text)?;
    match format {
        Format::Dot => report.to_dot(),
        Format::Json => Ok(report.to_json()),
        Format::Text => Err(Error::Input("export supports --format dot or json".into())),
    }
}
