use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use solvmanifold::realization::save_realization;
use solvmanifold_cli::args::{run_config, Cli, Command, OutputArgs};
use solvmanifold_cli::record::{
    read_json, read_verification_csv, write_enumeration_csv, write_json, write_verification_csv, Format, Status,
    VerificationRecord,
};
use solvmanifold_cli::run;

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn emit_verification(records: &[VerificationRecord], output: &OutputArgs) -> anyhow::Result<()> {
    let out = sink(output.out.as_deref())?;
    match output.format {
        Format::Json => write_json(records, out),
        Format::Csv => write_verification_csv(records, out),
    }
}

fn summarize(records: &[VerificationRecord]) -> bool {
    let count = |s| records.iter().filter(|r| r.status == s).count();
    let failed = count(Status::Failed);
    eprintln!(
        "{} records: {} passed, {} failed, {} skipped",
        records.len(),
        count(Status::Passed),
        failed,
        count(Status::Skipped)
    );
    for r in records.iter().filter(|r| r.status == Status::Failed) {
        let names: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        eprintln!("  {} {{{}}}: {}", r.algebra, r.subset, names.join("; "));
    }
    failed == 0
}

/// `Ok(false)` means a verification failure; `Err` an input problem.
fn execute(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Verify {
            algebra,
            subsets,
            scalar,
            tol,
            output,
            threads,
        } => {
            let config = run_config(&algebra, &subsets, scalar, tol, threads).map_err(anyhow::Error::msg)?;
            let records = run::verify(&config)?;
            emit_verification(&records, &output)?;
            Ok(summarize(&records))
        }
        Command::Enumerate {
            algebra,
            subsets,
            output,
            threads,
        } => {
            let config = run_config(&algebra, &subsets, None, None, threads).map_err(anyhow::Error::msg)?;
            let records = run::enumerate(&config)?;
            let out = sink(output.out.as_deref())?;
            match output.format {
                Format::Json => write_json(&records, out)?,
                Format::Csv => write_enumeration_csv(&records, out)?,
            }
            Ok(records.iter().all(|r| r.status != Status::Failed))
        }
        Command::Export { input, output } => {
            let file = File::open(&input).with_context(|| format!("cannot read {}", input.display()))?;
            let records: Vec<VerificationRecord> = if input.extension().is_some_and(|e| e == "csv") {
                read_verification_csv(file)?
            } else {
                read_json(file)?
            };
            emit_verification(&records, &output)?;
            Ok(true)
        }
        Command::Realization { algebra, out } => {
            let source = algebra.source().map_err(anyhow::Error::msg)?;
            let config = run::RunConfig {
                algebra: source,
                subsets: run::SubsetSelector::All,
                scalar: None,
                tol: None,
                threads: None,
            };
            let r = config.load_algebra()?;
            save_realization(&r, &out)?;
            Ok(true)
        }
    }
}
