use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use solvmanifold::realization::RealForm;
use solvmanifold::scalar::ScalarMode;

use crate::record::Format;
use crate::run::{AlgebraSource, RunConfig, SubsetSelector};

/// Verifies Einstein solvmanifolds attached to parabolic subalgebras.
#[derive(Debug, Parser)]
#[command(name = "solvmanifold", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full verification pipeline and emit certificates.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        subsets: SubsetArgs,
        /// exact | float; defaults to exact when dim g <= 80.
        #[arg(long)]
        scalar: Option<ScalarMode>,
        /// Relative tolerance in floating mode.
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// List subsets with dimensions, kind and nilpotency degree.
    Enumerate {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        subsets: SubsetArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Re-encode verification records from a previous run.
    Export {
        /// A JSON or CSV certificate file (by extension).
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a builtin realization to a JSON file.
    Realization {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Series letter; repeat together with --rank for direct sums.
    #[arg(long, conflicts_with = "realization")]
    pub series: Vec<char>,
    #[arg(long)]
    pub rank: Vec<usize>,
    #[arg(long, default_value = "split")]
    pub form: RealForm,
    /// A realization file in place of --series/--rank.
    #[arg(long)]
    pub realization: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SubsetArgs {
    /// Comma-separated 0-based simple root indices; empty for the minimal parabolic.
    #[arg(long, conflicts_with = "all_subsets")]
    pub subset: Option<String>,
    /// Every subset in lexicographic order (the default).
    #[arg(long)]
    pub all_subsets: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, default_value = "json")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl AlgebraArgs {
    pub fn source(&self) -> Result<AlgebraSource, String> {
        if let Some(path) = &self.realization {
            return Ok(AlgebraSource::File(path.clone()));
        }
        if self.series.len() != self.rank.len() {
            return Err("--series and --rank must be given the same number of times".into());
        }
        let blocks = self
            .series
            .iter()
            .zip(&self.rank)
            .map(|(s, r)| (s.to_ascii_uppercase(), *r))
            .collect();
        Ok(AlgebraSource::Builtin { blocks, form: self.form })
    }
}

impl SubsetArgs {
    pub fn selector(&self) -> Result<SubsetSelector, String> {
        match &self.subset {
            None => Ok(SubsetSelector::All),
            Some(text) => {
                let text = text.trim();
                if text.is_empty() {
                    return Ok(SubsetSelector::One(Vec::new()));
                }
                text.split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad subset index {t:?}")))
                    .collect::<Result<Vec<_>, _>>()
                    .map(SubsetSelector::One)
            }
        }
    }
}

pub fn run_config(
    algebra: &AlgebraArgs,
    subsets: &SubsetArgs,
    scalar: Option<ScalarMode>,
    tol: Option<f64>,
    threads: Option<usize>,
) -> Result<RunConfig, String> {
    Ok(RunConfig {
        algebra: algebra.source()?,
        subsets: subsets.selector()?,
        scalar,
        tol,
        threads,
    })
}
