//! Turning a run configuration into records.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use solvmanifold::error::Error;
use solvmanifold::parabolic::SubsetSelection;
use solvmanifold::realization::{build_realization, load_realization, RealForm, Realization};
use solvmanifold::rootsystem::{all_subsets, generate_positive_roots, parse_type};
use solvmanifold::scalar::{format_rational, Scalar, ScalarMode, Q};
use solvmanifold::verify::{
    default_tolerance, enumerate_subset, prepare_ambient, verify_subset, SubsetOutcome, VerifyOptions,
};

use crate::record::{Einstein, EnumerationRecord, Nilpotency, Status, VerificationRecord};

/// Above this dimension of `g` the default scalar mode is floating.
pub const EXACT_DIM_LIMIT: usize = 80;

#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraSource {
    /// `(series, rank)` blocks of a direct sum.
    Builtin { blocks: Vec<(char, usize)>, form: RealForm },
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetSelector {
    One(Vec<usize>),
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub algebra: AlgebraSource,
    pub subsets: SubsetSelector,
    /// `None` picks by dimension.
    pub scalar: Option<ScalarMode>,
    pub tol: Option<f64>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn load_algebra(&self) -> Result<Realization, Error> {
        match &self.algebra {
            AlgebraSource::Builtin { blocks, form } => {
                if blocks.is_empty() {
                    return Err(Error::input("no algebra given"));
                }
                let spec: Vec<String> = blocks.iter().map(|(s, r)| format!("{s}{r}")).collect();
                let cartan = parse_type(&spec.join("+"))?;
                build_realization(&generate_positive_roots(&cartan), *form)
            }
            AlgebraSource::File(path) => load_realization(path),
        }
    }

    pub fn scalar_mode(&self, dim: usize) -> ScalarMode {
        self.scalar.unwrap_or(if dim <= EXACT_DIM_LIMIT {
            ScalarMode::Exact
        } else {
            ScalarMode::Float
        })
    }

    pub fn tolerance(&self, dim: usize) -> Result<f64, Error> {
        match self.tol {
            Some(t) if !(t > 0.0 && t.is_finite()) => Err(Error::input("tolerance must be a positive number")),
            Some(t) => Ok(t),
            None => Ok(default_tolerance(dim)),
        }
    }

    /// Index lists to run, in lexicographic order; the full set is kept so
    /// that it can be reported as skipped.
    pub fn subset_lists(&self, rank: usize) -> Result<Vec<Vec<usize>>, Error> {
        match &self.subsets {
            SubsetSelector::All => Ok(all_subsets(rank)),
            SubsetSelector::One(idx) => {
                let mut sorted = idx.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != idx.len() || sorted.iter().any(|&i| i >= rank) {
                    return Err(Error::input(format!("invalid subset {idx:?} for rank {rank}")));
                }
                Ok(vec![sorted])
            }
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool, Error> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.threads {
            if n == 0 {
                return Err(Error::input("--threads must be positive"));
            }
            b = b.num_threads(n);
        }
        b.build().map_err(|e| Error::input(e.to_string()))
    }
}

pub fn subset_text(idx: &[usize]) -> String {
    idx.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn is_full(idx: &[usize], rank: usize) -> bool {
    idx.len() == rank
}

/// Runs the full pipeline. Input problems are errors; failed checks are
/// recorded in the returned records.
pub fn verify(config: &RunConfig) -> Result<Vec<VerificationRecord>, Error> {
    let r = config.load_algebra()?;
    let lists = config.subset_lists(r.rank())?;
    let mode = config.scalar_mode(r.dim());
    let mut opts = VerifyOptions::for_dim(r.dim());
    if mode == ScalarMode::Float {
        opts.tol = config.tolerance(r.dim())?;
    }
    let pool = config.pool()?;
    match mode {
        ScalarMode::Exact => pool.install(|| verify_all::<Q>(&r, &lists, &opts)),
        ScalarMode::Float => pool.install(|| verify_all::<f64>(&r, &lists, &opts)),
    }
}

fn verify_all<S: Scalar + FormatConstant>(
    r: &Realization,
    lists: &[Vec<usize>],
    opts: &VerifyOptions,
) -> Result<Vec<VerificationRecord>, Error> {
    let ambient = prepare_ambient::<S>(r)?;
    lists
        .par_iter()
        .map(|idx| {
            let start = Instant::now();
            let mut record = skeleton::<S>(r, idx);
            if is_full(idx, r.rank()) {
                return Ok(record);
            }
            let subset = SubsetSelection::new(r.rank(), idx)?;
            let outcome = verify_subset(r, &ambient, &subset, opts)?;
            fill(&mut record, &outcome);
            record.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            Ok(record)
        })
        .collect()
}

fn skeleton<S: Scalar>(r: &Realization, idx: &[usize]) -> VerificationRecord {
    VerificationRecord {
        algebra: r.name().to_string(),
        form: r.form().to_string(),
        subset: subset_text(idx),
        scalar_mode: ScalarMode::of::<S>(),
        status: Status::Skipped,
        dims: None,
        kind: None,
        nilpotency: None,
        einstein: None,
        iwasawa: None,
        minimal: None,
        totally_geodesic: None,
        trivial_subset: None,
        ricci_restriction: None,
        checks: Vec::new(),
        wall_time_ms: 0.0,
    }
}

fn fill<S: FormatConstant>(record: &mut VerificationRecord, o: &SubsetOutcome<S>) {
    record.status = if o.passed() { Status::Passed } else { Status::Failed };
    record.dims = Some(o.dims);
    record.kind = Some(o.kind);
    record.nilpotency = Some(Nilpotency {
        computed: o.nilpotency.0,
        predicted: o.nilpotency.1,
    });
    record.einstein = Some(Einstein {
        is_einstein: o.einstein.is_einstein,
        constant: o.einstein.constant.format_constant(),
    });
    record.iwasawa = Some(o.iwasawa);
    record.minimal = Some(o.is_minimal);
    record.totally_geodesic = Some(o.is_totally_geodesic);
    record.trivial_subset = Some(o.trivial_subset);
    record.ricci_restriction = Some(o.ricci_restriction);
    record.checks = o.checks.clone();
}

/// Text form of an Einstein constant.
pub trait FormatConstant {
    fn format_constant(&self) -> String;
}

impl FormatConstant for Q {
    fn format_constant(&self) -> String {
        format_rational(self)
    }
}

impl FormatConstant for f64 {
    fn format_constant(&self) -> String {
        // Display for f64 is the shortest string that round-trips
        format!("{self}")
    }
}

/// Combinatorial pass without curvature.
pub fn enumerate(config: &RunConfig) -> Result<Vec<EnumerationRecord>, Error> {
    let r = config.load_algebra()?;
    let lists = config.subset_lists(r.rank())?;
    let pool = config.pool()?;
    pool.install(|| {
        lists
            .par_iter()
            .map(|idx| {
                let mut rec = EnumerationRecord {
                    algebra: r.name().to_string(),
                    form: r.form().to_string(),
                    subset: subset_text(idx),
                    status: Status::Skipped,
                    dim_g: r.dim(),
                    dim_a: None,
                    dim_n: None,
                    dim_m: None,
                    kind: None,
                    nilpotency_computed: None,
                    nilpotency_predicted: None,
                    trivial_subset: None,
                };
                if is_full(idx, r.rank()) {
                    return Ok(rec);
                }
                let e = enumerate_subset(&r, &SubsetSelection::new(r.rank(), idx)?)?;
                rec.status = if e.nilpotency.0 as i64 == e.nilpotency.1 {
                    Status::Passed
                } else {
                    Status::Failed
                };
                rec.dim_a = Some(e.dims.a);
                rec.dim_n = Some(e.dims.n);
                rec.dim_m = Some(e.dims.m);
                rec.kind = Some(e.kind);
                rec.nilpotency_computed = Some(e.nilpotency.0);
                rec.nilpotency_predicted = Some(e.nilpotency.1);
                rec.trivial_subset = Some(e.trivial_subset);
                Ok(rec)
            })
            .collect()
    })
}
