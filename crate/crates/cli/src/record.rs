//! Certificate records and their JSON/CSV encodings.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use solvmanifold::check::Check;
use solvmanifold::scalar::ScalarMode;
use solvmanifold::verify::{Dimensions, IwasawaFlags};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nilpotency {
    pub computed: usize,
    pub predicted: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Einstein {
    pub is_einstein: bool,
    /// `p/q` in exact mode, a shortest round-trip decimal in floating mode.
    pub constant: String,
}

/// Everything verified for one `(algebra, Λ')` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub algebra: String,
    pub form: String,
    /// Comma-separated 0-based simple root indices.
    pub subset: String,
    pub scalar_mode: ScalarMode,
    pub status: Status,
    pub dims: Option<Dimensions>,
    pub kind: Option<i64>,
    pub nilpotency: Option<Nilpotency>,
    pub einstein: Option<Einstein>,
    pub iwasawa: Option<IwasawaFlags>,
    pub minimal: Option<bool>,
    pub totally_geodesic: Option<bool>,
    pub trivial_subset: Option<bool>,
    pub ricci_restriction: Option<bool>,
    pub checks: Vec<Check>,
    pub wall_time_ms: f64,
}

/// One row of `enumerate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRecord {
    pub algebra: String,
    pub form: String,
    pub subset: String,
    pub status: Status,
    pub dim_g: usize,
    pub dim_a: Option<usize>,
    pub dim_n: Option<usize>,
    pub dim_m: Option<usize>,
    pub kind: Option<i64>,
    pub nilpotency_computed: Option<usize>,
    pub nilpotency_predicted: Option<i64>,
    pub trivial_subset: Option<bool>,
}

/// `records` is a list of records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate<R> {
    pub schema_version: u32,
    pub records: R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected json|csv)")),
        }
    }
}

/// Column order of the verification CSV.
pub const CSV_HEADER: &[&str] = &[
    "algebra",
    "form",
    "subset",
    "scalar_mode",
    "status",
    "dim_g",
    "dim_a",
    "dim_n",
    "dim_m",
    "kind",
    "nilpotency_computed",
    "nilpotency_predicted",
    "einstein",
    "einstein_constant",
    "iwasawa_standard",
    "iwasawa_symmetric",
    "iwasawa_positive",
    "minimal",
    "totally_geodesic",
    "trivial_subset",
    "ricci_restriction",
    "checks",
    "wall_time_ms",
];

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    algebra: String,
    form: String,
    subset: String,
    scalar_mode: ScalarMode,
    status: Status,
    dim_g: Option<usize>,
    dim_a: Option<usize>,
    dim_n: Option<usize>,
    dim_m: Option<usize>,
    kind: Option<i64>,
    nilpotency_computed: Option<usize>,
    nilpotency_predicted: Option<i64>,
    einstein: Option<bool>,
    einstein_constant: Option<String>,
    iwasawa_standard: Option<bool>,
    iwasawa_symmetric: Option<bool>,
    iwasawa_positive: Option<bool>,
    minimal: Option<bool>,
    totally_geodesic: Option<bool>,
    trivial_subset: Option<bool>,
    ricci_restriction: Option<bool>,
    /// JSON array of checks.
    checks: String,
    wall_time_ms: f64,
}

impl From<&VerificationRecord> for CsvRow {
    fn from(r: &VerificationRecord) -> Self {
        CsvRow {
            algebra: r.algebra.clone(),
            form: r.form.clone(),
            subset: r.subset.clone(),
            scalar_mode: r.scalar_mode,
            status: r.status,
            dim_g: r.dims.map(|d| d.g),
            dim_a: r.dims.map(|d| d.a),
            dim_n: r.dims.map(|d| d.n),
            dim_m: r.dims.map(|d| d.m),
            kind: r.kind,
            nilpotency_computed: r.nilpotency.map(|n| n.computed),
            nilpotency_predicted: r.nilpotency.map(|n| n.predicted),
            einstein: r.einstein.as_ref().map(|e| e.is_einstein),
            einstein_constant: r.einstein.as_ref().map(|e| e.constant.clone()),
            iwasawa_standard: r.iwasawa.map(|i| i.standard),
            iwasawa_symmetric: r.iwasawa.map(|i| i.symmetric),
            iwasawa_positive: r.iwasawa.map(|i| i.positive),
            minimal: r.minimal,
            totally_geodesic: r.totally_geodesic,
            trivial_subset: r.trivial_subset,
            ricci_restriction: r.ricci_restriction,
            checks: serde_json::to_string(&r.checks).expect("checks serialize"),
            wall_time_ms: r.wall_time_ms,
        }
    }
}

impl TryFrom<CsvRow> for VerificationRecord {
    type Error = anyhow::Error;

    fn try_from(row: CsvRow) -> anyhow::Result<Self> {
        let dims = match (row.dim_g, row.dim_a, row.dim_n, row.dim_m) {
            (Some(g), Some(a), Some(n), Some(m)) => Some(Dimensions { g, a, n, m }),
            _ => None,
        };
        let nilpotency = match (row.nilpotency_computed, row.nilpotency_predicted) {
            (Some(computed), Some(predicted)) => Some(Nilpotency { computed, predicted }),
            _ => None,
        };
        let einstein = match (row.einstein, row.einstein_constant) {
            (Some(is_einstein), Some(constant)) => Some(Einstein { is_einstein, constant }),
            _ => None,
        };
        let iwasawa = match (row.iwasawa_standard, row.iwasawa_symmetric, row.iwasawa_positive) {
            (Some(standard), Some(symmetric), Some(positive)) => Some(IwasawaFlags {
                standard,
                symmetric,
                positive,
            }),
            _ => None,
        };
        Ok(VerificationRecord {
            algebra: row.algebra,
            form: row.form,
            subset: row.subset,
            scalar_mode: row.scalar_mode,
            status: row.status,
            dims,
            kind: row.kind,
            nilpotency,
            einstein,
            iwasawa,
            minimal: row.minimal,
            totally_geodesic: row.totally_geodesic,
            trivial_subset: row.trivial_subset,
            ricci_restriction: row.ricci_restriction,
            checks: serde_json::from_str(&row.checks)?,
            wall_time_ms: row.wall_time_ms,
        })
    }
}

pub fn write_json<R: Serialize, W: Write>(records: &[R], mut out: W) -> anyhow::Result<()> {
    let cert = Certificate {
        schema_version: SCHEMA_VERSION,
        records,
    };
    serde_json::to_writer_pretty(&mut out, &cert)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_json<R: for<'de> Deserialize<'de>, I: Read>(input: I) -> anyhow::Result<Vec<R>> {
    let cert: Certificate<Vec<R>> = serde_json::from_reader(input)?;
    if cert.schema_version != SCHEMA_VERSION {
        anyhow::bail!("unsupported schema version {}", cert.schema_version);
    }
    Ok(cert.records)
}

pub fn write_verification_csv<W: Write>(records: &[VerificationRecord], out: W) -> anyhow::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_verification_csv<I: Read>(input: I) -> anyhow::Result<Vec<VerificationRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        anyhow::bail!("unexpected CSV header");
    }
    rdr.deserialize::<CsvRow>()
        .map(|row| VerificationRecord::try_from(row?))
        .collect()
}

pub fn write_enumeration_csv<W: Write>(records: &[EnumerationRecord], out: W) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
