//! JSON exchange format for realizations.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "sl2",
//!   "dimension": 3,
//!   "labels": [{"cartan": {"index": 0}},
//!              {"root": {"root": [1], "copy": 0}},
//!              {"root": {"root": [-1], "copy": 0}}],
//!   "brackets": [[0, 1, 1, "2/1"], [0, 2, 2, "-2/1"], [1, 2, 0, "1/1"]],
//!   "involution": [["-1/1", "0/1", "0/1"], ["0/1", "0/1", "-1/1"], ["0/1", "-1/1", "0/1"]],
//!   "a": [0],
//!   "k0": []
//! }
//! ```
//!
//! `brackets` lists `[i, j, k, c]` for `[b_i, b_j] ∋ c·b_k`; the reversed
//! entries are implied. `involution[i][j]` is the coefficient of `b_i` in
//! `σ(b_j)`. Killing form and `B_σ` are recomputed on load and every
//! invariant is validated.

use std::collections::HashMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{BasisLabel, Realization};
use crate::error::{Error, Result};
use crate::lie::StructureConstants;
use crate::linalg::Matrix;
use crate::scalar::{format_rational, parse_rational, Q};

pub const REALIZATION_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationFile {
    pub schema_version: u32,
    pub name: String,
    pub dimension: usize,
    pub labels: Vec<BasisLabel>,
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub involution: Vec<Vec<String>>,
    pub a: Vec<usize>,
    pub k0: Vec<usize>,
}

impl RealizationFile {
    pub fn from_realization(r: &Realization) -> Self {
        let n = r.dim();
        let brackets = r
            .bracket()
            .entries()
            .filter(|(i, j, _, _)| i < j)
            .map(|(i, j, k, c)| (i, j, k, format_rational(c)))
            .collect();
        let involution = (0..n)
            .map(|i| (0..n).map(|j| format_rational(&r.involution()[(i, j)])).collect())
            .collect();
        RealizationFile {
            schema_version: REALIZATION_SCHEMA_VERSION,
            name: r.name().to_string(),
            dimension: n,
            labels: r.labels().to_vec(),
            brackets,
            involution,
            a: r.a_indices().to_vec(),
            k0: r.k0_indices().to_vec(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("malformed realization file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("realization file serializes")
    }

    /// Parses, recomputes the invariant forms and validates every invariant.
    /// Any failure is reported as an input error.
    pub fn into_realization(self) -> Result<Realization> {
        if self.schema_version != REALIZATION_SCHEMA_VERSION {
            return Err(Error::input(format!(
                "unsupported realization schema version {} (expected {REALIZATION_SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let n = self.dimension;
        if self.labels.len() != n {
            return Err(Error::input(format!("{} labels for dimension {n}", self.labels.len())));
        }
        for (set, want) in [(&self.a, "cartan"), (&self.k0, "centralizer")] {
            for &x in set.iter() {
                let ok = match self.labels.get(x) {
                    Some(BasisLabel::Cartan { .. }) => want == "cartan",
                    Some(BasisLabel::Centralizer { .. }) => want == "centralizer",
                    _ => false,
                };
                if !ok {
                    return Err(Error::input(format!("index {x} is not labeled {want}")));
                }
            }
        }
        let mut table: HashMap<(usize, usize, usize), Q> = HashMap::new();
        for (i, j, k, text) in &self.brackets {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::input(format!("bracket entry ({i},{j},{k}) out of range")));
            }
            let c = parse_rational(text).ok_or_else(|| Error::input(format!("bad rational {text:?}")))?;
            if i == j {
                if !c.is_zero() {
                    return Err(Error::input(format!("[b_{i}, b_{i}] must vanish")));
                }
                continue;
            }
            for (key, value) in [((*i, *j, *k), c.clone()), ((*j, *i, *k), -c)] {
                match table.get(&key) {
                    Some(existing) if *existing != value => {
                        return Err(Error::input(format!(
                            "conflicting bracket entries for ({},{},{})",
                            key.0, key.1, key.2
                        )));
                    }
                    _ => {
                        table.insert(key, value);
                    }
                }
            }
        }
        let bracket = StructureConstants::from_entries(n, table.into_iter().map(|((i, j, k), c)| (i, j, k, c)));
        if self.involution.len() != n || self.involution.iter().any(|row| row.len() != n) {
            return Err(Error::input("involution must be a square matrix of the algebra's dimension"));
        }
        let rows = self
            .involution
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| parse_rational(t).ok_or_else(|| Error::input(format!("bad rational {t:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let involution = Matrix::from_rows(rows);
        let rejected = |e: Error| match e {
            Error::Construction(msg) | Error::Precondition(msg) => Error::input(format!("realization rejected: {msg}")),
            other => other,
        };
        let real = Realization::from_parts(self.name, self.labels, bracket, involution, self.a, self.k0)
            .map_err(rejected)?;
        real.validate().map_err(rejected)?;
        Ok(real)
    }
}

pub fn load_realization(path: &Path) -> Result<Realization> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    RealizationFile::from_json(&text)?.into_realization()
}

pub fn save_realization(r: &Realization, path: &Path) -> Result<()> {
    std::fs::write(path, RealizationFile::from_realization(r).to_json())
        .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}
