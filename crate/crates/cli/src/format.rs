//! The polytope file format: JSON lines, one polytope per line.
//!
//! ```json
//! {"dim":2,"constraints":[[1,0,1],[0,1,1],[1,2,1],[2,1,1],[2,0,1],[0,2,1]],"meta":{"seed":7,"generator":"big","label":"random-big-d2-00000"}}
//! ```
//!
//! A triple `[i, j, k]` is the constraint `x_i - x_j <= k` with indices
//! `0..=dim` and `x_0` standing for the constant 0, so `[i, 0, k]` is an
//! upper bound on `x_i` and `[0, j, k]` a lower bound `-x_j <= k`.
//! Constraints are canonicalized on load (sorted by index pair, tightest
//! bound kept), which makes writing a loaded polytope lossless.

use std::io::{BufRead, Write};

use alcove_core::hrep::{Constraint, HRep};
use alcove_core::polytope::AlcovedPolytope;
use anyhow::Context;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Meta {
    pub fn is_empty(&self) -> bool {
        self.seed.is_none() && self.generator.is_none() && self.label.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeRecord {
    pub dim: usize,
    pub constraints: Vec<(usize, usize, i64)>,
    #[serde(default, skip_serializing_if = "Meta::is_empty")]
    pub meta: Meta,
}

impl PolytopeRecord {
    /// Canonical record for a validated polytope.
    pub fn from_polytope(p: &AlcovedPolytope, meta: Meta) -> Self {
        PolytopeRecord {
            dim: p.dim(),
            constraints: p.hrep().constraints().iter().map(|c| (c.i, c.j, c.bound)).collect(),
            meta,
        }
    }

    /// Validates the recorded system (bounded, feasible, full
    /// dimensional) and canonicalizes the constraints.
    pub fn to_polytope(&self) -> Result<AlcovedPolytope, alcove_core::Error> {
        let cs = self.constraints.iter().map(|&(i, j, k)| Constraint::new(i, j, k));
        AlcovedPolytope::validate(HRep::new(self.dim, cs)?)
    }

    pub fn display_label(&self) -> String {
        self.meta.label.clone().unwrap_or_else(|| format!("dim-{}", self.dim))
    }
}

/// Reads one record per nonempty line, with line numbers in errors.
pub fn read_records(reader: impl BufRead) -> anyhow::Result<Vec<PolytopeRecord>> {
    let mut records = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line.with_context(|| format!("reading line {}", n + 1))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: PolytopeRecord =
            serde_json::from_str(&line).with_context(|| format!("parsing line {}", n + 1))?;
        records.push(record);
    }
    Ok(records)
}

pub fn write_record(mut writer: impl Write, record: &PolytopeRecord) -> anyhow::Result<()> {
    serde_json::to_writer(&mut writer, record)?;
    writer.write_all(b"\n")?;
    Ok(())
}
