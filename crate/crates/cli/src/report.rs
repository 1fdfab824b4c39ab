//! Scan report records: JSON lines, one instance per line, and a final
//! summary line `{"summary":{...}}`.
//!
//! Reports carry no timestamps unless asked, so identical scan
//! parameters produce byte-identical reports regardless of thread count.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub index: u64,
    pub seed: u64,
    pub dim: usize,
    pub generator: String,
    /// The instance itself, dumped when the outcome is a violation so
    /// the record alone reproduces the finding.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<(usize, usize, i64)>,
    /// "ok", "violation", "inconclusive", or "skipped".
    pub outcome: String,
    pub points: u64,
    pub interior_points: u64,
    pub hstar: Vec<u64>,
    pub unimodal: bool,
    pub peak_indices: Vec<usize>,
    /// All facets at lattice distance 1 from a nonempty interior.
    pub hypothesis_ok: bool,
    /// Absent when there are no interior lattice points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_facet_distance: Option<i64>,
    pub hibi_stanley_ok: bool,
    pub symmetry_ok: bool,
    pub reflexive: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub instances: u64,
    pub ok: u64,
    pub violations: u64,
    pub inconclusive: u64,
    pub skipped: u64,
    pub hypothesis_satisfied: u64,
    pub unimodal: u64,
    pub reflexive: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_facet_distance_seen: Option<i64>,
}

impl ScanSummary {
    pub fn tally(records: &[ScanRecord]) -> ScanSummary {
        let mut s = ScanSummary { instances: records.len() as u64, ..ScanSummary::default() };
        for r in records {
            match r.outcome.as_str() {
                "ok" => s.ok += 1,
                "violation" => s.violations += 1,
                "inconclusive" => s.inconclusive += 1,
                _ => s.skipped += 1,
            }
            if r.hypothesis_ok {
                s.hypothesis_satisfied += 1;
            }
            if r.unimodal {
                s.unimodal += 1;
            }
            if r.reflexive {
                s.reflexive += 1;
            }
            if let Some(d) = r.max_facet_distance {
                s.max_facet_distance_seen = Some(s.max_facet_distance_seen.map_or(d, |m| m.max(d)));
            }
        }
        s
    }
}

#[derive(Serialize, Deserialize)]
struct SummaryLine {
    summary: ScanSummary,
}

/// The full report text: one record per line, then the summary.
pub fn render(records: &[ScanRecord], summary: &ScanSummary) -> anyhow::Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    out.push_str(&serde_json::to_string(&SummaryLine { summary: summary.clone() })?);
    out.push('\n');
    Ok(out)
}

/// Parses a report back, mainly for tests and tooling.
pub fn parse(text: &str) -> anyhow::Result<(Vec<ScanRecord>, ScanSummary)> {
    let mut records = Vec::new();
    let mut summary = None;
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        if let Ok(s) = serde_json::from_str::<SummaryLine>(line) {
            summary = Some(s.summary);
        } else {
            records.push(serde_json::from_str::<ScanRecord>(line)?);
        }
    }
    Ok((records, summary.ok_or_else(|| anyhow::anyhow!("report has no summary line"))?))
}
