//! Single-instance analysis and the scan driver.
//!
//! A scan draws random alcoved polytopes from seeded streams, computes
//! their h* data, and checks the properties the library is built around:
//! unimodality under the distance-one hypothesis, the facet distance
//! bound, the h* inequality families, and reflexive/palindromic
//! agreement. Instance seeds are derived from the base seed and the
//! instance index, never from a shared mutable generator, so the report
//! is byte-identical for any `--jobs` value.

use alcove_core::analysis::{self, HibiStanleyReport};
use alcove_core::ehrhart;
use alcove_core::enumerate;
use alcove_core::polytope::AlcovedPolytope;
use alcove_core::rng::derive_seed;
use alcove_core::{BigInt, Error};
use rayon::prelude::*;

use crate::report::{render, ScanRecord, ScanSummary};

/// Everything the scan wants to know about one polytope.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub points: u64,
    pub interior_points: u64,
    pub hstar: Vec<u64>,
    pub unimodal: bool,
    pub peak_indices: Vec<usize>,
    pub first_violation: Option<usize>,
    pub hypothesis_ok: bool,
    /// None when the interior has no lattice points.
    pub max_facet_distance: Option<i64>,
    /// Set when the facet distance bound itself fails.
    pub distance_violation: Option<String>,
    pub hibi: HibiStanleyReport,
    pub symmetric: bool,
    pub reflexive: bool,
}

/// Exact narrowing for report fields; desk-scale h entries are far
/// below the limit, and anything larger is a genuine overflow.
pub(crate) fn entries_to_u64(entries: &[BigInt]) -> alcove_core::Result<Vec<u64>> {
    entries.iter().map(|e| u64::try_from(e).map_err(|_| Error::Overflow)).collect()
}

pub fn analyze(p: &AlcovedPolytope, budget: u64) -> alcove_core::Result<Analysis> {
    let points = enumerate::count_budgeted(p.hrep(), budget)?;
    let interior_points = enumerate::count_interior_budgeted(p.hrep(), budget)?;
    let h = ehrhart::hstar_budgeted(p, budget)?;
    let uni = analysis::is_unimodal(h.entries())?;
    let hypothesis_ok = analysis::interior_distance_one(p)?;

    let (max_facet_distance, distance_violation) = if interior_points == 0 {
        (None, None)
    } else {
        match analysis::max_facet_distance(p) {
            Ok(report) => (Some(report.max_distance), None),
            Err(Error::TheoremViolation { what }) => {
                // Keep the record intact: recover the offending maximum
                // facet by facet.
                let mut max = None;
                for c in p.hrep().facet_constraints()? {
                    let d = analysis::facet_distance(p, &c)?;
                    max = Some(max.map_or(d, |m: i64| m.max(d)));
                }
                (max, Some(what))
            }
            Err(e) => return Err(e),
        }
    };

    Ok(Analysis {
        points,
        interior_points,
        hstar: entries_to_u64(h.entries())?,
        unimodal: uni.unimodal,
        peak_indices: uni.peak_indices,
        first_violation: uni.first_violation,
        hypothesis_ok,
        max_facet_distance,
        distance_violation,
        hibi: analysis::hibi_stanley_check(&h),
        symmetric: analysis::hstar_symmetry(&h),
        reflexive: analysis::is_reflexive(p)?,
    })
}

/// Which violation families a scan reports. Everything is still
/// computed and recorded; this only selects what counts against the
/// outcome and the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checks {
    /// Any non-unimodal h* at all (the conjecture the scan exists for).
    pub unimodal: bool,
    /// Non-unimodal h* despite the distance-one hypothesis: a proven
    /// statement failing, the strictest reading.
    pub hypothesis: bool,
    pub hibi_stanley: bool,
    pub distance: bool,
    pub symmetry: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks { unimodal: true, hypothesis: true, hibi_stanley: true, distance: true, symmetry: true }
    }
}

impl Analysis {
    /// Statements that contradict a theorem or the unimodality
    /// conjecture. Any entry makes the instance a "violation"; an empty
    /// list means every selected check passed.
    pub fn violations(&self, checks: &Checks) -> Vec<String> {
        let mut out = Vec::new();
        if !self.unimodal {
            let k = self.first_violation.expect("non-unimodal report has a violation index");
            if checks.hypothesis && self.hypothesis_ok {
                out.push(format!(
                    "h* rises again at index {k} although every facet is at lattice distance 1"
                ));
            } else if checks.unimodal {
                out.push(format!("h* is not unimodal, rising again at index {k}"));
            }
        }
        if checks.distance {
            if let Some(v) = &self.distance_violation {
                out.push(format!("facet distance bound failed: {v}"));
            }
        }
        // The binomial bounds hold for any h*. The lower-bound and tail
        // families need interior lattice points.
        if checks.hibi_stanley {
            for i in &self.hibi.binomial_violations {
                out.push(format!("h*_{i} exceeds the binomial bound from h*_1"));
            }
            if self.interior_points > 0 {
                for i in &self.hibi.lower_bound_violations {
                    out.push(format!(
                        "h*_{i} smaller than its mirror entry despite interior points"
                    ));
                }
                for i in &self.hibi.tail_violations {
                    out.push(format!("h* tail rises at index {i} despite interior points"));
                }
            }
        }
        if checks.symmetry && self.reflexive && !self.symmetric {
            out.push("reflexive polytope with a non-palindromic h*".into());
        }
        out
    }

    /// Observations worth flagging without calling them violations.
    pub fn inconclusive_notes(&self, checks: &Checks) -> Vec<String> {
        let mut out = Vec::new();
        if checks.symmetry && self.symmetric && !self.reflexive {
            out.push("h* palindromic but the reflexivity check failed".into());
        }
        out
    }

    /// Violations the hibi check found that actually apply here.
    pub fn hibi_applicable_ok(&self) -> bool {
        self.hibi.binomial_violations.is_empty()
            && (self.interior_points == 0
                || (self.hibi.lower_bound_violations.is_empty()
                    && self.hibi.tail_violations.is_empty()))
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub dims: Vec<usize>,
    pub count: u64,
    pub base_seed: u64,
    pub small: bool,
    pub budget: u64,
    pub jobs: usize,
    pub timestamps: bool,
    pub checks: Checks,
}

pub struct ScanOutput {
    pub report: String,
    pub summary: ScanSummary,
}

fn scan_instance(index: u64, dim: usize, config: &ScanConfig) -> ScanRecord {
    let seed = derive_seed(config.base_seed, index);
    let generator = if config.small { "small" } else { "big" };
    let started = config.timestamps.then(std::time::Instant::now);

    let mut record = ScanRecord {
        index,
        seed,
        dim,
        generator: generator.into(),
        constraints: Vec::new(),
        outcome: "skipped".into(),
        points: 0,
        interior_points: 0,
        hstar: Vec::new(),
        unimodal: false,
        peak_indices: Vec::new(),
        hypothesis_ok: false,
        max_facet_distance: None,
        hibi_stanley_ok: false,
        symmetry_ok: false,
        reflexive: false,
        notes: Vec::new(),
        wall_time_ms: None,
    };

    let analysis = AlcovedPolytope::random(dim, seed, config.small)
        .map(|p| (analyze(&p, config.budget), p));
    match analysis {
        Ok((Ok(a), p)) => {
            let violations = a.violations(&config.checks);
            let notes = a.inconclusive_notes(&config.checks);
            record.outcome = if !violations.is_empty() {
                // A violation record must reproduce its instance on its
                // own, so dump the constraint system into it.
                record.constraints =
                    p.hrep().constraints().iter().map(|c| (c.i, c.j, c.bound)).collect();
                "violation"
            } else if !notes.is_empty() {
                "inconclusive"
            } else {
                "ok"
            }
            .into();
            record.points = a.points;
            record.interior_points = a.interior_points;
            record.hstar = a.hstar.clone();
            record.unimodal = a.unimodal;
            record.peak_indices = a.peak_indices.clone();
            record.hypothesis_ok = a.hypothesis_ok;
            record.max_facet_distance = a.max_facet_distance;
            record.hibi_stanley_ok = a.hibi_applicable_ok();
            record.symmetry_ok = a.symmetric;
            record.reflexive = a.reflexive;
            record.notes = violations.into_iter().chain(notes).collect();
        }
        Ok((Err(e), _)) | Err(e) => {
            record.notes.push(format!("analysis skipped: {e}"));
        }
    }

    if let Some(t) = started {
        record.wall_time_ms = Some(t.elapsed().as_millis() as u64);
    }
    record
}

/// Runs the whole scan and renders the report. Records are ordered by
/// instance index regardless of how many worker threads ran them.
pub fn run_scan(config: &ScanConfig) -> anyhow::Result<ScanOutput> {
    let mut tasks = Vec::new();
    for &dim in &config.dims {
        for _ in 0..config.count {
            tasks.push((tasks.len() as u64, dim));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build()?;
    let records: Vec<ScanRecord> =
        pool.install(|| tasks.par_iter().map(|&(index, dim)| scan_instance(index, dim, config)).collect());
    let summary = ScanSummary::tally(&records);
    let report = render(&records, &summary)?;
    Ok(ScanOutput { report, summary })
}
