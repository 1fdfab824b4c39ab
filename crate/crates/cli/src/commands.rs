//! Subcommand bodies. Each returns the process exit code on success so
//! `main` stays a thin parser:
//!
//! - 0: success
//! - 1: usage, IO, or malformed input
//! - 2: a diagnostic from the mathematics (infeasible input, violated
//!   triangulation hypothesis, exhausted budget, ...)
//! - 3: a theorem violation or scan counterexample, the result worth
//!   shouting about
//!
//! The code-to-error mapping lives in `main`; bodies just bubble errors.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::Path;
use std::str::FromStr;

use alcove_core::ehrhart::{self, HStarVector};
use alcove_core::enumerate::{self, DEFAULT_POINT_BUDGET};
use alcove_core::polytope::AlcovedPolytope;
use alcove_core::rng::derive_seed;
use alcove_core::triangulation::{
    alcove_triangulation, boundary_compatible_triangulation_budgeted, induced_boundary_complex,
    Triangulation, DEFAULT_CANDIDATE_BUDGET,
};
use alcove_core::analysis;
use anyhow::{bail, Context};
use serde::Serialize;

use crate::format::{read_records, write_record, Meta, PolytopeRecord};
use crate::pipeline::{entries_to_u64, run_scan, Checks, ScanConfig};
use crate::verify;

fn read_input(path: Option<&Path>) -> anyhow::Result<Vec<PolytopeRecord>> {
    match path {
        Some(p) => {
            let file =
                File::open(p).with_context(|| format!("cannot open {}", p.display()))?;
            read_records(BufReader::new(file))
        }
        None => read_records(std::io::stdin().lock()),
    }
}

pub fn cmd_gen(
    dim: usize,
    count: u64,
    seed: u64,
    small: bool,
    out: Option<&Path>,
) -> anyhow::Result<i32> {
    if dim < 2 {
        bail!("--dim must be at least 2");
    }
    if count == 0 {
        bail!("--count must be at least 1");
    }
    let generator = if small { "small" } else { "big" };
    let mut records = Vec::new();
    for i in 0..count {
        let instance_seed = derive_seed(seed, i);
        let p = AlcovedPolytope::random(dim, instance_seed, small)?;
        let meta = Meta {
            seed: Some(instance_seed),
            generator: Some(generator.into()),
            label: Some(format!("random-{generator}-d{dim}-{i:05}")),
        };
        records.push(PolytopeRecord::from_polytope(&p, meta));
    }

    match out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .with_context(|| format!("cannot create {}", dir.display()))?;
            for (i, record) in records.iter().enumerate() {
                let path = dir.join(format!("{i:05}.json"));
                let file = File::create(&path)
                    .with_context(|| format!("cannot write {}", path.display()))?;
                write_record(BufWriter::new(file), record)?;
            }
            eprintln!("wrote {count} records to {}", dir.display());
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for record in &records {
                write_record(&mut lock, record)?;
            }
        }
    }
    Ok(0)
}

#[derive(Debug, Serialize)]
struct HstarLine {
    label: String,
    dim: usize,
    points: u64,
    interior_points: u64,
    ehrhart: String,
    hstar: Vec<u64>,
    unimodal: bool,
    peak_indices: Vec<usize>,
    symmetry_ok: bool,
}

fn hstar_line(record: &PolytopeRecord, budget: u64) -> anyhow::Result<(HstarLine, HStarVector)> {
    let p = record.to_polytope()?;
    let h = ehrhart::hstar_budgeted(&p, budget)?;
    let ehr = ehrhart::ehrhart_polynomial_budgeted(&p, budget)?;
    let uni = analysis::is_unimodal(h.entries())?;
    let line = HstarLine {
        label: record.display_label(),
        dim: p.dim(),
        points: enumerate::count_budgeted(p.hrep(), budget)?,
        interior_points: enumerate::count_interior_budgeted(p.hrep(), budget)?,
        ehrhart: ehr.to_string(),
        hstar: entries_to_u64(h.entries())?,
        unimodal: uni.unimodal,
        peak_indices: uni.peak_indices,
        symmetry_ok: analysis::hstar_symmetry(&h),
    };
    Ok((line, h))
}

pub fn cmd_hstar(input: Option<&Path>, budget: Option<u64>, table: bool) -> anyhow::Result<i32> {
    let budget = budget.unwrap_or(DEFAULT_POINT_BUDGET);
    let records = read_input(input)?;
    // Everything is computed before anything is printed, so a bad record
    // anywhere means no partial output.
    let mut lines = Vec::new();
    for record in &records {
        lines.push(hstar_line(record, budget).with_context(|| record.display_label())?);
    }
    for (line, h) in &lines {
        if table {
            println!("{:>4}  {}", line.dim, h);
        } else {
            println!("{}", serde_json::to_string(line)?);
        }
    }
    Ok(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Alcove,
    Boundary,
}

impl FromStr for Method {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Method> {
        match s {
            "alcove" => Ok(Method::Alcove),
            "boundary" => Ok(Method::Boundary),
            other => bail!("unknown method {other:?}; valid: alcove, boundary"),
        }
    }
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Alcove => "alcove",
            Method::Boundary => "boundary",
        }
    }

    /// Cell counts grow factorially, so each method caps the dimension
    /// it will attempt without an explicit budget.
    fn default_dim_cap(self) -> usize {
        match self {
            Method::Alcove => 6,
            Method::Boundary => 5,
        }
    }
}

#[derive(Debug, Serialize)]
struct FacetCoverageLine {
    facet: (usize, usize, i64),
    facet_volume: u64,
    covered_volume: u64,
}

#[derive(Debug, Serialize)]
struct BoundarySummary {
    faces: usize,
    covers_boundary: bool,
    per_facet: Vec<FacetCoverageLine>,
}

#[derive(Debug, Serialize)]
struct TriangulationLine {
    label: String,
    dim: usize,
    method: &'static str,
    cell_count: usize,
    f_vector: Vec<u64>,
    h_vector: Vec<u64>,
    cells: Vec<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary: Option<BoundarySummary>,
}

fn triangulation_line(
    record: &PolytopeRecord,
    method: Method,
    budget: Option<u64>,
) -> anyhow::Result<TriangulationLine> {
    let p = record.to_polytope()?;
    if p.dim() > method.default_dim_cap() {
        if budget.is_none() {
            bail!(
                "dimension {} exceeds the default cap {} for the {} method; cell counts grow \
                 factorially, pass an explicit --budget to proceed anyway",
                p.dim(),
                method.default_dim_cap(),
                method.name()
            );
        }
        eprintln!(
            "warning: dimension {} is past the default cap {} for the {} method; \
             proceeding because --budget was given",
            p.dim(),
            method.default_dim_cap(),
            method.name()
        );
    }

    let (t, boundary): (Triangulation, Option<BoundarySummary>) = match method {
        Method::Alcove => (alcove_triangulation(&p)?, None),
        Method::Boundary => {
            let t = boundary_compatible_triangulation_budgeted(
                &p,
                budget.unwrap_or(DEFAULT_CANDIDATE_BUDGET),
            )?;
            let bc = induced_boundary_complex(&p, &t)?;
            let summary = BoundarySummary {
                faces: bc.faces.len(),
                covers_boundary: bc.covers_boundary,
                per_facet: bc
                    .per_facet
                    .iter()
                    .map(|c| FacetCoverageLine {
                        facet: (c.facet.i, c.facet.j, c.facet.bound),
                        facet_volume: c.facet_volume,
                        covered_volume: c.covered_volume,
                    })
                    .collect(),
            };
            (t, Some(summary))
        }
    };

    Ok(TriangulationLine {
        label: record.display_label(),
        dim: p.dim(),
        method: method.name(),
        cell_count: t.cells().len(),
        f_vector: t.f_vector(),
        h_vector: entries_to_u64(&t.h_vector())?,
        cells: t
            .cells()
            .iter()
            .map(|c| c.vertices().iter().map(|v| v.coords().to_vec()).collect())
            .collect(),
        boundary,
    })
}

pub fn cmd_triangulate(
    input: Option<&Path>,
    method: Method,
    budget: Option<u64>,
    out: Option<&Path>,
) -> anyhow::Result<i32> {
    let records = read_input(input)?;
    let mut lines = Vec::new();
    for record in &records {
        lines.push(
            triangulation_line(record, method, budget)
                .with_context(|| record.display_label())?,
        );
    }
    let mut rendered = String::new();
    for line in &lines {
        rendered.push_str(&serde_json::to_string(line)?);
        rendered.push('\n');
    }
    match out {
        Some(path) => {
            fs::write(path, rendered)
                .with_context(|| format!("cannot write {}", path.display()))?;
            eprintln!("wrote {} triangulations to {}", lines.len(), path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(0)
}

/// Parses `--checks`: a comma-separated subset of the violation
/// families. An empty selection is a usage error; omitting the flag
/// entirely means all of them.
pub fn parse_checks(s: &str) -> anyhow::Result<Checks> {
    let mut checks = Checks {
        unimodal: false,
        hypothesis: false,
        hibi_stanley: false,
        distance: false,
        symmetry: false,
    };
    let mut any = false;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        any = true;
        match part {
            "unimodal" => checks.unimodal = true,
            "hypothesis" => checks.hypothesis = true,
            "hibi-stanley" => checks.hibi_stanley = true,
            "distance" => checks.distance = true,
            "symmetry" => checks.symmetry = true,
            other => bail!(
                "unknown check {other:?}; valid: unimodal, hypothesis, hibi-stanley, \
                 distance, symmetry"
            ),
        }
    }
    if !any {
        bail!("--checks selected nothing; omit the flag to run every check");
    }
    Ok(checks)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_scan(
    dims: &[usize],
    count: u64,
    seed: u64,
    small: bool,
    checks: Option<&str>,
    jobs: usize,
    budget: Option<u64>,
    timestamps: bool,
    out: Option<&Path>,
) -> anyhow::Result<i32> {
    if dims.is_empty() {
        bail!("--dim is required");
    }
    if let Some(&bad) = dims.iter().find(|&&d| d < 2) {
        bail!("--dim {bad} is below 2");
    }
    if count == 0 {
        bail!("--count must be at least 1");
    }
    let config = ScanConfig {
        dims: dims.to_vec(),
        count,
        base_seed: seed,
        small,
        budget: budget.unwrap_or(DEFAULT_POINT_BUDGET),
        jobs,
        timestamps,
        checks: checks.map(parse_checks).transpose()?.unwrap_or_default(),
    };
    let output = run_scan(&config)?;

    let s = &output.summary;
    let human = format!(
        "scanned {}: {} ok, {} violations, {} inconclusive, {} skipped; \
         hypothesis on {}, unimodal {}, reflexive {}, max facet distance {}",
        s.instances,
        s.ok,
        s.violations,
        s.inconclusive,
        s.skipped,
        s.hypothesis_satisfied,
        s.unimodal,
        s.reflexive,
        s.max_facet_distance_seen.map_or("none observed".into(), |d| d.to_string()),
    );
    match out {
        Some(path) => {
            fs::write(path, &output.report)
                .with_context(|| format!("cannot write {}", path.display()))?;
            println!("{human}");
        }
        None => {
            print!("{}", output.report);
            eprintln!("{human}");
        }
    }
    Ok(if s.violations > 0 { 3 } else { 0 })
}

pub fn cmd_verify(dim_max: usize) -> anyhow::Result<i32> {
    let results = verify::run_all(dim_max)?;
    let mut failures = 0;
    for r in &results {
        match &r.outcome {
            Ok(detail) => println!("criterion {:>2} PASS {}: {detail}", r.number, r.name),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2} FAIL {}: {e:#}", r.number, r.name);
            }
        }
    }
    println!("{} of {} criteria passed (dim-max {dim_max})", results.len() - failures, results.len());
    Ok(if failures > 0 { 3 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_parsing() {
        let c = parse_checks("unimodal,distance").unwrap();
        assert!(c.unimodal && c.distance);
        assert!(!c.hypothesis && !c.hibi_stanley && !c.symmetry);
        assert!(parse_checks("unimodular").is_err());
        assert!(parse_checks("").is_err());
        assert_eq!(parse_checks("symmetry, hypothesis").unwrap(), Checks {
            unimodal: false,
            hypothesis: true,
            hibi_stanley: false,
            distance: false,
            symmetry: true,
        });
    }

    #[test]
    fn method_parsing() {
        assert_eq!("alcove".parse::<Method>().unwrap(), Method::Alcove);
        assert_eq!("boundary".parse::<Method>().unwrap(), Method::Boundary);
        assert!("delaunay".parse::<Method>().is_err());
    }

    #[test]
    fn hstar_line_on_reference_square() {
        let p = AlcovedPolytope::minimal_reflexive(2).unwrap();
        let record = PolytopeRecord::from_polytope(&p, Meta::default());
        let (line, h) = hstar_line(&record, DEFAULT_POINT_BUDGET).unwrap();
        assert_eq!(line.hstar, [1, 4, 1]);
        assert_eq!(line.ehrhart, "3*t^2 + 3*t + 1");
        assert_eq!(line.points, 7);
        assert_eq!(line.interior_points, 1);
        assert!(line.unimodal && line.symmetry_ok);
        assert_eq!(line.peak_indices, [1]);
        assert_eq!(h.to_string(), "(1, 4, 1)");
    }

    #[test]
    fn triangulation_line_reports_boundary() {
        let p = AlcovedPolytope::minimal_reflexive(2).unwrap();
        let record = PolytopeRecord::from_polytope(&p, Meta::default());
        let line = triangulation_line(&record, Method::Boundary, None).unwrap();
        assert_eq!(line.cell_count, 6);
        assert_eq!(line.f_vector, [1, 7, 12, 6]);
        assert_eq!(line.h_vector, [1, 4, 1, 0]);
        let b = line.boundary.unwrap();
        assert!(b.covers_boundary);
        assert_eq!(b.per_facet.len(), 6);
    }

    #[test]
    fn oversized_dimension_needs_an_explicit_budget() {
        // A 6-polytope is past the boundary method's default cap.
        let p = AlcovedPolytope::minimal_reflexive(6).unwrap();
        let record = PolytopeRecord::from_polytope(&p, Meta::default());
        let err = triangulation_line(&record, Method::Boundary, None).unwrap_err();
        assert!(err.to_string().contains("--budget"));
    }
}
