//! Acceptance battery: one test per claim the library is supposed to
//! uphold, at the full dimension cap. Each test prints its own pass
//! line (visible with --nocapture) and fails with the criterion's
//! diagnostic, which includes enough of the instance to reproduce it.
//!
//! The per-criterion corpora are cached process-wide, so the battery
//! costs one corpus build no matter how the harness schedules tests.

use alcove_cli::verify;

const DIM_MAX: usize = 5;

fn check(number: usize, name: &str, outcome: anyhow::Result<String>) {
    match outcome {
        Ok(detail) => println!("criterion {number:>2} PASS {name}: {detail}"),
        Err(e) => panic!("criterion {number:>2} FAIL {name}: {e:#}"),
    }
}

#[test]
fn criterion_01_minimal_reflexive_battery() {
    check(1, "minimal reflexive battery", verify::criterion_01_minimal_reflexive_battery(DIM_MAX));
}

#[test]
fn criterion_02_triangulation_h_matches_hstar() {
    check(2, "triangulation h equals h*", verify::criterion_02_triangulation_h_matches_hstar(DIM_MAX));
}

#[test]
fn criterion_03_unimodality_scan() {
    check(3, "unimodality scan", verify::criterion_03_unimodality_scan(DIM_MAX));
}

#[test]
fn criterion_04_hstar_inequalities() {
    check(4, "h* inequality families", verify::criterion_04_hstar_inequalities(DIM_MAX));
}

#[test]
fn criterion_05_facet_distance_bound() {
    check(5, "facet distance bound", verify::criterion_05_facet_distance_bound(DIM_MAX));
}

#[test]
fn criterion_06_boundary_triangulations() {
    check(6, "boundary triangulations", verify::criterion_06_boundary_triangulations(DIM_MAX));
}

#[test]
fn criterion_07_reflexive_symmetry() {
    check(7, "reflexive symmetry", verify::criterion_07_reflexive_symmetry(DIM_MAX));
}

#[test]
fn criterion_08_ehrhart_identities() {
    check(8, "Ehrhart identities", verify::criterion_08_ehrhart_identities(DIM_MAX));
}

#[test]
fn criterion_09_peak_location() {
    check(9, "peak location", verify::criterion_09_peak_location(DIM_MAX));
}

#[test]
fn criterion_10_deterministic_reports() {
    check(10, "deterministic reports", verify::criterion_10_deterministic_reports(DIM_MAX));
}
