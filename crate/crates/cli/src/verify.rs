//! The self-test suite behind `alcove verify`: ten numbered checks
//! covering the named families, the two triangulations, the h* identity
//! battery, the theorem scans, and report determinism.
//!
//! Each criterion returns `Ok(detail)` on pass or an error saying
//! exactly which instance broke. The random corpora are fixed by the
//! seed constants below and cached per `dim_max`, so the criteria can
//! share them and repeated runs are free.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex, OnceLock};

use alcove_core::analysis;
use alcove_core::ehrhart::{self, HStarVector, Polynomial};
use alcove_core::enumerate;
use alcove_core::hrep::{Constraint, HRep};
use alcove_core::polytope::AlcovedPolytope;
use alcove_core::rng::derive_seed;
use alcove_core::triangulation::{
    alcove_triangulation, boundary_compatible_triangulation, induced_boundary_complex,
    is_unimodular, restrict_face, Simplex,
};
use alcove_core::{BigInt, Error, Rational};
use anyhow::{anyhow, bail, Context};
use rayon::prelude::*;

use crate::pipeline::{analyze, run_scan, Analysis, Checks, ScanConfig};

/// Base seed of the 100-instance small-generator corpus.
pub const SMALL_SEED: u64 = 0xA1C0_7E00;
/// Base seed of the per-dimension big-generator streams.
pub const BIG_SEED: u64 = 0xA1C0_7E01;
/// Enumeration budget for the verification corpora, ten times the
/// library default: the suite would rather spend minutes than skip.
pub const SCAN_BUDGET: u64 = 100_000_000;

/// Largest `dim_max` the suite accepts. Alcove counts grow like `d!`
/// and box enumeration like `width^d`, so the fixed criteria are sized
/// for dimension 5 and nothing is gained above it.
pub const DIM_MAX_LIMIT: usize = 5;

const BIG_COUNT_PER_DIM: u64 = 50;
const REFLEXIVE_SEARCH_CAP: u64 = 5_000;

pub struct SmallItem {
    pub index: u64,
    pub seed: u64,
    pub dim: usize,
    pub p: AlcovedPolytope,
    pub points: u64,
    pub interior: u64,
    pub hstar: HStarVector,
    pub alcove_cells: u64,
    pub tri_h: Vec<BigInt>,
}

pub struct BigItem {
    pub dim: usize,
    pub k: u64,
    pub seed: u64,
    pub p: AlcovedPolytope,
    pub a: Analysis,
}

type Cache<T> = OnceLock<Mutex<BTreeMap<usize, Result<Arc<Vec<T>>, String>>>>;

fn cached<T>(cache: &Cache<T>, dim_max: usize, build: impl FnOnce() -> Result<Vec<T>, String>) -> anyhow::Result<Arc<Vec<T>>> {
    let mut map = cache.get_or_init(|| Mutex::new(BTreeMap::new())).lock().expect("corpus lock");
    map.entry(dim_max)
        .or_insert_with(|| build().map(Arc::new))
        .clone()
        .map_err(|e| anyhow!("{e}"))
}

/// 100 small-generator instances cycling through dimensions 2, 3, 4,
/// with the per-instance data several criteria share. Instance `i` uses
/// seed `derive_seed(SMALL_SEED, i)`; capping `dim_max` filters
/// instances without renumbering them.
pub fn small_corpus(dim_max: usize) -> anyhow::Result<Arc<Vec<SmallItem>>> {
    static CACHE: Cache<SmallItem> = OnceLock::new();
    cached(&CACHE, dim_max.min(4), || {
        let tasks: Vec<(u64, usize)> = (0..100u64)
            .map(|i| (i, 2 + (i % 3) as usize))
            .filter(|&(_, dim)| dim <= dim_max)
            .collect();
        let built: Vec<Result<SmallItem, String>> = tasks
            .par_iter()
            .map(|&(index, dim)| build_small_item(index, dim).map_err(|e| format!("small instance {index} (dim {dim}): {e}")))
            .collect();
        built.into_iter().collect()
    })
}

fn build_small_item(index: u64, dim: usize) -> alcove_core::Result<SmallItem> {
    let seed = derive_seed(SMALL_SEED, index);
    let p = AlcovedPolytope::random(dim, seed, true)?;
    let points = enumerate::count_budgeted(p.hrep(), SCAN_BUDGET)?;
    let interior = enumerate::count_interior_budgeted(p.hrep(), SCAN_BUDGET)?;
    let hstar = ehrhart::hstar_budgeted(&p, SCAN_BUDGET)?;
    let tri = alcove_triangulation(&p)?;
    Ok(SmallItem {
        index,
        seed,
        dim,
        p,
        points,
        interior,
        hstar,
        alcove_cells: tri.cells().len() as u64,
        tri_h: tri.h_vector(),
    })
}

/// 50 big-generator instances per dimension in `3..=dim_max`. Each
/// dimension has its own seed stream (`derive_seed(BIG_SEED, dim)` as
/// base), so extending one dimension never reshuffles another.
pub fn big_corpus(dim_max: usize) -> anyhow::Result<Arc<Vec<BigItem>>> {
    static CACHE: Cache<BigItem> = OnceLock::new();
    cached(&CACHE, dim_max.min(DIM_MAX_LIMIT), || {
        let mut tasks = Vec::new();
        for dim in 3..=dim_max.min(DIM_MAX_LIMIT) {
            let base = derive_seed(BIG_SEED, dim as u64);
            for k in 0..BIG_COUNT_PER_DIM {
                tasks.push((dim, k, derive_seed(base, k)));
            }
        }
        let built: Vec<Result<BigItem, String>> = tasks
            .par_iter()
            .map(|&(dim, k, seed)| {
                build_big_item(dim, k, seed)
                    .map_err(|e| format!("big instance dim {dim} k {k} seed {seed:#018x}: {e}"))
            })
            .collect();
        built.into_iter().collect()
    })
}

fn build_big_item(dim: usize, k: u64, seed: u64) -> alcove_core::Result<BigItem> {
    let p = AlcovedPolytope::random(dim, seed, false)?;
    let a = analyze(&p, SCAN_BUDGET)?;
    Ok(BigItem { dim, k, seed, p, a })
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Criterion 1: the minimal reflexive family in dimensions 1 through 5.
/// Point count, unique interior origin, facet count, the h* identity
/// with the cube one dimension up, and the alcove cell count.
pub fn criterion_01_minimal_reflexive_battery(dim_max: usize) -> anyhow::Result<String> {
    let top = dim_max.min(DIM_MAX_LIMIT);
    for d in 1..=top {
        let p = AlcovedPolytope::minimal_reflexive(d)?;
        let pts = enumerate::lattice_points(p.hrep())?;
        let expected_points = (1u64 << (d + 1)) - 1;
        if pts.len() as u64 != expected_points {
            bail!("d={d}: {} lattice points, expected {expected_points}", pts.len());
        }
        let interior: Vec<_> = pts.interior_points().collect();
        if interior.len() != 1 || interior[0].coords().iter().any(|&c| c != 0) {
            bail!("d={d}: interior should be exactly the origin, got {interior:?}");
        }
        let facets = p.hrep().facet_constraints()?;
        if facets.len() != d * (d + 1) {
            bail!("d={d}: {} facets, expected {}", facets.len(), d * (d + 1));
        }

        // h* must match the (d+1)-cube's, truncated by one entry: the
        // cube's Ehrhart polynomial is (t+1)^{d+1}.
        let cube_ehr = Polynomial::new(
            (0..=d + 1)
                .map(|i| Rational::from_integer(BigInt::from(binom(d as u64 + 1, i as u64))))
                .collect(),
        );
        let cube_h = ehrhart::ehr_to_hstar(&cube_ehr, d + 1)?;
        let expected = &cube_h.entries()[..=d];
        let got = ehrhart::hstar(&p)?;
        if got.entries() != expected {
            bail!("d={d}: h* {} differs from the truncated cube h*", got);
        }

        let cells = alcove_triangulation(&p)?.cells().len() as u64;
        if cells != factorial(d + 1) {
            bail!("d={d}: {cells} alcove cells, expected {}", factorial(d + 1));
        }
    }
    Ok(format!(
        "d = 1..={top}: points 2^(d+1)-1, unique interior origin, d(d+1) facets, \
         cube h* identity, (d+1)! alcoves"
    ))
}

/// Criterion 2: on the small corpus, the h-vector of the alcove
/// triangulation equals h* entrywise, with the extra entry zero.
pub fn criterion_02_triangulation_h_matches_hstar(dim_max: usize) -> anyhow::Result<String> {
    let corpus = small_corpus(dim_max)?;
    if corpus.is_empty() {
        return Ok("skipped: no corpus dimensions at this dim-max".into());
    }
    for item in corpus.iter() {
        let d = item.dim;
        if item.tri_h.len() != d + 2 {
            bail!("instance {}: h-vector length {}", item.index, item.tri_h.len());
        }
        if item.tri_h[..=d] != *item.hstar.entries() {
            bail!(
                "instance {} (dim {d}, seed {:#018x}): triangulation h-vector {:?} != h* {}",
                item.index,
                item.seed,
                item.tri_h,
                item.hstar
            );
        }
        if item.tri_h[d + 1] != BigInt::from(0) {
            bail!("instance {}: h_{} nonzero", item.index, d + 1);
        }
    }
    Ok(format!("{} small instances (dims 2..4): h-vector == h*, trailing entry 0", corpus.len()))
}

/// Criterion 3: the big-generator scan. Every h* in the corpus is
/// unimodal, in particular on every instance satisfying the
/// distance-one hypothesis.
pub fn criterion_03_unimodality_scan(dim_max: usize) -> anyhow::Result<String> {
    if dim_max < 3 {
        return Ok("skipped: the scan corpus starts at dimension 3".into());
    }
    let corpus = big_corpus(dim_max)?;
    let mut hypothesis = 0u64;
    for item in corpus.iter() {
        if !item.a.unimodal {
            bail!(
                "dim {} k {} seed {:#018x}: h* {:?} is not unimodal ({}): {}",
                item.dim,
                item.k,
                item.seed,
                item.a.hstar,
                if item.a.hypothesis_ok { "hypothesis satisfied" } else { "hypothesis not satisfied" },
                item.p
            );
        }
        if item.a.hypothesis_ok {
            hypothesis += 1;
        }
    }
    Ok(format!(
        "{} instances ({} per dim in 3..={}): every h* unimodal; {hypothesis} satisfied \
         the distance-one hypothesis",
        corpus.len(),
        BIG_COUNT_PER_DIM,
        dim_max.min(DIM_MAX_LIMIT)
    ))
}

/// Criterion 4: the h* inequality families hold across the big corpus.
pub fn criterion_04_hstar_inequalities(dim_max: usize) -> anyhow::Result<String> {
    if dim_max < 3 {
        return Ok("skipped: the scan corpus starts at dimension 3".into());
    }
    let corpus = big_corpus(dim_max)?;
    let mut with_interior = 0u64;
    for item in corpus.iter() {
        if !item.a.hibi_applicable_ok() {
            bail!(
                "dim {} k {} seed {:#018x}: h* {:?} violates an inequality family \
                 (lower bound at {:?}, tail at {:?}, binomial at {:?})",
                item.dim,
                item.k,
                item.seed,
                item.a.hstar,
                item.a.hibi.lower_bound_violations,
                item.a.hibi.tail_violations,
                item.a.hibi.binomial_violations,
            );
        }
        if item.a.interior_points > 0 {
            with_interior += 1;
        }
    }
    Ok(format!(
        "binomial bounds on all {} instances; mirror and tail bounds on the {with_interior} \
         with interior points",
        corpus.len()
    ))
}

/// Criterion 5: facet distances stay within `dim - 1` across the big
/// corpus, and the sharp example attains the bound exactly.
pub fn criterion_05_facet_distance_bound(dim_max: usize) -> anyhow::Result<String> {
    let mut measured = 0u64;
    if dim_max >= 3 {
        let corpus = big_corpus(dim_max)?;
        for item in corpus.iter() {
            if let Some(v) = &item.a.distance_violation {
                bail!("dim {} k {} seed {:#018x}: {v}", item.dim, item.k, item.seed);
            }
            if let Some(max) = item.a.max_facet_distance {
                measured += 1;
                if max > item.dim as i64 - 1 {
                    bail!(
                        "dim {} k {} seed {:#018x}: max facet distance {max} > {}",
                        item.dim,
                        item.k,
                        item.seed,
                        item.dim - 1
                    );
                }
            }
        }
    }
    if dim_max < 2 {
        return Ok("skipped: the distance bound says nothing in dimension 1".into());
    }
    let top = dim_max.min(DIM_MAX_LIMIT);
    for d in 2..=top {
        let p = AlcovedPolytope::sharp_distance_example(d)?;
        let report = analysis::max_facet_distance(&p)?;
        if report.max_distance != d as i64 - 1 {
            bail!("sharp example d={d}: max distance {}, expected {}", report.max_distance, d - 1);
        }
    }
    Ok(format!(
        "{measured} corpus instances with interior points within the bound; sharp example \
         attains d-1 exactly for d = 2..={top}"
    ))
}

fn box_minus_one_one(dim: usize) -> anyhow::Result<AlcovedPolytope> {
    let mut cs = Vec::new();
    for i in 1..=dim {
        cs.push(Constraint::new(i, 0, 1));
        cs.push(Constraint::new(0, i, 1));
    }
    Ok(AlcovedPolytope::validate(HRep::new(dim, cs)?)?)
}

/// The first `want` reflexive instances of the d=3 big stream, by
/// stream position. Reuses the corpus for the first fifty and extends
/// the same stream beyond it if the corpus holds too few.
fn reflexive_d3_targets(dim_max: usize, want: usize) -> anyhow::Result<Vec<(String, AlcovedPolytope)>> {
    let corpus = big_corpus(dim_max)?;
    let mut out = Vec::new();
    for item in corpus.iter().filter(|it| it.dim == 3) {
        if item.a.reflexive {
            out.push((format!("random d=3 k={} seed={:#018x}", item.k, item.seed), item.p.clone()));
            if out.len() == want {
                return Ok(out);
            }
        }
    }
    let base = derive_seed(BIG_SEED, 3);
    for k in BIG_COUNT_PER_DIM..REFLEXIVE_SEARCH_CAP {
        let seed = derive_seed(base, k);
        let p = AlcovedPolytope::random(3, seed, false)?;
        if analysis::is_reflexive(&p)? {
            out.push((format!("random d=3 k={k} seed={seed:#018x}"), p));
            if out.len() == want {
                return Ok(out);
            }
        }
    }
    bail!(
        "only {} reflexive instances in the first {REFLEXIVE_SEARCH_CAP} draws of the d=3 stream",
        out.len()
    )
}

/// Criterion 6: boundary-compatible triangulations. On the listed
/// reflexive targets the cells are unimodular, the induced boundary
/// complex tiles the boundary exactly, and restricting it to any facet
/// reproduces that facet's own alcove triangulation. The sharp d=3
/// example must be rejected with the offending facet named.
pub fn criterion_06_boundary_triangulations(dim_max: usize) -> anyhow::Result<String> {
    let mut targets: Vec<(String, AlcovedPolytope)> = vec![
        ("box [-1,1]^2".into(), box_minus_one_one(2)?),
        ("minimal reflexive d=2".into(), AlcovedPolytope::minimal_reflexive(2)?),
    ];
    if dim_max >= 3 {
        targets.push(("minimal reflexive d=3".into(), AlcovedPolytope::minimal_reflexive(3)?));
        targets.extend(reflexive_d3_targets(dim_max, 5)?);
    }

    let mut cell_counts = Vec::new();
    for (label, p) in &targets {
        let t = boundary_compatible_triangulation(p).with_context(|| label.clone())?;
        for cell in t.cells() {
            if !is_unimodular(cell)? {
                bail!("{label}: non-unimodular cell {cell:?}");
            }
        }
        let bc = induced_boundary_complex(p, &t)?;
        if !bc.covers_boundary {
            let missed: Vec<String> = bc
                .per_facet
                .iter()
                .filter(|c| c.covered_volume != c.facet_volume)
                .map(|c| format!("{} covered {}/{}", c.facet, c.covered_volume, c.facet_volume))
                .collect();
            bail!("{label}: boundary not tiled: {}", missed.join(", "));
        }

        let mut by_facet: BTreeMap<Constraint, BTreeSet<Simplex>> = BTreeMap::new();
        for face in &bc.faces {
            by_facet.entry(face.facet).or_default().insert(restrict_face(p, &face.facet, &face.simplex)?);
        }
        for c in p.hrep().facet_constraints()? {
            let alcoves: BTreeSet<Simplex> =
                alcove_triangulation(p.facet(&c)?.polytope())?.cells().iter().cloned().collect();
            if by_facet.get(&c) != Some(&alcoves) {
                bail!("{label}: restriction to facet {c} differs from its alcove triangulation");
            }
        }
        cell_counts.push(format!("{label}: {} cells", t.cells().len()));
    }

    // The square's 8 cells all touch the origin, its only interior
    // lattice point.
    let square = boundary_compatible_triangulation(&targets[0].1)?;
    if square.cells().len() != 8
        || !square
            .cells()
            .iter()
            .all(|cell| cell.vertices().iter().any(|v| v.coords() == [0, 0]))
    {
        bail!("box [-1,1]^2: expected 8 cells through the origin");
    }

    let mut detail = format!("tiled and facet-matched: {}", cell_counts.join("; "));
    if dim_max >= 3 {
        let sharp = AlcovedPolytope::sharp_distance_example(3)?;
        match boundary_compatible_triangulation(&sharp) {
            Err(Error::HypothesisViolated { facet: (1, 0, 3), distance: 2 }) => {
                detail.push_str("; sharp d=3 example rejected naming facet x_1 <= 3 at distance 2");
            }
            other => bail!(
                "sharp d=3 example: expected the distance-2 facet diagnostic, got {other:?}"
            ),
        }
    }
    Ok(detail)
}

/// Criterion 7: reflexive implies palindromic h* across everything we
/// have, and the chain simplex becomes reflexive exactly at its
/// (d+1)-th dilate.
pub fn criterion_07_reflexive_symmetry(dim_max: usize) -> anyhow::Result<String> {
    let mut reflexive_seen = 0u64;
    for d in 1..=dim_max.min(DIM_MAX_LIMIT) {
        let p = AlcovedPolytope::minimal_reflexive(d)?;
        if !analysis::is_reflexive(&p)? {
            bail!("minimal reflexive d={d} not recognized as reflexive");
        }
        if !analysis::hstar_symmetry(&ehrhart::hstar(&p)?) {
            bail!("minimal reflexive d={d}: h* not palindromic");
        }
        reflexive_seen += 1;
    }
    if dim_max >= 3 {
        for item in big_corpus(dim_max)?.iter() {
            if item.a.reflexive {
                reflexive_seen += 1;
                if !item.a.symmetric {
                    bail!(
                        "dim {} k {} seed {:#018x}: reflexive with non-palindromic h* {:?}",
                        item.dim,
                        item.k,
                        item.seed,
                        item.a.hstar
                    );
                }
            }
        }
    }

    let chain_top = dim_max.min(4);
    for d in 2..=chain_top {
        let relations: Vec<(usize, usize)> = (1..d).map(|i| (i, i + 1)).collect();
        let chain = AlcovedPolytope::order_polytope(d, &relations)?;
        let index = analysis::gorenstein_index(&chain, d as u64 + 2)?;
        if index != Some(d as u64 + 1) {
            bail!("chain simplex d={d}: Gorenstein index {index:?}, expected {}", d + 1);
        }
    }
    Ok(format!(
        "{reflexive_seen} reflexive polytopes all palindromic; chain simplex Gorenstein \
         index d+1 for d = 2..={chain_top}"
    ))
}

/// Criterion 8: the h* identity battery. On the small corpus all four
/// identities and the dilate counts past the interpolation window; on
/// the big corpus the volume identity against the alcove count (its
/// high dilates are beyond the enumeration budget by design).
pub fn criterion_08_ehrhart_identities(dim_max: usize) -> anyhow::Result<String> {
    let corpus = small_corpus(dim_max)?;
    if corpus.is_empty() {
        return Ok("skipped: no corpus dimensions at this dim-max".into());
    }
    for item in corpus.iter() {
        let d = item.dim;
        let h = item.hstar.entries();
        let label = format!("instance {} (dim {d}, seed {:#018x})", item.index, item.seed);
        if h[0] != BigInt::from(1) {
            bail!("{label}: h*_0 = {}", h[0]);
        }
        if h[1] != BigInt::from(item.points) - BigInt::from(d as u64 + 1) {
            bail!("{label}: h*_1 = {} but the polytope has {} points", h[1], item.points);
        }
        if h[d] != BigInt::from(item.interior) {
            bail!("{label}: h*_{d} = {} but {} interior points", h[d], item.interior);
        }
        if item.hstar.sum() != BigInt::from(item.alcove_cells) {
            bail!(
                "{label}: h* sums to {} but the alcove triangulation has {} cells",
                item.hstar.sum(),
                item.alcove_cells
            );
        }
        let ehr = ehrhart::ehrhart_polynomial_budgeted(&item.p, SCAN_BUDGET)?;
        for t in (d as u64 + 1)..=(2 * d as u64 + 1) {
            let counted = enumerate::count_dilate_budgeted(item.p.hrep(), t, SCAN_BUDGET)?;
            if ehr.evaluate_u64(t) != Rational::from_integer(BigInt::from(counted)) {
                bail!(
                    "{label}: polynomial gives {} at t={t} but enumeration counts {counted}",
                    ehr.evaluate_u64(t)
                );
            }
        }
    }

    let mut big_checked = 0u64;
    if dim_max >= 3 {
        for item in big_corpus(dim_max)?.iter() {
            let volume: u64 = item.a.hstar.iter().sum();
            let cells = alcove_triangulation(&item.p)?.cells().len() as u64;
            if volume != cells {
                bail!(
                    "big instance dim {} k {} seed {:#018x}: h* sums to {volume} but the \
                     alcove triangulation has {cells} cells",
                    item.dim,
                    item.k,
                    item.seed
                );
            }
            big_checked += 1;
        }
    }
    Ok(format!(
        "{} small instances: identities and dilate counts at t = d+1..=2d+1; \
         {big_checked} big instances: h* sum == alcove cell count",
        corpus.len()
    ))
}

/// Criterion 9: where the peak of a unimodal h* sits. Under the
/// distance-one hypothesis it is expected at a middle index; anything
/// else is reported as a finding, not a failure.
pub fn criterion_09_peak_location(dim_max: usize) -> anyhow::Result<String> {
    if dim_max < 3 {
        return Ok("skipped: the scan corpus starts at dimension 3".into());
    }
    let corpus = big_corpus(dim_max)?;
    let mut checked = 0u64;
    let mut findings = Vec::new();
    for item in corpus.iter() {
        if !(item.a.hypothesis_ok && item.a.unimodal) {
            continue;
        }
        checked += 1;
        let lower = (item.dim - 1).div_ceil(2);
        let upper = (item.dim + 1).div_ceil(2);
        if !(item.a.peak_indices.contains(&lower) || item.a.peak_indices.contains(&upper)) {
            findings.push(format!(
                "dim {} k {} seed {:#018x} peaks at {:?}",
                item.dim, item.k, item.seed, item.a.peak_indices
            ));
        }
    }
    if findings.is_empty() {
        Ok(format!("{checked} hypothesis instances all peak at a middle index"))
    } else {
        Ok(format!(
            "{checked} hypothesis instances; {} with peaks away from the middle \
             (findings, not failures): {}",
            findings.len(),
            findings.join("; ")
        ))
    }
}

/// Criterion 10: scan reports are byte-identical across thread counts
/// on both corpus-shaped configurations.
pub fn criterion_10_deterministic_reports(dim_max: usize) -> anyhow::Result<String> {
    let mut shapes = Vec::new();
    let small_dims: Vec<usize> = (2..=dim_max.min(4)).collect();
    if !small_dims.is_empty() {
        shapes.push(ScanConfig {
            dims: small_dims,
            count: 33,
            base_seed: SMALL_SEED,
            small: true,
            budget: SCAN_BUDGET,
            jobs: 1,
            timestamps: false,
            checks: Checks::default(),
        });
    }
    let big_dims: Vec<usize> = (3..=dim_max.min(DIM_MAX_LIMIT)).collect();
    if !big_dims.is_empty() {
        shapes.push(ScanConfig {
            dims: big_dims,
            count: BIG_COUNT_PER_DIM,
            base_seed: BIG_SEED,
            small: false,
            budget: SCAN_BUDGET,
            jobs: 1,
            timestamps: false,
            checks: Checks::default(),
        });
    }
    if shapes.is_empty() {
        return Ok("skipped: no scan dimensions at this dim-max".into());
    }

    let mut record_counts = Vec::new();
    for shape in &shapes {
        let serial = run_scan(shape)?;
        let mut parallel_shape = shape.clone();
        parallel_shape.jobs = 4;
        let parallel = run_scan(&parallel_shape)?;
        if serial.report != parallel.report {
            bail!(
                "reports differ between jobs=1 and jobs=4 for dims {:?} ({} generator)",
                shape.dims,
                if shape.small { "small" } else { "big" }
            );
        }
        record_counts.push(serial.summary.instances);
    }
    Ok(format!(
        "byte-identical reports for jobs in {{1, 4}} on {} configurations ({} records)",
        shapes.len(),
        record_counts.iter().map(u64::to_string).collect::<Vec<_>>().join(" + ")
    ))
}

#[derive(Debug)]
pub struct CriterionResult {
    pub number: usize,
    pub name: &'static str,
    pub outcome: anyhow::Result<String>,
}

/// Runs all ten criteria at the given cap, in order. Refuses caps the
/// budgets were never sized for.
pub fn run_all(dim_max: usize) -> anyhow::Result<Vec<CriterionResult>> {
    if dim_max == 0 {
        bail!("dim-max must be at least 1");
    }
    if dim_max > DIM_MAX_LIMIT {
        bail!(
            "dim-max {dim_max} refused: the suite is sized for dimension <= {DIM_MAX_LIMIT} \
             (alcove counts grow like d! and box enumeration like width^d, so the default \
             budgets are exhausted well before dimension {dim_max})"
        );
    }
    type Criterion = fn(usize) -> anyhow::Result<String>;
    let criteria: Vec<(&'static str, Criterion)> = vec![
        ("minimal reflexive battery", criterion_01_minimal_reflexive_battery),
        ("triangulation h equals h*", criterion_02_triangulation_h_matches_hstar),
        ("unimodality scan", criterion_03_unimodality_scan),
        ("h* inequality families", criterion_04_hstar_inequalities),
        ("facet distance bound", criterion_05_facet_distance_bound),
        ("boundary triangulations", criterion_06_boundary_triangulations),
        ("reflexive symmetry", criterion_07_reflexive_symmetry),
        ("Ehrhart identities", criterion_08_ehrhart_identities),
        ("peak location", criterion_09_peak_location),
        ("deterministic reports", criterion_10_deterministic_reports),
    ];
    Ok(criteria
        .into_iter()
        .enumerate()
        .map(|(i, (name, f))| CriterionResult { number: i + 1, name, outcome: f(dim_max) })
        .collect())
}
