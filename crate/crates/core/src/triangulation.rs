//! Alcove triangulations and the boundary-compatible refinement.
//!
//! The hyperplanes `x_i - x_j = m` (indices 0..=d, `x_0 = 0`, `m` an
//! integer) cut space into unimodular simplices, one per pair of a base
//! lattice point `b` and a coordinate order `σ`: the cell with vertices
//! `b`, `b + e_{σ(1)}`, `b + e_{σ(1)} + e_{σ(2)}`, ... An alcoved
//! polytope is a union of such cells, so they triangulate it; the cells
//! contained in `P` are exactly those whose vertices all lie in `P`.
//!
//! [`boundary_compatible_triangulation`] builds a second unimodular
//! triangulation as the lower hull of the lattice points lifted to the
//! lexicographic height pair `(b(x), a(x))` with `b = 0` on interior
//! points, `1` on boundary points, and
//! `a(x) = Σ x_i^2 + Σ_{i<j} (x_i - x_j)^2`. The primary height pulls
//! the interior down, which keeps every facet's lift a face of the
//! hull, so the restriction to a facet only sees `a`, and `a` is the
//! form whose lower hull is the alcove triangulation. It exists when
//! every facet lies at lattice distance 1 from the interior points;
//! farther facets fail with [`Error::HypothesisViolated`].
//!
//! All simplex tests run on exact integer determinants. For a candidate
//! cell `S` and query point `p`, the residual of `p` against the lifted
//! affine span of `S` has the sign of `-LIFT * ORIENT`, where `ORIENT`
//! borders the coordinates of `S` with a column of ones and `LIFT`
//! additionally carries the heights and the row of `p`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::det::determinant;
use crate::ehrhart::binomial;
use crate::enumerate;
use crate::hrep::{Constraint, HRep, LatticePoint};
use crate::polytope::AlcovedPolytope;
use crate::{Error, Result};

/// Cap on `C(#points, d + 1)` in the lifted-triangulation search.
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 10_000_000;

/// A lattice simplex: distinct vertices in a common ambient dimension,
/// kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<LatticePoint>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<LatticePoint>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::EmptyList);
        };
        let dim = first.dim();
        if let Some(bad) = vertices.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: bad.dim() });
        }
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DegenerateSimplex);
        }
        Ok(Simplex { vertices })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Simplex dimension (one less than the vertex count).
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }
}

/// Determinant of the edge matrix of a full-dimensional simplex: its
/// normalized volume up to sign.
fn edge_determinant(s: &Simplex) -> Result<i128> {
    let d = s.ambient_dim();
    if s.vertices.len() != d + 1 {
        return Err(Error::InvalidParameter { what: "edge determinant needs d + 1 vertices" });
    }
    let base = &s.vertices[0];
    let rows: Vec<Vec<i128>> = s.vertices[1..]
        .iter()
        .map(|v| v.coords().iter().zip(base.coords()).map(|(&a, &b)| a as i128 - b as i128).collect())
        .collect();
    determinant(&rows)
}

/// Whether a full-dimensional lattice simplex has normalized volume 1.
pub fn is_unimodular(s: &Simplex) -> Result<bool> {
    match edge_determinant(s)? {
        0 => Err(Error::DegenerateSimplex),
        v => Ok(v == 1 || v == -1),
    }
}

/// A set of full-dimensional cells, sorted for deterministic output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    dim: usize,
    cells: Vec<Simplex>,
}

impl Triangulation {
    fn new(dim: usize, mut cells: Vec<Simplex>) -> Self {
        cells.sort();
        Triangulation { dim, cells }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    /// Face counts `(f_{-1}, f_0, ..., f_d)` with `f_{-1} = 1` for the
    /// empty face; faces are the vertex subsets of the cells.
    pub fn f_vector(&self) -> Vec<u64> {
        let d = self.dim;
        let mut faces: Vec<BTreeSet<Vec<&LatticePoint>>> = vec![BTreeSet::new(); d + 1];
        for cell in &self.cells {
            let vs = cell.vertices();
            for mask in 1u64..(1 << vs.len()) {
                let face: Vec<&LatticePoint> =
                    vs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v).collect();
                faces[face.len() - 1].insert(face);
            }
        }
        let mut f = Vec::with_capacity(d + 2);
        f.push(1);
        f.extend(faces.iter().map(|s| s.len() as u64));
        f
    }

    /// The h-vector `h_k = Σ_i (-1)^(k-i) C(d+1-i, k-i) f_{i-1}`. For a
    /// unimodular triangulation of a lattice polytope this equals the h*
    /// vector padded with a trailing zero.
    pub fn h_vector(&self) -> Vec<BigInt> {
        let f = self.f_vector();
        let top = f.len() - 1;
        (0..=top)
            .map(|k| {
                let mut acc = BigInt::zero();
                for (i, &fi) in f.iter().enumerate().take(k + 1) {
                    let term = binomial(&BigInt::from((top - i) as u64), k - i) * BigInt::from(fi);
                    if (k - i) % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc
            })
            .collect()
    }
}

/// The alcove cells contained in the polytope, found by walking
/// coordinate orders from each lattice point and pruning as soon as a
/// partial vertex chain leaves it.
pub fn alcove_triangulation(p: &AlcovedPolytope) -> Result<Triangulation> {
    let h = p.hrep();
    let d = p.dim();
    let points = enumerate::lattice_points(h)?;
    let mut cells = Vec::new();
    let mut chain: Vec<Vec<i64>> = Vec::with_capacity(d + 1);
    let mut used = vec![false; d + 1];
    for b in points.points() {
        chain.push(b.coords().to_vec());
        extend_chain(h, &mut chain, &mut used, &mut cells)?;
        chain.pop();
    }
    Ok(Triangulation::new(d, cells))
}

fn extend_chain(
    h: &HRep,
    chain: &mut Vec<Vec<i64>>,
    used: &mut [bool],
    cells: &mut Vec<Simplex>,
) -> Result<()> {
    let d = h.dim();
    if chain.len() == d + 1 {
        let vertices = chain.iter().cloned().map(LatticePoint::new).collect();
        cells.push(Simplex::new(vertices)?);
        return Ok(());
    }
    for c in 1..=d {
        if used[c] {
            continue;
        }
        let mut v = chain.last().expect("chain starts at the base point").clone();
        v[c - 1] = v[c - 1].checked_add(1).ok_or(Error::Overflow)?;
        if h.contains(&v, false)? {
            used[c] = true;
            chain.push(v);
            extend_chain(h, chain, used, cells)?;
            chain.pop();
            used[c] = false;
        }
    }
    Ok(())
}

/// The type-A quadratic form on a lattice point.
fn quadratic_height(x: &[i64]) -> i128 {
    let mut a = 0i128;
    for (n, &xi) in x.iter().enumerate() {
        let xi = xi as i128;
        a += xi * xi;
        for &xj in &x[n + 1..] {
            let diff = xi - xj as i128;
            a += diff * diff;
        }
    }
    a
}

fn sign(v: i128) -> i32 {
    match v {
        0 => 0,
        v if v > 0 => 1,
        _ => -1,
    }
}

pub fn boundary_compatible_triangulation(p: &AlcovedPolytope) -> Result<Triangulation> {
    boundary_compatible_triangulation_budgeted(p, DEFAULT_CANDIDATE_BUDGET)
}

/// Lower-hull triangulation under the lexicographic heights described in
/// the module docs.
///
/// Requires interior lattice points and every irredundant facet at
/// lattice distance 1 from them. The result is checked loudly: every
/// cell must be unimodular and the cell count must match the alcove
/// triangulation (both triangulations are unimodular, so the counts are
/// the normalized volume).
pub fn boundary_compatible_triangulation_budgeted(
    p: &AlcovedPolytope,
    budget: u64,
) -> Result<Triangulation> {
    let d = p.dim();
    let points = enumerate::lattice_points(p.hrep())?;
    let interior: Vec<&LatticePoint> =
        points.points().iter().enumerate().filter(|(i, _)| points.is_interior(*i)).map(|(_, q)| q).collect();
    if interior.is_empty() {
        return Err(Error::NoInteriorPoints);
    }
    for c in p.hrep().facet_constraints()? {
        let dist = interior
            .iter()
            .map(|q| c.bound as i128 - c.lhs(q.coords()))
            .min()
            .expect("interior is nonempty");
        if dist != 1 {
            return Err(Error::HypothesisViolated {
                facet: (c.i, c.j, c.bound),
                distance: i64::try_from(dist).map_err(|_| Error::Overflow)?,
            });
        }
    }

    let n = points.len();
    let candidates = binom_saturating(n as u64, d as u64 + 1);
    if candidates > budget {
        return Err(Error::CandidateBudgetExceeded { candidates, budget });
    }

    let primary: Vec<i128> =
        (0..n).map(|i| if points.is_interior(i) { 0 } else { 1 }).collect();
    let secondary: Vec<i128> = points.points().iter().map(|q| quadratic_height(q.coords())).collect();

    let mut cells = Vec::new();
    let mut idx: Vec<usize> = (0..=d).collect();
    loop {
        if let Some(cell) = lower_hull_cell(&points, &primary, &secondary, &idx)? {
            cells.push(cell);
        }
        if !advance_combination(&mut idx, n) {
            break;
        }
    }

    for cell in &cells {
        assert!(
            is_unimodular(cell).expect("cells are full-dimensional"),
            "non-unimodular lower hull cell in {p}"
        );
    }
    let alcoves = alcove_triangulation(p)?;
    assert_eq!(
        cells.len(),
        alcoves.cells().len(),
        "lower hull cell count differs from the normalized volume for {p}"
    );
    Ok(Triangulation::new(d, cells))
}

/// Decides whether the points at `idx` span a cell of the lex lower
/// hull: they must be affinely independent and every other point must
/// lift strictly above their affine span.
fn lower_hull_cell(
    points: &enumerate::PointSet,
    primary: &[i128],
    secondary: &[i128],
    idx: &[usize],
) -> Result<Option<Simplex>> {
    let d = points.dim();
    let orient_rows: Vec<Vec<i128>> = idx
        .iter()
        .map(|&i| {
            let mut row: Vec<i128> =
                points.points()[i].coords().iter().map(|&c| c as i128).collect();
            row.push(1);
            row
        })
        .collect();
    let orient = determinant(&orient_rows)?;
    if orient == 0 {
        return Ok(None);
    }
    let mut lift_rows: Vec<Vec<i128>> = Vec::with_capacity(d + 2);
    for q in 0..points.len() {
        if idx.contains(&q) {
            continue;
        }
        // Residual sign of q against the lifted span is -sign(LIFT * ORIENT).
        let mut above = None;
        for heights in [primary, secondary] {
            lift_rows.clear();
            for (&i, base) in idx.iter().zip(&orient_rows) {
                let mut row = base.clone();
                row.insert(d, heights[i]);
                lift_rows.push(row);
            }
            let mut row: Vec<i128> = points.points()[q].coords().iter().map(|&c| c as i128).collect();
            row.push(heights[q]);
            row.push(1);
            lift_rows.push(row);
            let lift = determinant(&lift_rows)?;
            match sign(lift) * sign(orient) {
                -1 => {
                    above = Some(true);
                    break;
                }
                1 => {
                    above = Some(false);
                    break;
                }
                _ => {}
            }
        }
        // An exact lex tie cannot be strictly above either.
        if !above.unwrap_or(false) {
            return Ok(None);
        }
    }
    let vertices = idx.iter().map(|&i| points.points()[i].clone()).collect();
    Ok(Some(Simplex::new(vertices)?))
}

/// Advances `idx` to the next k-combination of `0..n`; false when done.
fn advance_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binom_saturating(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for s in 1..=k {
        acc = acc * (n - k + s) as u128 / s as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// A boundary face of a triangulation together with the facet it lies
/// in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryFace {
    pub simplex: Simplex,
    pub facet: Constraint,
}

/// Coverage accounting for one facet: `covered_volume` sums the
/// normalized volumes of the boundary faces lying in it, measured in the
/// facet's own lattice; `facet_volume` is the facet's total normalized
/// volume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetCoverage {
    pub facet: Constraint,
    pub facet_volume: u64,
    pub covered_volume: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComplex {
    pub faces: Vec<BoundaryFace>,
    pub per_facet: Vec<FacetCoverage>,
    /// True when every facet is exactly covered by volume.
    pub covers_boundary: bool,
}

/// Collects the codimension-one faces of the cells whose vertices are
/// all tight on a single irredundant facet, and checks per facet that
/// their volumes add up to the facet's normalized volume. Cells of a
/// triangulation never overlap, so exact volume accounting means the
/// faces tile the boundary.
pub fn induced_boundary_complex(
    p: &AlcovedPolytope,
    t: &Triangulation,
) -> Result<BoundaryComplex> {
    let d = p.dim();
    if d < 2 {
        return Err(Error::InvalidParameter { what: "boundary complexes need dimension >= 2" });
    }
    let facets = p.hrep().facet_constraints()?;
    let mut assigned: BTreeMap<Simplex, usize> = BTreeMap::new();
    for cell in t.cells() {
        for skip in 0..cell.vertices().len() {
            let face: Vec<LatticePoint> = cell
                .vertices()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| v.clone())
                .collect();
            let tight = facets.iter().position(|c| {
                face.iter().all(|v| c.lhs(v.coords()) == c.bound as i128)
            });
            // A (d-1)-simplex spans one hyperplane, so the tight facet is
            // unique when it exists.
            if let Some(f) = tight {
                assigned.entry(Simplex::new(face)?).or_insert(f);
            }
        }
    }

    let mut per_facet = Vec::with_capacity(facets.len());
    let mut covered = vec![0u64; facets.len()];
    let mut faces = Vec::with_capacity(assigned.len());
    for (simplex, f) in assigned {
        covered[f] += face_volume(p, &facets[f], &simplex)?;
        faces.push(BoundaryFace { simplex, facet: facets[f] });
    }
    let mut covers_boundary = true;
    for (f, c) in facets.iter().enumerate() {
        let facet_volume = alcove_triangulation(p.facet(c)?.polytope())?.cells().len() as u64;
        if covered[f] != facet_volume {
            covers_boundary = false;
        }
        per_facet.push(FacetCoverage { facet: *c, facet_volume, covered_volume: covered[f] });
    }
    Ok(BoundaryComplex { faces, per_facet, covers_boundary })
}

/// Normalized volume of a boundary face inside its facet, computed in
/// the facet's own coordinates.
fn face_volume(p: &AlcovedPolytope, c: &Constraint, face: &Simplex) -> Result<u64> {
    let restricted = restrict_face(p, c, face)?;
    let det = edge_determinant(&restricted)?;
    debug_assert_ne!(det, 0, "boundary faces are full-dimensional in their facet");
    Ok(det.unsigned_abs() as u64)
}

/// Rewrites a face lying in the facet of `c` in that facet's own
/// coordinates.
pub fn restrict_face(p: &AlcovedPolytope, c: &Constraint, face: &Simplex) -> Result<Simplex> {
    let facet = p.facet(c)?;
    let vertices: Vec<LatticePoint> =
        face.vertices().iter().map(|v| LatticePoint::new(facet.project(v.coords()))).collect();
    Simplex::new(vertices)
}
