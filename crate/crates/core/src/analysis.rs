//! Unimodality, lattice distances, reflexivity, and the standard h*
//! inequalities.
//!
//! The lattice distance from a facet `x_i - x_j <= k` to a point `p` is
//! `k - (p_i - p_j)`. Two structural facts about alcoved polytopes are
//! checked loudly here:
//!
//! - every irredundant facet of an alcoved `d`-polytope with interior
//!   lattice points lies at distance at most `d - 1` from the nearest
//!   one (for `d >= 2`; a segment has both facets at distance exactly 1),
//! - the h* vector of one whose facets all lie at distance 1 is expected
//!   to be unimodal; [`is_unimodal`] and [`peak_location`] report on
//!   that, the scan layer decides what counts as a violation.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::ehrhart::{binomial, HStarVector};
use crate::enumerate;
use crate::hrep::{Constraint, LatticePoint};
use crate::polytope::AlcovedPolytope;
use crate::{Error, Result};

/// Outcome of a unimodality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodalityReport {
    pub unimodal: bool,
    /// Positions of the maximum, whether or not the sequence is unimodal.
    pub peak_indices: Vec<usize>,
    /// First index that rises again after a strict descent.
    pub first_violation: Option<usize>,
}

/// A sequence is unimodal when it never strictly rises after having
/// strictly fallen. Plateaus are allowed anywhere.
pub fn is_unimodal<T: Ord>(xs: &[T]) -> Result<UnimodalityReport> {
    let max = xs.iter().max().ok_or(Error::EmptyList)?;
    let peak_indices = xs.iter().enumerate().filter(|(_, v)| *v == max).map(|(i, _)| i).collect();
    let mut descended = false;
    let mut first_violation = None;
    for k in 1..xs.len() {
        if xs[k] < xs[k - 1] {
            descended = true;
        } else if xs[k] > xs[k - 1] && descended {
            first_violation = Some(k);
            break;
        }
    }
    Ok(UnimodalityReport { unimodal: first_violation.is_none(), peak_indices, first_violation })
}

/// Lattice distance from the hyperplane of `c` to the nearest interior
/// lattice point of `p`.
pub fn facet_distance(p: &AlcovedPolytope, c: &Constraint) -> Result<i64> {
    let interior = enumerate::interior_lattice_points(p.hrep())?;
    if interior.is_empty() {
        return Err(Error::NoInteriorPoints);
    }
    nearest_distance(c, &interior)
}

fn nearest_distance(c: &Constraint, interior: &[LatticePoint]) -> Result<i64> {
    let mut best: Option<i128> = None;
    for q in interior {
        let d = c.bound as i128 - c.lhs(q.coords());
        if best.is_none_or(|b| d < b) {
            best = Some(d);
        }
    }
    let best = best.expect("nonempty interior");
    i64::try_from(best).map_err(|_| Error::Overflow)
}

/// Distances from every irredundant facet to the interior lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub max_distance: i64,
    /// A facet attaining the maximum.
    pub witness: Constraint,
    pub per_facet: Vec<(Constraint, i64)>,
}

/// Computes all facet distances and checks the alcoved distance bound
/// `max <= dim - 1` (for `dim >= 2`), returning
/// [`Error::TheoremViolation`] when it fails.
pub fn max_facet_distance(p: &AlcovedPolytope) -> Result<DistanceReport> {
    let interior = enumerate::interior_lattice_points(p.hrep())?;
    if interior.is_empty() {
        return Err(Error::NoInteriorPoints);
    }
    let mut per_facet = Vec::new();
    for c in p.hrep().facet_constraints()? {
        per_facet.push((c, nearest_distance(&c, &interior)?));
    }
    let &(witness, max_distance) =
        per_facet.iter().max_by_key(|(_, d)| *d).expect("full-dimensional, so facets exist");
    if p.dim() >= 2 && max_distance > p.dim() as i64 - 1 {
        return Err(Error::TheoremViolation {
            what: format!(
                "facet {witness} at lattice distance {max_distance} > {} in dimension {}",
                p.dim() - 1,
                p.dim()
            ),
        });
    }
    Ok(DistanceReport { max_distance, witness, per_facet })
}

/// Whether every irredundant facet lies at lattice distance exactly 1
/// from the interior lattice points. False when the interior is empty.
/// This is the hypothesis under which unimodality of h* is expected.
pub fn interior_distance_one(p: &AlcovedPolytope) -> Result<bool> {
    let interior = enumerate::interior_lattice_points(p.hrep())?;
    if interior.is_empty() {
        return Ok(false);
    }
    for c in p.hrep().facet_constraints()? {
        if nearest_distance(&c, &interior)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A lattice polytope is reflexive when its unique interior lattice point
/// sits at lattice distance 1 from every facet.
pub fn is_reflexive(p: &AlcovedPolytope) -> Result<bool> {
    let interior = enumerate::interior_lattice_points(p.hrep())?;
    if interior.len() != 1 {
        return Ok(false);
    }
    for c in p.hrep().facet_constraints()? {
        if nearest_distance(&c, &interior)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `k <= k_max` with `kP` reflexive, if any.
pub fn gorenstein_index(p: &AlcovedPolytope, k_max: u64) -> Result<Option<u64>> {
    for k in 1..=k_max {
        if is_reflexive(&p.dilate(k)?)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Palindromicity of the h* vector, the Ehrhart-side characterization of
/// reflexivity up to lattice translation.
pub fn hstar_symmetry(h: &HStarVector) -> bool {
    let e = h.entries();
    (0..e.len() / 2).all(|i| e[i] == e[e.len() - 1 - i])
}

/// Violations of the three standard inequality families for the h*
/// vector of a `d`-polytope, recorded by index `i`:
///
/// - `lower_bound`: `h_i >= h_{d+1-i}` for `1 <= i <= (d+1)/2`,
/// - `tail`: `h_i <= h_{i-1}` for `(d+1)/2 < i <= d`,
/// - `binomial`: `h_i <= C(h_1 + i - 1, i)` for `1 <= i <= d`.
///
/// The first two require interior lattice points to be theorems; the
/// binomial bound holds for every lattice polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HibiStanleyReport {
    pub ok: bool,
    pub lower_bound_violations: Vec<usize>,
    pub tail_violations: Vec<usize>,
    pub binomial_violations: Vec<usize>,
}

pub fn hibi_stanley_check(h: &HStarVector) -> HibiStanleyReport {
    let d = h.dim();
    let half = d.div_ceil(2);
    let mut lower_bound_violations = Vec::new();
    let mut tail_violations = Vec::new();
    let mut binomial_violations = Vec::new();
    for i in 1..=half {
        if h[i] < h[d + 1 - i] {
            lower_bound_violations.push(i);
        }
    }
    for i in half + 1..=d {
        if h[i] > h[i - 1] {
            tail_violations.push(i);
        }
    }
    for i in 1..=d {
        if h[i] > binomial(&(&h[1] + BigInt::from(i as u64) - BigInt::one()), i) {
            binomial_violations.push(i);
        }
    }
    HibiStanleyReport {
        ok: lower_bound_violations.is_empty()
            && tail_violations.is_empty()
            && binomial_violations.is_empty(),
        lower_bound_violations,
        tail_violations,
        binomial_violations,
    }
}

/// Where a unimodal h* vector peaks, relative to the two middle indices
/// `ceil((d-1)/2)` and `ceil((d+1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakLocation {
    pub peak_indices: Vec<usize>,
    pub contains_lower_middle: bool,
    pub contains_upper_middle: bool,
}

/// Requires a unimodal input so that "the peak" is a contiguous block.
pub fn peak_location(h: &HStarVector) -> Result<PeakLocation> {
    let report = is_unimodal(h.entries())?;
    if !report.unimodal {
        return Err(Error::InvalidParameter { what: "peak location needs a unimodal vector" });
    }
    let d = h.dim();
    let lower = (d - 1).div_ceil(2);
    let upper = (d + 1).div_ceil(2);
    Ok(PeakLocation {
        contains_lower_middle: report.peak_indices.contains(&lower),
        contains_upper_middle: report.peak_indices.contains(&upper),
        peak_indices: report.peak_indices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hrep::HRep;

    fn hsv(entries: &[i64]) -> HStarVector {
        HStarVector::new(entries.iter().map(|&v| BigInt::from(v)).collect()).unwrap()
    }

    #[test]
    fn unimodality_cases() {
        let r = is_unimodal(&[1, 4, 1]).unwrap();
        assert!(r.unimodal);
        assert_eq!(r.peak_indices, [1]);
        let r = is_unimodal(&[1, 2, 2, 1]).unwrap();
        assert!(r.unimodal);
        assert_eq!(r.peak_indices, [1, 2]);
        // Plateau after a descent is fine; a rise is not.
        assert!(is_unimodal(&[3, 1, 1]).unwrap().unimodal);
        let r = is_unimodal(&[3, 1, 2]).unwrap();
        assert!(!r.unimodal);
        assert_eq!(r.first_violation, Some(2));
        let r = is_unimodal(&[1, 2, 1, 2, 1]).unwrap();
        assert_eq!(r.first_violation, Some(3));
        assert!(is_unimodal(&[0, 0, 1]).unwrap().unimodal);
        assert!(is_unimodal(&[5]).unwrap().unimodal);
        assert_eq!(is_unimodal::<i64>(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn distances_on_the_truncating_facet() {
        for d in 2..=4usize {
            let p = AlcovedPolytope::sharp_distance_example(d).unwrap();
            let report = max_facet_distance(&p).unwrap();
            assert_eq!(report.max_distance, d as i64 - 1);
            let cut = Constraint::new(1, 0, d as i64);
            assert_eq!(facet_distance(&p, &cut), Ok(d as i64 - 1));
            if d >= 3 {
                // Every other facet sits at distance 1, so the witness is
                // the truncating one.
                assert_eq!(report.witness, cut);
            }
        }
    }

    #[test]
    fn no_interior_means_no_distances() {
        let square = AlcovedPolytope::order_polytope(2, &[]).unwrap();
        assert_eq!(max_facet_distance(&square).unwrap_err(), Error::NoInteriorPoints);
        assert_eq!(interior_distance_one(&square), Ok(false));
        assert_eq!(is_reflexive(&square), Ok(false));
    }

    #[test]
    fn reflexivity_of_small_examples() {
        let q2 = AlcovedPolytope::minimal_reflexive(2).unwrap();
        assert_eq!(is_reflexive(&q2), Ok(true));
        assert_eq!(interior_distance_one(&q2), Ok(true));
        // The doubled unit square is reflexive around (1, 1).
        let square = AlcovedPolytope::order_polytope(2, &[]).unwrap();
        assert_eq!(is_reflexive(&square.dilate(2).unwrap()), Ok(true));
        assert_eq!(gorenstein_index(&square, 5), Ok(Some(2)));
        // Truncated chain simplices have an interior point but a far facet.
        let t3 = AlcovedPolytope::sharp_distance_example(3).unwrap();
        assert_eq!(is_reflexive(&t3), Ok(false));
        assert_eq!(interior_distance_one(&t3), Ok(false));
    }

    #[test]
    fn gorenstein_index_of_chain_simplices() {
        // 0 <= x_1 <= ... <= x_d <= 1 becomes reflexive at dilation d + 1.
        for d in 2..=3usize {
            let rel: Vec<(usize, usize)> = (1..d).map(|i| (i, i + 1)).collect();
            let chain = AlcovedPolytope::order_polytope(d, &rel).unwrap();
            assert_eq!(gorenstein_index(&chain, 10), Ok(Some(d as u64 + 1)));
        }
    }

    #[test]
    fn symmetry_checks() {
        assert!(hstar_symmetry(&hsv(&[1, 4, 1])));
        assert!(hstar_symmetry(&hsv(&[1, 11, 11, 1])));
        assert!(!hstar_symmetry(&hsv(&[1, 2, 3])));
        assert!(hstar_symmetry(&hsv(&[7])));
    }

    #[test]
    fn inequality_families() {
        assert!(hibi_stanley_check(&hsv(&[1, 4, 1])).ok);
        assert!(hibi_stanley_check(&hsv(&[1, 11, 11, 1])).ok);
        // Fails the reflected lower bound at i = 1 and the binomial bound
        // at i = 2.
        let bad = hibi_stanley_check(&hsv(&[1, 0, 2]));
        assert!(!bad.ok);
        assert_eq!(bad.lower_bound_violations, [1]);
        assert_eq!(bad.binomial_violations, [2]);
        // Rises again in the tail.
        let tail = hibi_stanley_check(&hsv(&[1, 3, 1, 3]));
        assert_eq!(tail.tail_violations, [3]);
    }

    #[test]
    fn peak_locations() {
        let p = peak_location(&hsv(&[1, 4, 1])).unwrap();
        assert_eq!(p.peak_indices, [1]);
        assert!(p.contains_lower_middle && !p.contains_upper_middle);
        let p = peak_location(&hsv(&[1, 11, 11, 1])).unwrap();
        assert!(p.contains_lower_middle && p.contains_upper_middle);
        assert_eq!(
            peak_location(&hsv(&[1, 0, 2])),
            Err(Error::InvalidParameter { what: "peak location needs a unimodal vector" })
        );
    }

    #[test]
    fn per_facet_report_is_complete() {
        let p = AlcovedPolytope::sharp_distance_example(2).unwrap();
        let report = max_facet_distance(&p).unwrap();
        assert_eq!(report.max_distance, 1);
        assert_eq!(report.per_facet.len(), p.hrep().facet_constraints().unwrap().len());
        assert!(report.per_facet.iter().all(|&(_, d)| d >= 1));
    }

    #[test]
    fn segment_distances_stay_at_one() {
        // Segments always have both facets at distance 1 from the nearest
        // interior point, whatever their length.
        let seg = HRep::new(1, [Constraint::new(1, 0, 5), Constraint::new(0, 1, 0)]).unwrap();
        let p = AlcovedPolytope::validate(seg).unwrap();
        let report = max_facet_distance(&p).unwrap();
        assert_eq!(report.max_distance, 1);
    }
}
