//! Lattice point enumeration and counting for bounded difference systems.
//!
//! Points are generated by depth-first assignment of `x_1, x_2, ...` in
//! ascending coordinate and value order, so output is lexicographically
//! sorted without a sort step. After fixing a prefix, the exact interval
//! for the next coordinate is the original shortest-path bound tightened
//! against every fixed value:
//!
//! ```text
//! lo_q = max(-dist(q -> 0), max over fixed p of (v_p - dist(q -> p)))
//! hi_q = min( dist(0 -> q), min over fixed p of (v_p + dist(p -> q)))
//! ```
//!
//! which equals re-running shortest paths on the residual system with the
//! prefix substituted in. Every integer in the interval extends to a full
//! solution (total unimodularity), so the walk never backtracks off dead
//! branches; counting sums interval lengths one level early instead of
//! visiting single points.

use alloc::vec::Vec;

use crate::hrep::{Apsp, HRep, LatticePoint};
use crate::{Error, Result};

/// Default cap on the running point count.
pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;

/// The lattice points of a bounded feasible system, lexicographically
/// sorted, with a parallel interior flag (all constraints strict).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<LatticePoint>,
    interior: Vec<bool>,
}

impl PointSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn is_interior(&self, idx: usize) -> bool {
        self.interior[idx]
    }

    pub fn interior_points(&self) -> impl Iterator<Item = &LatticePoint> {
        self.points
            .iter()
            .zip(&self.interior)
            .filter_map(|(p, &int)| int.then_some(p))
    }

    pub fn count_interior(&self) -> usize {
        self.interior.iter().filter(|&&b| b).count()
    }

    /// Binary search over the sorted point list.
    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.coords().cmp(p)).is_ok()
    }
}

struct Walker<'a> {
    apsp: &'a Apsp,
    dim: usize,
    // Interval stacks: level p holds bounds valid after fixing x_1..x_p.
    lo: Vec<Vec<i64>>,
    hi: Vec<Vec<i64>>,
    budget: u64,
}

impl<'a> Walker<'a> {
    fn new(h: &HRep, apsp: &'a Apsp, budget: u64) -> Result<Self> {
        let dim = h.dim();
        let mut lo0 = alloc::vec![0i64; dim + 1];
        let mut hi0 = alloc::vec![0i64; dim + 1];
        for q in 1..=dim {
            hi0[q] = apsp.get(0, q).ok_or(Error::Unbounded { coord: q })?;
            lo0[q] = -apsp.get(q, 0).ok_or(Error::Unbounded { coord: q })?;
        }
        let mut lo = alloc::vec![alloc::vec![0i64; dim + 1]; dim];
        let mut hi = alloc::vec![alloc::vec![0i64; dim + 1]; dim];
        lo[0] = lo0;
        hi[0] = hi0;
        Ok(Walker { apsp, dim, lo, hi, budget })
    }

    /// Tightens level `p+1` bounds from level `p` after fixing
    /// `x_{p+1} = v`. Returns false if some interval became empty (cannot
    /// happen on feasible systems; kept as a defensive prune).
    fn descend(&mut self, p: usize, v: i64) -> bool {
        let fixed = p + 1;
        for q in fixed + 1..=self.dim {
            let mut lo = self.lo[p][q] as i128;
            let mut hi = self.hi[p][q] as i128;
            if let Some(d) = self.apsp.get(q, fixed) {
                lo = lo.max(v as i128 - d as i128);
            }
            if let Some(d) = self.apsp.get(fixed, q) {
                hi = hi.min(v as i128 + d as i128);
            }
            if lo > hi {
                return false;
            }
            self.lo[p + 1][q] = lo as i64;
            self.hi[p + 1][q] = hi as i64;
        }
        true
    }

    fn count(&mut self, p: usize, acc: &mut u64) -> Result<()> {
        let coord = p + 1;
        let (lo, hi) = (self.lo[p][coord], self.hi[p][coord]);
        if p == self.dim - 1 {
            let width = (hi as i128 - lo as i128 + 1) as u64;
            *acc = acc.checked_add(width).ok_or(Error::Overflow)?;
            if *acc > self.budget {
                return Err(Error::EnumerationBudgetExceeded { budget: self.budget });
            }
            return Ok(());
        }
        for v in lo..=hi {
            if self.descend(p, v) {
                self.count(p + 1, acc)?;
            }
        }
        Ok(())
    }

    fn collect(&mut self, p: usize, prefix: &mut Vec<i64>, out: &mut Vec<LatticePoint>) -> Result<()> {
        let coord = p + 1;
        let (lo, hi) = (self.lo[p][coord], self.hi[p][coord]);
        for v in lo..=hi {
            if p == self.dim - 1 {
                if out.len() as u64 >= self.budget {
                    return Err(Error::EnumerationBudgetExceeded { budget: self.budget });
                }
                let mut coords = prefix.clone();
                coords.push(v);
                out.push(LatticePoint::new(coords));
            } else if self.descend(p, v) {
                prefix.push(v);
                self.collect(p + 1, prefix, out)?;
                prefix.pop();
            }
        }
        Ok(())
    }
}

/// All lattice points of a bounded feasible system, sorted, with interior
/// flags.
pub fn lattice_points(h: &HRep) -> Result<PointSet> {
    lattice_points_budgeted(h, DEFAULT_POINT_BUDGET)
}

pub fn lattice_points_budgeted(h: &HRep, budget: u64) -> Result<PointSet> {
    let apsp = h.apsp()?;
    let mut walker = Walker::new(h, &apsp, budget)?;
    let mut points = Vec::new();
    walker.collect(0, &mut Vec::new(), &mut points)?;
    let interior = points
        .iter()
        .map(|p| h.contains(p, true))
        .collect::<Result<Vec<_>>>()?;
    Ok(PointSet { dim: h.dim(), points, interior })
}

/// Number of lattice points, without materializing them.
pub fn count_lattice_points(h: &HRep) -> Result<u64> {
    count_budgeted(h, DEFAULT_POINT_BUDGET)
}

pub fn count_budgeted(h: &HRep, budget: u64) -> Result<u64> {
    let apsp = h.apsp()?;
    let mut walker = Walker::new(h, &apsp, budget)?;
    let mut acc = 0;
    walker.count(0, &mut acc)?;
    Ok(acc)
}

/// Number of lattice points of the dilate `t * P`. `count_dilate(h, 0)`
/// is 1 for every nonempty bounded system (the origin).
pub fn count_dilate(h: &HRep, t: u64) -> Result<u64> {
    count_dilate_budgeted(h, t, DEFAULT_POINT_BUDGET)
}

pub fn count_dilate_budgeted(h: &HRep, t: u64, budget: u64) -> Result<u64> {
    count_budgeted(&h.dilate(t)?, budget)
}

/// Strictly interior lattice points: integer strictness lets every bound
/// drop by one, so these are the lattice points of the decremented system.
pub fn interior_lattice_points(h: &HRep) -> Result<Vec<LatticePoint>> {
    interior_lattice_points_budgeted(h, DEFAULT_POINT_BUDGET)
}

pub fn interior_lattice_points_budgeted(h: &HRep, budget: u64) -> Result<Vec<LatticePoint>> {
    match open_interior(h)? {
        None => Ok(Vec::new()),
        Some(strict) => Ok(lattice_points_budgeted(&strict, budget)?.points),
    }
}

/// Number of interior lattice points.
pub fn count_interior_points(h: &HRep) -> Result<u64> {
    count_interior_budgeted(h, DEFAULT_POINT_BUDGET)
}

pub fn count_interior_budgeted(h: &HRep, budget: u64) -> Result<u64> {
    match open_interior(h)? {
        None => Ok(0),
        Some(strict) => count_budgeted(&strict, budget),
    }
}

/// The decremented system whose points are the interior points of `h`,
/// or `None` when the interior holds no lattice point at all.
fn open_interior(h: &HRep) -> Result<Option<HRep>> {
    let decremented = h
        .constraints()
        .iter()
        .map(|c| {
            let bound = c.bound.checked_sub(1).ok_or(Error::Overflow)?;
            Ok((c.i, c.j, bound))
        })
        .collect::<Result<Vec<_>>>()?;
    let strict = HRep::new(h.dim(), decremented.into_iter().map(crate::hrep::Constraint::from))?;
    match strict.check_feasible() {
        Ok(()) => Ok(Some(strict)),
        Err(Error::Infeasible) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hrep(dim: usize, triples: &[(usize, usize, i64)]) -> HRep {
        HRep::new(dim, triples.iter().copied()).unwrap()
    }

    fn unit_pair_system(dim: usize) -> HRep {
        let mut cs = Vec::new();
        for i in 0..=dim {
            for j in 0..=dim {
                if i != j {
                    cs.push((i, j, 1i64));
                }
            }
        }
        hrep(dim, &cs)
    }

    #[test]
    fn interval_points_are_enumerated_in_order() {
        let h = hrep(1, &[(1, 0, 2), (0, 1, -1)]);
        let ps = lattice_points(&h).unwrap();
        let coords: Vec<_> = ps.points().iter().map(|p| p.coords().to_vec()).collect();
        assert_eq!(coords, vec![vec![1], vec![2]]);
        assert_eq!(count_lattice_points(&h), Ok(2));
    }

    #[test]
    fn unit_pair_system_counts() {
        // dim 2: the hexagon with 7 lattice points, only the origin
        // interior.
        let h = unit_pair_system(2);
        let ps = lattice_points(&h).unwrap();
        assert_eq!(ps.len(), 7);
        assert_eq!(ps.count_interior(), 1);
        assert!(ps.contains(&[0, 0]));
        assert!(ps.contains(&[1, 1]));
        assert!(!ps.contains(&[1, -1]));
        let interior = interior_lattice_points(&h).unwrap();
        assert_eq!(interior, vec![LatticePoint::new(vec![0, 0])]);
    }

    #[test]
    fn counting_matches_materializing_without_enumeration_order_bias() {
        for dim in 1..=3 {
            let h = unit_pair_system(dim);
            for t in 0..=3u64 {
                let d = h.dilate(t).unwrap();
                assert_eq!(
                    count_lattice_points(&d).unwrap(),
                    lattice_points(&d).unwrap().len() as u64,
                    "dim {dim} dilate {t}"
                );
            }
        }
    }

    #[test]
    fn dilate_zero_counts_exactly_the_origin() {
        let h = unit_pair_system(3);
        assert_eq!(count_dilate(&h, 0), Ok(1));
    }

    #[test]
    fn interior_of_unit_cube_is_empty() {
        let cube = hrep(2, &[(1, 0, 1), (0, 1, 0), (2, 0, 1), (0, 2, 0)]);
        assert_eq!(count_interior_points(&cube), Ok(0));
        assert_eq!(interior_lattice_points(&cube), Ok(Vec::new()));
        // The 3-fold dilate has the expected 2x2 interior grid.
        let big = cube.dilate(3).unwrap();
        assert_eq!(count_interior_points(&big), Ok(4));
    }

    #[test]
    fn budget_is_enforced() {
        let h = hrep(1, &[(1, 0, 100), (0, 1, 0)]);
        assert_eq!(
            count_budgeted(&h, 50),
            Err(Error::EnumerationBudgetExceeded { budget: 50 })
        );
        assert_eq!(
            lattice_points_budgeted(&h, 50).unwrap_err(),
            Error::EnumerationBudgetExceeded { budget: 50 }
        );
        assert_eq!(count_budgeted(&h, 101), Ok(101));
    }

    #[test]
    fn infeasible_and_unbounded_are_reported() {
        let bad = hrep(2, &[(1, 2, -1), (2, 1, -1)]);
        assert_eq!(lattice_points(&bad).unwrap_err(), Error::Infeasible);
        let open = hrep(1, &[(0, 1, 0)]);
        assert_eq!(lattice_points(&open).unwrap_err(), Error::Unbounded { coord: 1 });
    }
}
