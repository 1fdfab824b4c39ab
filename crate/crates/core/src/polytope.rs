//! Validated alcoved polytopes, named families, and the seeded generator.
//!
//! [`AlcovedPolytope::validate`] is the only way to build the type, so
//! every value is bounded, feasible and full-dimensional. The families:
//!
//! - [`AlcovedPolytope::minimal_reflexive`]: all pair constraints with
//!   bound 1; the smallest alcoved polytope with the origin interior,
//!   equal to the convex hull of `[-1,0]^d` and `[0,1]^d`
//! - [`AlcovedPolytope::hypersimplex`]: the slice of the unit cube at
//!   coordinate sum `k`, written in the partial-sum coordinates
//!   `z_j = x_1 + ... + x_j` that make it alcoved, with `z_d = k`
//!   eliminated
//! - [`AlcovedPolytope::order_polytope`]: `0 <= x <= 1` plus `x_a <= x_b`
//!   per relation
//! - [`AlcovedPolytope::sharp_distance_example`]: the `(d+1)`-dilated
//!   chain simplex with the corner cut at `x_1 <= d`; its single facet at
//!   lattice distance `d - 1` from the unique interior point is the
//!   extremal case for alcoved polytopes
//! - [`AlcovedPolytope::random`]: seeded SplitMix64 draws; pair bounds in
//!   lexicographic `(i, j)` order, then upper box bounds, then lower box
//!   bounds; always contains the unit cube

use alloc::vec::Vec;
use core::fmt;

use crate::hrep::{Constraint, HRep};
use crate::rng::SplitMix64;
use crate::{Error, Result};

/// A bounded, feasible, full-dimensional difference-constraint system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlcovedPolytope {
    hrep: HRep,
}

impl AlcovedPolytope {
    /// Checks boundedness, feasibility and full-dimensionality.
    pub fn validate(hrep: HRep) -> Result<Self> {
        if !hrep.is_full_dimensional()? {
            return Err(Error::NotFullDimensional);
        }
        Ok(AlcovedPolytope { hrep })
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn dim(&self) -> usize {
        self.hrep.dim()
    }

    /// The dilate `t * P` for `t >= 1` (0 would collapse to a point).
    pub fn dilate(&self, t: u64) -> Result<AlcovedPolytope> {
        if t == 0 {
            return Err(Error::InvalidParameter { what: "dilation factor must be positive" });
        }
        // Scaling preserves boundedness and full dimension.
        Ok(AlcovedPolytope { hrep: self.hrep.dilate(t)? })
    }

    /// All `d(d+1)` pair constraints with bound 1. Contains exactly the
    /// 0/±1 points without mixed signs, `2^(d+1) - 1` of them, the origin
    /// as its only interior lattice point.
    pub fn minimal_reflexive(dim: usize) -> Result<Self> {
        let mut cs = Vec::with_capacity(dim * (dim + 1));
        for i in 0..=dim {
            for j in 0..=dim {
                if i != j {
                    cs.push(Constraint::new(i, j, 1));
                }
            }
        }
        Self::validate(HRep::new(dim, cs)?)
    }

    /// The hypersimplex `Delta(d, k)`: 0/1 vectors of length `d` with
    /// coordinate sum `k`, convex-hulled, in partial-sum coordinates.
    /// Lives in ambient dimension `d - 1`; requires `d >= 2` and
    /// `1 <= k <= d - 1`.
    pub fn hypersimplex(d: usize, k: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter { what: "hypersimplex needs d >= 2" });
        }
        if k == 0 || k >= d {
            return Err(Error::InvalidParameter { what: "hypersimplex needs 1 <= k <= d - 1" });
        }
        let dim = d - 1;
        let k = k as i64;
        let mut cs = Vec::new();
        // 0 <= z_i - z_{i-1} <= 1 with z_0 = 0 and z_d = k substituted.
        cs.push(Constraint::new(1, 0, 1));
        cs.push(Constraint::new(0, 1, 0));
        for i in 2..=dim {
            cs.push(Constraint::new(i, i - 1, 1));
            cs.push(Constraint::new(i - 1, i, 0));
        }
        cs.push(Constraint::new(dim, 0, k));
        cs.push(Constraint::new(0, dim, 1 - k));
        Self::validate(HRep::new(dim, cs)?)
    }

    /// The order polytope of the partial order generated by `relations`
    /// on `n` elements: the unit cube cut by `x_a <= x_b` per relation
    /// `(a, b)`. Reflexive pairs are ignored; a directed cycle between
    /// distinct elements is rejected.
    pub fn order_polytope(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter { what: "order polytope needs n >= 1" });
        }
        for &(a, b) in relations {
            if a == 0 || a > n {
                return Err(Error::IndexOutOfRange { index: a, dim: n });
            }
            if b == 0 || b > n {
                return Err(Error::IndexOutOfRange { index: b, dim: n });
            }
        }
        if has_directed_cycle(n, relations) {
            return Err(Error::CyclicRelations);
        }
        let mut cs = Vec::new();
        for i in 1..=n {
            cs.push(Constraint::new(i, 0, 1));
            cs.push(Constraint::new(0, i, 0));
        }
        for &(a, b) in relations {
            if a != b {
                cs.push(Constraint::new(a, b, 0));
            }
        }
        Self::validate(HRep::new(n, cs)?)
    }

    /// `0 <= x_1 <= d`, `x_i <= x_{i+1}`, `x_d <= d + 1`: the dilated
    /// chain simplex truncated at `x_1 <= d`. Its unique interior lattice
    /// point is `(1, 2, ..., d)` and the truncating facet sits at lattice
    /// distance `d - 1` from it, the largest value any facet of an
    /// alcoved `d`-polytope can attain. Requires `d >= 2`.
    pub fn sharp_distance_example(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter { what: "truncated chain simplex needs d >= 2" });
        }
        let mut cs = Vec::new();
        cs.push(Constraint::new(0, 1, 0));
        cs.push(Constraint::new(1, 0, d as i64));
        for i in 1..d {
            cs.push(Constraint::new(i, i + 1, 0));
        }
        cs.push(Constraint::new(d, 0, d as i64 + 1));
        Self::validate(HRep::new(d, cs)?)
    }

    /// Seeded random alcoved polytope.
    ///
    /// Draws with SplitMix64 seeded by `seed`, in this fixed order: one
    /// bound per ordered pair `(i, j)` lexicographically (the constraint
    /// `x_i - x_j <= bound`), then upper box bounds `x_i <= c` for
    /// `i = 1..=dim`, then lower box bounds `-x_i <= c`.
    ///
    /// Ranges: pair bounds `1..=5`, upper `1..=3`, lower `0..=2`; with
    /// `small`, `1..=3`, `1..=2`, `0..=1`. Either way the result contains
    /// `[0,1]^dim` (so it is valid by construction) and is contained in
    /// `[-2,3]^dim`, or `[-1,3]^dim` when `small`.
    pub fn random(dim: usize, seed: u64, small: bool) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter { what: "dimension must be at least 1" });
        }
        let (pair_hi, upper_hi, lower_hi) = if small { (3, 2, 1) } else { (5, 3, 2) };
        let mut g = SplitMix64::new(seed);
        let mut cs = Vec::with_capacity(dim * (dim + 1));
        for i in 1..=dim {
            for j in 1..=dim {
                if i != j {
                    cs.push(Constraint::new(i, j, g.range_inclusive(1, pair_hi)));
                }
            }
        }
        for i in 1..=dim {
            cs.push(Constraint::new(i, 0, g.range_inclusive(1, upper_hi)));
        }
        for i in 1..=dim {
            cs.push(Constraint::new(0, i, g.range_inclusive(0, lower_hi)));
        }
        Self::validate(HRep::new(dim, cs)?)
    }

    /// The facet cut out by `c` as a `(d-1)`-dimensional alcoved polytope,
    /// obtained by substituting the equality of `c` and dropping one
    /// coordinate. Requires `d >= 2` and `c` facet-defining.
    pub fn facet(&self, c: &Constraint) -> Result<FacetPolytope> {
        if self.dim() < 2 {
            return Err(Error::InvalidParameter { what: "facets need dimension >= 2" });
        }
        if !self.hrep.is_facet(c)? {
            return Err(Error::NotAFacet);
        }
        // On the facet, x_drop = x_keep + offset.
        let (drop, keep, offset) = if c.i >= 1 {
            (c.i, c.j, c.bound)
        } else {
            (c.j, 0, c.bound.checked_neg().ok_or(Error::Overflow)?)
        };
        let renumber = |ix: usize| if ix == 0 || ix < drop { ix } else { ix - 1 };
        let mut cs = Vec::new();
        for other in self.hrep.constraints() {
            if (other.i, other.j) == (c.i, c.j) {
                continue;
            }
            let (a, b, m) = (other.i, other.j, other.bound);
            let mapped = if a == drop {
                // (x_keep + offset) - x_b <= m
                let m = m.checked_sub(offset).ok_or(Error::Overflow)?;
                if b == keep {
                    debug_assert!(m >= 0, "facet hyperplane misses the polytope");
                    continue;
                }
                (keep, b, m)
            } else if b == drop {
                // x_a - (x_keep + offset) <= m
                let m = m.checked_add(offset).ok_or(Error::Overflow)?;
                if a == keep {
                    debug_assert!(m >= 0, "facet hyperplane misses the polytope");
                    continue;
                }
                (a, keep, m)
            } else {
                (a, b, m)
            };
            cs.push(Constraint::new(renumber(mapped.0), renumber(mapped.1), mapped.2));
        }
        let polytope = Self::validate(HRep::new(self.dim() - 1, cs)?)?;
        Ok(FacetPolytope { polytope, drop, keep_new: renumber(keep), offset })
    }
}

impl fmt::Display for AlcovedPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{ ")?;
        for (n, c) in self.hrep.constraints().iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, " }}")
    }
}

/// A facet in its own `(d-1)`-dimensional coordinates together with the
/// affine embedding back into the ambient space.
#[derive(Debug, Clone)]
pub struct FacetPolytope {
    polytope: AlcovedPolytope,
    /// Ambient coordinate eliminated by the facet equality.
    drop: usize,
    /// Facet-coordinate index the dropped coordinate follows (0 = none).
    keep_new: usize,
    offset: i64,
}

impl FacetPolytope {
    pub fn polytope(&self) -> &AlcovedPolytope {
        &self.polytope
    }

    /// Maps a facet point back onto the facet hyperplane in ambient
    /// coordinates.
    pub fn embed(&self, p: &[i64]) -> Vec<i64> {
        debug_assert_eq!(p.len(), self.polytope.dim());
        let dropped = if self.keep_new == 0 { self.offset } else { p[self.keep_new - 1] + self.offset };
        let mut out = Vec::with_capacity(p.len() + 1);
        out.extend_from_slice(&p[..self.drop - 1]);
        out.push(dropped);
        out.extend_from_slice(&p[self.drop - 1..]);
        out
    }

    /// Inverse of [`embed`](Self::embed) for ambient points on the facet
    /// hyperplane: forgets the eliminated coordinate.
    pub fn project(&self, ambient: &[i64]) -> Vec<i64> {
        debug_assert_eq!(ambient.len(), self.polytope.dim() + 1);
        let mut out = Vec::with_capacity(ambient.len() - 1);
        out.extend_from_slice(&ambient[..self.drop - 1]);
        out.extend_from_slice(&ambient[self.drop..]);
        debug_assert_eq!(self.embed(&out), ambient);
        out
    }
}

fn has_directed_cycle(n: usize, relations: &[(usize, usize)]) -> bool {
    let mut adj = alloc::vec![Vec::new(); n + 1];
    for &(a, b) in relations {
        if a != b {
            adj[a].push(b);
        }
    }
    // 0 unvisited, 1 on stack, 2 done.
    let mut state = alloc::vec![0u8; n + 1];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 1..=n {
        if state[start] != 0 {
            continue;
        }
        state[start] = 1;
        stack.push((start, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate;

    #[test]
    fn minimal_reflexive_small_dimensions() {
        for dim in 1..=4 {
            let p = AlcovedPolytope::minimal_reflexive(dim).unwrap();
            assert_eq!(p.hrep().constraints().len(), dim * (dim + 1));
            let ps = enumerate::lattice_points(p.hrep()).unwrap();
            assert_eq!(ps.len() as u64, (1u64 << (dim + 1)) - 1, "dim {dim}");
            let interior = enumerate::interior_lattice_points(p.hrep()).unwrap();
            assert_eq!(interior.len(), 1);
            assert!(interior[0].coords().iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn minimal_reflexive_is_hull_of_two_cubes() {
        // Lattice points are exactly the 0/±1 vectors without mixed signs.
        let p = AlcovedPolytope::minimal_reflexive(3).unwrap();
        let ps = enumerate::lattice_points(p.hrep()).unwrap();
        for pt in ps.points() {
            let has_pos = pt.coords().iter().any(|&c| c > 0);
            let has_neg = pt.coords().iter().any(|&c| c < 0);
            assert!(!(has_pos && has_neg), "{pt}");
        }
    }

    #[test]
    fn hypersimplex_point_counts() {
        // Delta(d, k) has C(d, k) lattice points, all vertices.
        let binom = |d: u64, k: u64| -> u64 {
            (1..=k).fold(1, |acc, i| acc * (d - k + i) / i)
        };
        for (d, k) in [(2, 1), (3, 1), (3, 2), (4, 2), (5, 2)] {
            let p = AlcovedPolytope::hypersimplex(d, k).unwrap();
            assert_eq!(p.dim(), d - 1);
            let ps = enumerate::lattice_points(p.hrep()).unwrap();
            assert_eq!(ps.len() as u64, binom(d as u64, k as u64), "({d},{k})");
        }
    }

    #[test]
    fn hypersimplex_matches_partial_sum_image() {
        // Oracle: map each 0/1 vector of sum k through z_j = sum of the
        // first j coordinates and drop z_d.
        let (d, k) = (4usize, 2usize);
        let p = AlcovedPolytope::hypersimplex(d, k).unwrap();
        let mut expected = Vec::new();
        for mask in 0u32..(1 << d) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut z = Vec::new();
            let mut acc = 0i64;
            for bit in 0..d - 1 {
                acc += ((mask >> bit) & 1) as i64;
                z.push(acc);
            }
            expected.push(z);
        }
        expected.sort();
        expected.dedup();
        let got: Vec<_> = enumerate::lattice_points(p.hrep())
            .unwrap()
            .points()
            .iter()
            .map(|p| p.coords().to_vec())
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn hypersimplex_rejects_bad_parameters() {
        assert!(AlcovedPolytope::hypersimplex(1, 1).is_err());
        assert!(AlcovedPolytope::hypersimplex(3, 0).is_err());
        assert!(AlcovedPolytope::hypersimplex(3, 3).is_err());
    }

    #[test]
    fn order_polytope_families() {
        // Antichain: the unit cube.
        let cube = AlcovedPolytope::order_polytope(2, &[]).unwrap();
        assert_eq!(enumerate::count_lattice_points(cube.hrep()), Ok(4));
        // Chain: the simplex with n + 1 points.
        let chain = AlcovedPolytope::order_polytope(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(enumerate::count_lattice_points(chain.hrep()), Ok(4));
        // Reflexive pairs are no-ops.
        assert!(AlcovedPolytope::order_polytope(2, &[(1, 1)]).is_ok());
    }

    #[test]
    fn order_polytope_rejects_cycles_and_bad_indices() {
        assert_eq!(
            AlcovedPolytope::order_polytope(3, &[(1, 2), (2, 3), (3, 1)]),
            Err(Error::CyclicRelations)
        );
        assert_eq!(
            AlcovedPolytope::order_polytope(2, &[(1, 3)]),
            Err(Error::IndexOutOfRange { index: 3, dim: 2 })
        );
    }

    #[test]
    fn sharp_distance_example_interior() {
        for d in 2..=4 {
            let p = AlcovedPolytope::sharp_distance_example(d).unwrap();
            let interior = enumerate::interior_lattice_points(p.hrep()).unwrap();
            let expected: Vec<i64> = (1..=d as i64).collect();
            assert_eq!(interior.len(), 1, "d = {d}");
            assert_eq!(interior[0].coords(), &expected[..]);
        }
    }

    #[test]
    fn random_is_deterministic_and_contains_unit_cube() {
        let a = AlcovedPolytope::random(3, 42, false).unwrap();
        let b = AlcovedPolytope::random(3, 42, false).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, AlcovedPolytope::random(3, 43, false).unwrap());
        for mask in 0u32..8 {
            let corner: Vec<i64> = (0..3).map(|b| ((mask >> b) & 1) as i64).collect();
            assert_eq!(a.hrep().contains(&corner, false), Ok(true));
        }
    }

    #[test]
    fn random_respects_range_boxes() {
        for seed in 0..20 {
            let big = AlcovedPolytope::random(3, seed, false).unwrap();
            for (lo, hi) in big.hrep().tight_bounds().unwrap() {
                assert!((-2..=3).contains(&lo) && (-2..=3).contains(&hi));
            }
            let small = AlcovedPolytope::random(3, seed, true).unwrap();
            for (lo, hi) in small.hrep().tight_bounds().unwrap() {
                assert!((-1..=3).contains(&lo) && (-1..=3).contains(&hi));
            }
        }
    }

    #[test]
    fn facet_polytope_embeds_back_onto_the_hyperplane() {
        let p = AlcovedPolytope::minimal_reflexive(3).unwrap();
        for c in p.hrep().constraints() {
            let facet = p.facet(c).unwrap();
            assert_eq!(facet.polytope().dim(), 2);
            let pts = enumerate::lattice_points(facet.polytope().hrep()).unwrap();
            assert!(!pts.is_empty());
            for q in pts.points() {
                let amb = facet.embed(q.coords());
                assert_eq!(p.hrep().contains(&amb, false), Ok(true));
                assert_eq!(Constraint::new(c.i, c.j, 0).lhs(&amb), c.bound as i128);
            }
        }
    }

    #[test]
    fn facet_points_match_tight_ambient_points() {
        // The embedded facet lattice points are exactly the ambient
        // lattice points where the constraint is tight.
        let p = AlcovedPolytope::random(3, 7, true).unwrap();
        for c in p.hrep().facet_constraints().unwrap() {
            let facet = p.facet(&c).unwrap();
            let mut embedded: Vec<Vec<i64>> = enumerate::lattice_points(facet.polytope().hrep())
                .unwrap()
                .points()
                .iter()
                .map(|q| facet.embed(q.coords()))
                .collect();
            embedded.sort();
            let mut tight: Vec<Vec<i64>> = enumerate::lattice_points(p.hrep())
                .unwrap()
                .points()
                .iter()
                .filter(|q| Constraint::new(c.i, c.j, 0).lhs(q.coords()) == c.bound as i128)
                .map(|q| q.coords().to_vec())
                .collect();
            tight.sort();
            assert_eq!(embedded, tight, "{c}");
        }
    }

    #[test]
    fn facet_of_redundant_constraint_is_rejected() {
        let p = AlcovedPolytope::sharp_distance_example(3).unwrap();
        // x_2 <= 4 is implied by x_2 <= x_3 <= 4; recorded here manually.
        let mut cs: Vec<Constraint> = p.hrep().constraints().to_vec();
        cs.push(Constraint::new(2, 0, 4));
        let q = AlcovedPolytope::validate(HRep::new(3, cs).unwrap()).unwrap();
        assert_eq!(q.facet(&Constraint::new(2, 0, 4)).unwrap_err(), Error::NotAFacet);
    }
}
