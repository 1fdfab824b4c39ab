//! Difference-constraint systems: H-representations of alcoved polytopes.
//!
//! Variables are `x_1, ..., x_d` plus the fixed `x_0 == 0`. Every
//! constraint reads `x_i - x_j <= k`, so the system is a weighted digraph
//! on nodes `0..=d` (one edge `j -> i` of weight `k` per constraint) and
//! all structural questions reduce to shortest paths:
//!
//! - the system is infeasible iff the graph has a negative cycle
//! - `max x_i = dist(0 -> i)` and `min x_i = -dist(i -> 0)`; a missing
//!   path means the coordinate is unbounded
//! - the open system `x_i - x_j < k` is solvable (the polytope is
//!   full-dimensional) iff no cycle has total weight <= 0, decided by the
//!   same relaxation over symbolic weights `(k, -1)` compared
//!   lexicographically
//! - a constraint is facet-defining iff dropping it raises the achievable
//!   maximum of its left-hand side
//!
//! Shortest-path arithmetic runs in `i128` so intermediate sums cannot
//! wrap; results that do not fit back into `i64` are reported as
//! [`Error::Overflow`] rather than truncated.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::{BigInt, Error, Rational, Result};

/// One half-space `x_i - x_j <= bound` with `x_0 == 0`.
///
/// `j == 0` encodes the plain upper bound `x_i <= bound`; `i == 0` encodes
/// the lower bound `-x_j <= bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub i: usize,
    pub j: usize,
    pub bound: i64,
}

impl Constraint {
    pub fn new(i: usize, j: usize, bound: i64) -> Self {
        Constraint { i, j, bound }
    }

    /// Left-hand side `x_i - x_j` at `p` (coordinates of `x_1..x_d`).
    pub fn lhs(&self, p: &[i64]) -> i128 {
        let val = |ix: usize| if ix == 0 { 0i128 } else { p[ix - 1] as i128 };
        val(self.i) - val(self.j)
    }
}

impl From<(usize, usize, i64)> for Constraint {
    fn from((i, j, bound): (usize, usize, i64)) -> Self {
        Constraint { i, j, bound }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (i, 0) => write!(f, "x_{} <= {}", i, self.bound),
            (0, j) => write!(f, "-x_{} <= {}", j, self.bound),
            (i, j) => write!(f, "x_{} - x_{} <= {}", i, j, self.bound),
        }
    }
}

/// An integer point of the ambient lattice, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for LatticePoint {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Canonical difference-constraint system in ambient dimension `dim`.
///
/// Canonical means: all indices valid and distinct per constraint, at most
/// one constraint per ordered pair `(i, j)` (the binding one, i.e. the
/// minimal bound), sorted by `(i, j)`. Redundant constraints may remain;
/// [`HRep::is_facet`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HRep {
    dim: usize,
    constraints: Vec<Constraint>,
}

/// Per-coordinate inclusive range `lo..=hi` of the feasible set.
pub type CoordBounds = Vec<(i64, i64)>;

impl HRep {
    /// Canonicalizes and validates a constraint list.
    ///
    /// Duplicate `(i, j)` pairs collapse to the smallest bound. Fails on
    /// `dim == 0`, out-of-range indices and `i == j`.
    pub fn new<I>(dim: usize, constraints: I) -> Result<HRep>
    where
        I: IntoIterator,
        I::Item: Into<Constraint>,
    {
        if dim == 0 {
            return Err(Error::InvalidParameter { what: "dimension must be at least 1" });
        }
        let mut binding: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for c in constraints {
            let c: Constraint = c.into();
            if c.i > dim {
                return Err(Error::IndexOutOfRange { index: c.i, dim });
            }
            if c.j > dim {
                return Err(Error::IndexOutOfRange { index: c.j, dim });
            }
            if c.i == c.j {
                return Err(Error::InvalidParameter {
                    what: "constraint indices must be distinct",
                });
            }
            binding
                .entry((c.i, c.j))
                .and_modify(|b| *b = (*b).min(c.bound))
                .or_insert(c.bound);
        }
        let constraints = binding
            .into_iter()
            .map(|((i, j), bound)| Constraint { i, j, bound })
            .collect();
        Ok(HRep { dim, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    fn nodes(&self) -> usize {
        self.dim + 1
    }

    /// Errors with [`Error::Infeasible`] iff the system has no solution.
    ///
    /// Relaxation from an implicit super-source (all distances zero)
    /// reaches negative cycles in every component, not only those visible
    /// from node 0.
    pub fn check_feasible(&self) -> Result<()> {
        let n = self.nodes();
        let mut dist = alloc::vec![0i128; n];
        for _ in 0..n {
            let mut improved = false;
            for c in &self.constraints {
                let cand = dist[c.j] + c.bound as i128;
                if cand < dist[c.i] {
                    dist[c.i] = cand;
                    improved = true;
                }
            }
            if !improved {
                return Ok(());
            }
        }
        Err(Error::Infeasible)
    }

    /// Single-source shortest paths by Bellman-Ford; `None` = unreachable.
    /// `reversed` swaps every edge, giving distances *to* the source.
    fn shortest_from(&self, source: usize, reversed: bool) -> Vec<Option<i128>> {
        let n = self.nodes();
        let mut dist = alloc::vec![None; n];
        dist[source] = Some(0i128);
        for _ in 0..n.saturating_sub(1) {
            let mut improved = false;
            for c in &self.constraints {
                let (from, to) = if reversed { (c.i, c.j) } else { (c.j, c.i) };
                if let Some(df) = dist[from] {
                    let cand = df + c.bound as i128;
                    if dist[to].is_none_or(|dt| cand < dt) {
                        dist[to] = Some(cand);
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        dist
    }

    /// Tight per-coordinate bounds `lo_i..=hi_i` of the feasible set, with
    /// `hi_i = dist(0 -> i)` and `lo_i = -dist(i -> 0)`.
    ///
    /// Both endpoints are attained by integer solutions because the
    /// constraint matrix is totally unimodular. Errors: [`Error::Infeasible`]
    /// on a negative cycle, [`Error::Unbounded`] for the smallest coordinate
    /// missing a path in either direction.
    pub fn tight_bounds(&self) -> Result<CoordBounds> {
        self.check_feasible()?;
        let fwd = self.shortest_from(0, false);
        let rev = self.shortest_from(0, true);
        let mut bounds = Vec::with_capacity(self.dim);
        for i in 1..=self.dim {
            let hi = fwd[i].ok_or(Error::Unbounded { coord: i })?;
            let lo = rev[i].map(|d| -d).ok_or(Error::Unbounded { coord: i })?;
            bounds.push((to_i64(lo)?, to_i64(hi)?));
        }
        Ok(bounds)
    }

    /// Whether the feasible set is full-dimensional, i.e. the open system
    /// `x_i - x_j < bound` has a solution.
    ///
    /// Each bound `k` becomes the symbolic weight `k - eps`, represented as
    /// the pair `(k, -1)` under lexicographic order; the open system is
    /// solvable iff no cycle has symbolic weight below zero, which for
    /// cycles is exactly total integer weight <= 0.
    ///
    /// Requires a bounded, feasible system; errors from
    /// [`HRep::tight_bounds`] propagate.
    pub fn is_full_dimensional(&self) -> Result<bool> {
        self.tight_bounds()?;
        let n = self.nodes();
        let mut dist = alloc::vec![(0i128, 0i64); n];
        for _ in 0..n {
            let mut improved = false;
            for c in &self.constraints {
                let cand = (dist[c.j].0 + c.bound as i128, dist[c.j].1 - 1);
                if cand < dist[c.i] {
                    dist[c.i] = cand;
                    improved = true;
                }
            }
            if !improved {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Membership test for an integer point; `strict` asks for the
    /// topological interior (every constraint strict).
    pub fn contains(&self, p: &[i64], strict: bool) -> Result<bool> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: p.len() });
        }
        Ok(self.constraints.iter().all(|c| {
            let lhs = c.lhs(p);
            if strict { lhs < c.bound as i128 } else { lhs <= c.bound as i128 }
        }))
    }

    /// Membership test for a rational point.
    pub fn contains_rational(&self, p: &[Rational], strict: bool) -> Result<bool> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: p.len() });
        }
        let zero = Rational::from(BigInt::from(0));
        Ok(self.constraints.iter().all(|c| {
            let val = |ix: usize| if ix == 0 { &zero } else { &p[ix - 1] };
            let lhs = val(c.i) - val(c.j);
            let bound = Rational::from(BigInt::from(c.bound));
            if strict { lhs < bound } else { lhs <= bound }
        }))
    }

    /// The dilate `t * P`: every bound multiplied by `t`.
    pub fn dilate(&self, t: u64) -> Result<HRep> {
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let bound = to_i64(c.bound as i128 * t as i128)?;
                Ok(Constraint { bound, ..*c })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HRep { dim: self.dim, constraints })
    }

    /// Largest achievable `x_i - x_j` over the system with the constraint
    /// at `skip` removed; `None` = unbounded. Assumes feasibility.
    fn max_difference_without(&self, i: usize, j: usize, skip: usize) -> Option<i128> {
        // max(x_i - x_j) = shortest path j -> i; drop the one edge the
        // skipped constraint contributes.
        let n = self.nodes();
        let mut dist = alloc::vec![None; n];
        dist[j] = Some(0i128);
        for _ in 0..n.saturating_sub(1) {
            let mut improved = false;
            for (idx, c) in self.constraints.iter().enumerate() {
                if idx == skip {
                    continue;
                }
                if let Some(df) = dist[c.j] {
                    let cand = df + c.bound as i128;
                    if dist[c.i].is_none_or(|dt| cand < dt) {
                        dist[c.i] = Some(cand);
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        dist[i]
    }

    /// Whether `c` is one of this system's constraints and is
    /// facet-defining (irredundant): removing it must allow `x_i - x_j`
    /// to exceed the bound. Requires a feasible system.
    pub fn is_facet(&self, c: &Constraint) -> Result<bool> {
        if c.i > self.dim {
            return Err(Error::IndexOutOfRange { index: c.i, dim: self.dim });
        }
        if c.j > self.dim {
            return Err(Error::IndexOutOfRange { index: c.j, dim: self.dim });
        }
        self.check_feasible()?;
        let Ok(idx) = self.constraints.binary_search_by_key(&(c.i, c.j), |k| (k.i, k.j)) else {
            return Ok(false);
        };
        if self.constraints[idx].bound != c.bound {
            return Ok(false);
        }
        Ok(match self.max_difference_without(c.i, c.j, idx) {
            None => true,
            Some(reach) => reach > c.bound as i128,
        })
    }

    /// The facet-defining (irredundant) subset of the constraints.
    pub fn facet_constraints(&self) -> Result<Vec<Constraint>> {
        self.check_feasible()?;
        let mut facets = Vec::new();
        for (idx, c) in self.constraints.iter().enumerate() {
            let facet = match self.max_difference_without(c.i, c.j, idx) {
                None => true,
                Some(reach) => reach > c.bound as i128,
            };
            if facet {
                facets.push(*c);
            }
        }
        Ok(facets)
    }

    /// All-pairs shortest paths over the constraint graph, used by the
    /// enumerator to tighten coordinate intervals under a fixed prefix.
    pub(crate) fn apsp(&self) -> Result<Apsp> {
        let n = self.nodes();
        let mut dist: Vec<Option<i128>> = alloc::vec![None; n * n];
        for v in 0..n {
            dist[v * n + v] = Some(0);
        }
        for c in &self.constraints {
            let cell = &mut dist[c.j * n + c.i];
            let w = c.bound as i128;
            if cell.is_none_or(|d| w < d) {
                *cell = Some(w);
            }
        }
        for k in 0..n {
            for a in 0..n {
                let Some(dak) = dist[a * n + k] else { continue };
                for b in 0..n {
                    if let Some(dkb) = dist[k * n + b] {
                        let cand = dak + dkb;
                        let cell = &mut dist[a * n + b];
                        if cell.is_none_or(|d| cand < d) {
                            *cell = Some(cand);
                        }
                    }
                }
            }
        }
        for v in 0..n {
            if dist[v * n + v].unwrap() < 0 {
                return Err(Error::Infeasible);
            }
        }
        let entries = dist
            .into_iter()
            .map(|d| d.map(to_i64).transpose())
            .collect::<Result<Vec<_>>>()?;
        Ok(Apsp { n, dist: entries })
    }
}

fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

/// Shortest-path closure of a feasible system; `get(a, b)` bounds
/// `x_b - x_a` from above, `None` meaning unbounded.
pub(crate) struct Apsp {
    n: usize,
    dist: Vec<Option<i64>>,
}

impl Apsp {
    pub(crate) fn get(&self, a: usize, b: usize) -> Option<i64> {
        self.dist[a * self.n + b]
    }
}
