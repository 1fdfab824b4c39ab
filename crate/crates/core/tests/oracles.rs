//! Cross-checks against reference computations that share no code with
//! the library internals: a plain box scan for everything
//! enumeration-related, affine rank of tight points for facet
//! detection, and quantifier restatements of the report predicates.

use alcove_core::analysis;
use alcove_core::ehrhart;
use alcove_core::enumerate;
use alcove_core::hrep::{Constraint, HRep};
use alcove_core::polytope::AlcovedPolytope;
use alcove_core::triangulation;
use alcove_core::Error;

use proptest::prelude::*;

fn coord(p: &[i64], ix: usize) -> i128 {
    if ix == 0 {
        0
    } else {
        p[ix - 1] as i128
    }
}

fn satisfies(cs: &[Constraint], p: &[i64], strict: bool) -> bool {
    cs.iter().all(|c| {
        let v = coord(p, c.i) - coord(p, c.j);
        if strict {
            v < c.bound as i128
        } else {
            v <= c.bound as i128
        }
    })
}

/// Every lattice point of `[lo, hi]^dim` passing all constraints, in
/// ascending lexicographic order.
fn scan_box(dim: usize, lo: i64, hi: i64, cs: &[Constraint], strict: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut p = vec![lo; dim];
    'outer: loop {
        if satisfies(cs, &p, strict) {
            out.push(p.clone());
        }
        for k in (0..dim).rev() {
            if p[k] < hi {
                p[k] += 1;
                for later in p[k + 1..].iter_mut() {
                    *later = lo;
                }
                continue 'outer;
            }
        }
        break;
    }
    out
}

fn enumerated(h: &HRep) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let ps = enumerate::lattice_points(h).unwrap();
    let all = ps.points().iter().map(|p| p.coords().to_vec()).collect();
    let interior = ps
        .points()
        .iter()
        .enumerate()
        .filter(|(i, _)| ps.is_interior(*i))
        .map(|(_, p)| p.coords().to_vec())
        .collect();
    (all, interior)
}

fn check_against_box(h: &HRep, lo: i64, hi: i64) {
    let (all, interior) = enumerated(h);
    assert_eq!(all, scan_box(h.dim(), lo, hi, h.constraints(), false));
    assert_eq!(interior, scan_box(h.dim(), lo, hi, h.constraints(), true));
    assert_eq!(enumerate::count_lattice_points(h).unwrap(), all.len() as u64);
}

#[test]
fn named_families_match_the_box_scan() {
    for d in 1..=4 {
        check_against_box(AlcovedPolytope::minimal_reflexive(d).unwrap().hrep(), -1, 1);
    }
    for (d, k) in [(3, 1), (4, 2), (5, 3)] {
        check_against_box(AlcovedPolytope::hypersimplex(d, k).unwrap().hrep(), 0, d as i64);
    }
    check_against_box(AlcovedPolytope::order_polytope(3, &[(1, 2)]).unwrap().hrep(), 0, 1);
    for d in 2..=4 {
        check_against_box(
            AlcovedPolytope::sharp_distance_example(d).unwrap().hrep(),
            0,
            d as i64 + 1,
        );
    }
}

#[test]
fn random_instances_match_the_box_scan() {
    for dim in 1..=3 {
        for seed in 0..15 {
            let big = AlcovedPolytope::random(dim, seed, false).unwrap();
            check_against_box(big.hrep(), -2, 3);
            let small = AlcovedPolytope::random(dim, seed, true).unwrap();
            check_against_box(small.hrep(), -1, 3);
        }
    }
}

#[test]
fn dilate_counts_match_the_box_scan() {
    for seed in 0..8 {
        let p = AlcovedPolytope::random(2, seed, false).unwrap();
        for t in 1..=3u64 {
            let d = p.dilate(t).unwrap();
            let pts = scan_box(2, -2 * t as i64, 3 * t as i64, d.hrep().constraints(), false);
            assert_eq!(enumerate::count_dilate(p.hrep(), t).unwrap(), pts.len() as u64);
        }
    }
}

/// Dimension of the affine span, via fraction-free elimination.
fn affine_dim(points: &[Vec<i64>]) -> Option<usize> {
    let first = points.first()?;
    let mut rows: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(&a, &b)| a as i128 - b as i128).collect())
        .collect();
    let cols = first.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in &mut rows[rank + 1..] {
            let (a, b) = (pivot_row[c], row[c]);
            if b == 0 {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = *x * a - p * b;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Some(rank)
}

/// A constraint of a full-dimensional lattice polytope with integer
/// vertices defines a facet exactly when its tight lattice points span
/// an affine hyperplane.
fn facet_oracle(p: &AlcovedPolytope, c: &Constraint, all: &[Vec<i64>]) -> bool {
    let tight: Vec<Vec<i64>> =
        all.iter().filter(|q| coord(q, c.i) - coord(q, c.j) == c.bound as i128).cloned().collect();
    affine_dim(&tight) == Some(p.dim() - 1)
}

#[test]
fn facet_detection_matches_the_affine_rank_oracle() {
    let mut checked_redundant = 0;
    let mut instances: Vec<AlcovedPolytope> = Vec::new();
    for seed in 0..12 {
        instances.push(AlcovedPolytope::random(2, seed, false).unwrap());
        instances.push(AlcovedPolytope::random(3, seed, false).unwrap());
    }
    instances.push(AlcovedPolytope::minimal_reflexive(3).unwrap());
    for d in 2..=4 {
        instances.push(AlcovedPolytope::sharp_distance_example(d).unwrap());
    }
    for p in &instances {
        let (all, _) = enumerated(p.hrep());
        let facets = p.hrep().facet_constraints().unwrap();
        for c in p.hrep().constraints() {
            let expected = facet_oracle(p, c, &all);
            assert_eq!(p.hrep().is_facet(c).unwrap(), expected, "{c} in {p}");
            assert_eq!(facets.contains(c), expected);
            if !expected {
                checked_redundant += 1;
            }
        }
    }
    // The corpus must actually exercise redundant constraints.
    assert!(checked_redundant > 0, "no redundant constraints in the corpus");
}

#[test]
fn hstar_equals_triangulation_h_vector_on_a_small_battery() {
    for dim in 2..=3 {
        for seed in 0..12 {
            let p = AlcovedPolytope::random(dim, seed, true).unwrap();
            let h = ehrhart::hstar(&p).unwrap();
            let t = triangulation::alcove_triangulation(&p).unwrap();
            let hv = t.h_vector();
            assert_eq!(&hv[..=dim], h.entries(), "seed {seed} dim {dim}");
            assert_eq!(hv[dim + 1], alcove_core::BigInt::from(0));
        }
    }
}

fn soup(dim: usize) -> impl Strategy<Value = Vec<Constraint>> {
    prop::collection::vec(
        (0..=dim, 0..=dim, -3i64..=3)
            .prop_filter("indices must differ", |(i, j, _)| i != j)
            .prop_map(|(i, j, b)| Constraint::new(i, j, b)),
        0..12,
    )
}

proptest! {
    #[test]
    fn constraint_soups_agree_with_the_box_scan(dim in 1usize..=3, extra in soup(3)) {
        let mut cs: Vec<Constraint> = extra
            .into_iter()
            .filter(|c| c.i <= dim && c.j <= dim)
            .collect();
        for i in 1..=dim {
            cs.push(Constraint::new(i, 0, 4));
            cs.push(Constraint::new(0, i, 4));
        }
        let h = HRep::new(dim, cs).unwrap();
        let scanned = scan_box(dim, -4, 4, h.constraints(), false);
        match h.check_feasible() {
            Ok(()) => {
                let (all, interior) = enumerated(&h);
                prop_assert!(!scanned.is_empty());
                prop_assert_eq!(&all, &scanned);
                prop_assert_eq!(interior, scan_box(dim, -4, 4, h.constraints(), true));
                // Tight bounds are attained by actual points.
                let bounds = h.tight_bounds().unwrap();
                for (k, &(lo, hi)) in bounds.iter().enumerate() {
                    let seen_lo = scanned.iter().map(|p| p[k]).min().unwrap();
                    let seen_hi = scanned.iter().map(|p| p[k]).max().unwrap();
                    prop_assert_eq!((lo, hi), (seen_lo, seen_hi));
                }
            }
            Err(Error::Infeasible) => prop_assert!(scanned.is_empty()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn canonical_form_ignores_order_and_duplicates(dim in 1usize..=3, extra in soup(3), rot in 0usize..12) {
        let mut cs: Vec<Constraint> = extra
            .into_iter()
            .filter(|c| c.i <= dim && c.j <= dim)
            .collect();
        for i in 1..=dim {
            cs.push(Constraint::new(i, 0, 4));
            cs.push(Constraint::new(0, i, 4));
        }
        let a = HRep::new(dim, cs.clone()).unwrap();
        let shift = rot % cs.len().max(1);
        cs.rotate_left(shift);
        let dup = cs.first().copied();
        cs.extend(dup);
        let b = HRep::new(dim, cs).unwrap();
        prop_assert_eq!(&a, &b);
        // Rebuilding from the canonical constraints is the identity.
        let c = HRep::new(dim, a.constraints().to_vec()).unwrap();
        prop_assert_eq!(&a, &c);
    }

    #[test]
    fn unimodality_matches_the_quantifier_definition(xs in prop::collection::vec(-5i64..=5, 1..10)) {
        let split_ok = (0..xs.len()).any(|p| {
            xs[..=p].windows(2).all(|w| w[0] <= w[1])
                && xs[p..].windows(2).all(|w| w[0] >= w[1])
        });
        prop_assert_eq!(analysis::is_unimodal(&xs).unwrap().unimodal, split_ok);
    }

    #[test]
    fn lattice_points_scale_into_dilates(seed in 0u64..64, t in 1u64..=3) {
        let p = AlcovedPolytope::random(2, seed, true).unwrap();
        let d = p.dilate(t).unwrap();
        let (all, _) = enumerated(p.hrep());
        for q in &all {
            let scaled: Vec<i64> = q.iter().map(|&v| v * t as i64).collect();
            prop_assert_eq!(d.hrep().contains(&scaled, false), Ok(true));
        }
    }
}
