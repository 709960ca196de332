mod common;

use std::collections::BTreeSet;

use common::*;
use hfk::arrangement::{build_arrangement, Arrangement, Domain};
use hfk::complex::SparseComplex;
use hfk::domains::DomainSolver;
use hfk::homology::homology;
use hfk::oval_complex::LongBoundary;
use hfk::paths::PathCounter;
use hfk::pipeline::{short_complex_via_paths, OvalSetup};
use hfk::reduce::{reduce_faithful, ShortSlice};
use hfk::{GridDiagram, F2};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A domain from x to y: corner indices ±1 at the moving points, 0 elsewhere,
/// nonnegative and away from punctures.
fn check_domain(arr: &Arrangement, d: &Domain, x: &[u32], y: &[u32]) {
    assert!(d.values().all(|&k| k > 0));
    assert!(d.keys().all(|&p| arr.punctures[p].is_empty()));
    for p in 0..arr.corners.len() as u32 {
        let want = x.contains(&p) as i64 - y.contains(&p) as i64;
        assert_eq!(arr.corner_index(d, p as usize), want, "point {p}");
    }
}

#[test]
fn unknot_short_rows_are_empty() {
    let s = OvalSetup::new(&unknot()).unwrap();
    let lb = LongBoundary::new(&s.long, &s.long_gens);
    let solver = DomainSolver::new(&build_arrangement(&s.short));
    let mut pc = PathCounter::<i64>::new(&lb, &s.long, &s.short, &s.short_gens, &s.deaths);
    assert_eq!(s.short_gens.len(), 2);
    for x in 0..2 {
        assert!(pc.row(x, Some(&solver)).unwrap().is_empty());
        let (_, pts) = s.short_gens.points_of(&s.short, x);
        assert_eq!(solver.find_domain(&pts, &pts), None);
    }
}

#[test]
fn two_grid_short_generators_have_no_domains() {
    for g in [GridDiagram::new(vec![1, 0], vec![0, 1]).unwrap(), GridDiagram::new(vec![0, 1], vec![1, 0]).unwrap()] {
        let s = OvalSetup::new(&g).unwrap();
        let solver = DomainSolver::new(&build_arrangement(&s.short));
        let (_, a) = s.short_gens.points_of(&s.short, 0);
        let (_, b) = s.short_gens.points_of(&s.short, 1);
        assert_eq!(solver.find_domain(&a, &b), None);
        assert_eq!(solver.find_domain(&b, &a), None);
    }
}

#[test]
fn long_entries_have_domains() {
    // every rectangle and bigon of the long complex is a domain with multiplicities 1
    for g in [unknot(), trefoil_grid()] {
        let s = OvalSetup::new(&g).unwrap();
        let lb = LongBoundary::new(&s.long, &s.long_gens);
        let arr = build_arrangement(&s.long);
        let solver = DomainSolver::new(&arr);
        assert!(solver.is_unique());
        let mut seen = 0;
        for x in 0..s.long_gens.len() {
            let (_, xp) = s.long_gens.points_of(&s.long, x);
            for (y, _) in lb.row(x) {
                let (_, yp) = s.long_gens.points_of(&s.long, y);
                let d = solver.find_domain(&xp, &yp).expect("domain");
                check_domain(&arr, &d, &xp, &yp);
                assert!(d.values().all(|&k| k == 1));
                seen += 1;
            }
        }
        assert!(seen > 0);
    }
}

/// Paths against faithful reduction, entry by entry, and domains of every
/// surviving entry.
fn check_paths(g: &GridDiagram) {
    let s = OvalSetup::new(g).unwrap();
    let lb = LongBoundary::new(&s.long, &s.long_gens);
    let arr = build_arrangement(&s.short);
    let solver = DomainSolver::new(&arr);
    assert!(solver.is_unique());
    for (_, ids) in s.long_gens.slices(&s.long, &BTreeSet::new()) {
        let f: ShortSlice<i64> = reduce_faithful(&lb, &s.long, &s.short, &s.short_gens, &s.deaths, &ids).unwrap();
        if f.ids.is_empty() {
            continue;
        }
        let with: SparseComplex<i64> = short_complex_via_paths(&s, &lb, Some(&solver), &f.ids).unwrap();
        let without: SparseComplex<i64> = short_complex_via_paths(&s, &lb, None, &f.ids).unwrap();
        with.check_square_zero().unwrap();
        with.check_gradings().unwrap();
        for i in 0..f.ids.len() as u32 {
            for j in 0..f.ids.len() as u32 {
                assert_eq!(with.entry(i, j), f.complex.entry(i, j));
                assert_eq!(without.entry(i, j), f.complex.entry(i, j));
            }
            for &(j, _) in with.row(i) {
                let (_, xp) = s.short_gens.points_of(&s.short, f.ids[i as usize]);
                let (_, yp) = s.short_gens.points_of(&s.short, f.ids[j as usize]);
                check_domain(&arr, &solver.find_domain(&xp, &yp).unwrap(), &xp, &yp);
            }
        }
        assert_eq!(homology(&with).unwrap(), homology(&f.complex).unwrap());
        let m2: SparseComplex<F2> = short_complex_via_paths(&s, &lb, Some(&solver), &f.ids).unwrap();
        for i in 0..f.ids.len() as u32 {
            for j in 0..f.ids.len() as u32 {
                assert_eq!(m2.entry(i, j), F2(with.entry(i, j) % 2 != 0));
            }
        }
    }
}

#[test]
fn paths_on_fixtures() {
    check_paths(&unknot());
    check_paths(&trefoil_grid());
    check_paths(&knot("3_1"));
}

fn grid_strategy(max_n: usize) -> impl proptest::strategy::Strategy<Value = GridDiagram> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_grid(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn paths_match_faithful(g in grid_strategy(5)) {
        check_paths(&g);
    }
}
