mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use hfk::grid::{DestabSite, StabSite};
use hfk::{parse_braid, Axis, BraidError, GridDiagram, GridError, LaurentPoly};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Leibniz expansion of det(t^{w(i,j)}), then the same normalization by hand.
fn leibniz_alexander(g: &GridDiagram) -> LaurentPoly {
    let w = g.winding_matrix();
    let n = g.n();
    let mut det = LaurentPoly::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let e: i64 = (0..n).map(|i| w[i][p[i]]).sum();
        det.add_term(if inversions % 2 == 0 { 1 } else { -1 }, e as i32);
    });
    let q = det.div_exact(&LaurentPoly::from_terms([(1, 0), (-1, 1)]).pow(n as u32 - 1)).unwrap();
    let (lo, hi) = (q.min_exp().unwrap(), q.max_exp().unwrap());
    let centred = q.shift(-(lo + hi) / 2);
    if centred.eval_one() < 0 {
        centred.scale(-1)
    } else {
        centred
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn delta(terms: &[(i64, i32)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().copied())
}

#[test]
fn braid_examples() {
    let t = parse_braid(&[1, 1, 1]).unwrap();
    t.validate().unwrap();
    assert_eq!(t.alexander_oracle().unwrap(), delta(&[(1, 1), (-1, 0), (1, -1)]));
    let u = parse_braid(&[1]).unwrap();
    assert_eq!(u.alexander_oracle().unwrap(), LaurentPoly::one());
    assert_eq!(parse_braid(&[]), Err(BraidError::EmptyWord));
    assert_eq!(parse_braid(&[1, 1]), Err(BraidError::MultiComponentClosure(2)));
}

#[test]
fn braid_grids_stay_small() {
    for name in ["3_1", "4_1", "5_2", "8_19", "8_20", "8_21"] {
        let w = fixture(name);
        let strands = w.iter().map(|l| l.unsigned_abs() as usize).max().unwrap() + 1;
        let g = parse_braid(&w).unwrap();
        assert!(g.n() <= strands + w.len(), "{name}: n = {}", g.n());
        assert_eq!(g.alexander_oracle().unwrap(), leibniz_alexander(&g), "{name}");
    }
}

#[test]
fn validation_examples() {
    assert!(GridDiagram::new(vec![1, 0], vec![0, 1]).is_ok());
    assert_eq!(GridDiagram::new(vec![0, 1], vec![0, 1]), Err(GridError::CoincidentDecorations(0)));
    assert_eq!(GridDiagram::new(vec![0, 0, 2], vec![1, 2, 0]), Err(GridError::NotPermutation));
}

#[test]
fn cyclic_examples() {
    let t = trefoil_grid();
    for axis in [Axis::Rows, Axis::Cols] {
        assert_eq!(t.cyclic_move(axis, 0), t);
        assert_eq!(t.cyclic_move(axis, 5), t);
    }
    assert_eq!(t.cyclic_move(Axis::Rows, 2).alexander_oracle(), t.alexander_oracle());
}

#[test]
fn castling_examples() {
    // column intervals [0,1], [2,4], [1,3], ...
    let g = GridDiagram::new(vec![0, 2, 1, 3, 4], vec![1, 4, 3, 2, 0]).unwrap();
    g.validate().unwrap();
    // [0,1] and [2,4]: disjoint
    let h = g.castling_move(Axis::Cols, 0).unwrap();
    h.validate().unwrap();
    assert_eq!(h.alexander_oracle(), g.alexander_oracle());
    // [2,4] and [1,3]: interleaved
    assert_eq!(g.castling_move(Axis::Cols, 1), Err(GridError::IllegalCastling { axis: Axis::Cols, index: 1 }));
    // nested: [1,2] next to [0,4]
    let k = GridDiagram::new(vec![1, 0, 2, 3, 4], vec![2, 4, 0, 1, 3]).unwrap();
    let s = k.castling_move(Axis::Cols, 0).unwrap();
    s.validate().unwrap();
    assert_eq!(s.alexander_oracle(), k.alexander_oracle());
}

#[test]
fn destabilize_examples() {
    assert!(unknot().destabilize().is_empty());
    let t = trefoil_grid();
    let s = t.stabilize(StabSite { axis: Axis::Cols, line: 1, insert: 2, o_low: false });
    assert_eq!(s.n(), 6);
    let back = s.destabilize();
    assert!(back.iter().any(|d| d.n() == 5 && d.alexander_oracle() == t.alexander_oracle()));
    // the trefoil grid has no X/O pair in adjacent lines
    assert!(t.destab_sites().is_empty());
    assert!(t.destabilize().is_empty());
}

#[test]
fn canonical_key_examples() {
    let t = trefoil_grid();
    assert_eq!(t.cyclic_move(Axis::Rows, 3).canonical_key(), t.canonical_key());
    assert_ne!(unknot().canonical_key(), t.canonical_key());
    let keys: BTreeSet<_> = (0..5)
        .flat_map(|a| (0..5).map(move |b| (a, b)))
        .map(|(a, b)| t.cyclic_move(Axis::Rows, a).cyclic_move(Axis::Cols, b).canonical_key())
        .collect();
    assert_eq!(keys.len(), 1);
}

#[test]
fn oracle_examples() {
    assert_eq!(unknot().alexander_oracle().unwrap(), LaurentPoly::one());
    let t = trefoil_grid();
    assert_eq!(t.alexander_oracle().unwrap(), leibniz_alexander(&t));
    assert_eq!(t.alexander_oracle().unwrap(), delta(&[(1, 1), (-1, 0), (1, -1)]));
    let f = knot("4_1");
    assert_eq!(f.alexander_oracle().unwrap(), leibniz_alexander(&f));
    assert_eq!(f.alexander_oracle().unwrap(), delta(&[(-1, 1), (3, 0), (-1, -1)]));
}

/// Crossings of a ray going right from `p` with the vertical segments,
/// counted with orientation X → O (the other end of the ray never meets the knot).
fn ray_winding(g: &GridDiagram, p: (f64, f64)) -> i64 {
    let mut w = 0;
    for c in 0..g.n() {
        let x = c as f64 + 0.5;
        if x <= p.0 {
            continue;
        }
        let (a, b) = (g.xs[c] as f64 + 0.5, g.os[c] as f64 + 0.5);
        if a.min(b) < p.1 && p.1 < a.max(b) {
            w += if b > a { 1 } else { -1 };
        }
    }
    w
}

#[test]
fn winding_matches_ray_count() {
    let g = unknot();
    let w = g.winding_number((Ratio::from_integer(1), Ratio::from_integer(1))).unwrap();
    assert_eq!(w.abs(), 1);
    assert_eq!(g.winding_number((Ratio::from_integer(7), Ratio::from_integer(0))).unwrap(), 0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let g = random_grid(&mut rng, 6);
        let m = g.winding_matrix();
        let sign = if ray_winding(&unknot(), (1.0, 1.0)) == unknot().winding_number((Ratio::from_integer(1), Ratio::from_integer(1))).unwrap() { 1 } else { -1 };
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(m[i][j], sign * ray_winding(&g, (i as f64, j as f64)));
            }
        }
    }
}

#[test]
fn text_format_round_trip() {
    let t = trefoil_grid();
    assert_eq!(t.to_text(), "5\nX: 0 1 2 3 4\nO: 2 3 4 0 1\n");
    assert_eq!(GridDiagram::from_text(&t.to_text()).unwrap(), t);
    assert!(GridDiagram::from_text("2\nX: 0 1\n").is_err());
}

fn grid_strategy(max_n: usize) -> impl Strategy<Value = GridDiagram> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_grid(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moves_preserve_alexander(g in grid_strategy(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = g.alexander_oracle().unwrap();
        prop_assert_eq!(&a, &leibniz_alexander(&g));
        prop_assert_eq!(a.invert_var(), a.clone());
        prop_assert_eq!(a.eval_one(), 1);
        for _ in 0..6 {
            let h = random_move(&mut rng, &g, 7);
            h.validate().unwrap();
            prop_assert_eq!(h.alexander_oracle().unwrap(), a.clone());
        }
    }

    #[test]
    fn stabilize_then_destabilize(g in grid_strategy(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_stabilization(&mut rng, &g);
        s.validate().unwrap();
        prop_assert_eq!(s.alexander_oracle().unwrap(), g.alexander_oracle().unwrap());
        let key = g.canonical_key();
        prop_assert!(s.destabilize().iter().any(|d| d.canonical_key() == key));
    }

    #[test]
    fn destab_sites_give_valid_grids(g in grid_strategy(7)) {
        for site in g.destab_sites() {
            let d = g.destabilize_at(site).unwrap();
            d.validate().unwrap();
            prop_assert_eq!(d.n(), g.n() - 1);
            prop_assert_eq!(d.alexander_oracle().unwrap(), g.alexander_oracle().unwrap());
        }
        let free = (0..g.n()).find(|&c| g.xs[c].abs_diff(g.os[c]) != 1);
        if let Some(c) = free {
            let site = DestabSite { axis: Axis::Cols, line: c };
            prop_assert!(g.destabilize_at(site).is_none());
        }
    }
}

#[test]
fn canonical_key_separates_orbits() {
    // all one-component grids up to n = 4 fall into orbits; within an orbit the key
    // is constant and distinct orbits get distinct keys
    for n in 2..=4 {
        let mut seen: Vec<(HashSet<GridDiagram>, hfk::grid::CanonicalKey)> = Vec::new();
        let perms = all_perms(n);
        for xs in &perms {
            for os in &perms {
                let Ok(g) = GridDiagram::new(xs.clone(), os.clone()) else { continue };
                if seen.iter().any(|(o, _)| o.contains(&g)) {
                    continue;
                }
                let orbit: HashSet<GridDiagram> = (0..n as i64)
                    .flat_map(|a| (0..n as i64).map(move |b| (a, b)))
                    .map(|(a, b)| g.cyclic_move(Axis::Rows, a).cyclic_move(Axis::Cols, b))
                    .collect();
                let key = g.canonical_key();
                for h in &orbit {
                    assert_eq!(h.canonical_key(), key);
                }
                assert!(seen.iter().all(|(_, k)| *k != key));
                seen.push((orbit, key));
            }
        }
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    permute(&mut (0..n).collect(), 0, &mut |p| out.push(p.to_vec()));
    out
}
