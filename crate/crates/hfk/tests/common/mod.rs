#![allow(dead_code)]

use hfk::grid::StabSite;
use hfk::{parse_braid, Axis, GridDiagram};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn unknot() -> GridDiagram {
    GridDiagram::new(vec![1, 0], vec![0, 1]).unwrap()
}

/// The 5×5 torus-knot grid; with our orientation conventions it is the
/// left-handed trefoil.
pub fn trefoil_grid() -> GridDiagram {
    GridDiagram::new(vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap()
}

pub fn fixture(name: &str) -> Vec<i32> {
    let text = include_str!("../fixtures/knots.txt");
    for line in text.lines() {
        if let Some((k, w)) = line.split_once(':') {
            if k.trim() == name {
                return hfk::braid::parse_braid_text(w).unwrap();
            }
        }
    }
    panic!("no fixture {name}")
}

pub fn knot(name: &str) -> GridDiagram {
    parse_braid(&fixture(name)).unwrap()
}

/// Uniformly random one-component grid of size n.
pub fn random_grid<R: Rng>(rng: &mut R, n: usize) -> GridDiagram {
    loop {
        let mut xs: Vec<usize> = (0..n).collect();
        let mut os: Vec<usize> = (0..n).collect();
        xs.shuffle(rng);
        os.shuffle(rng);
        if let Ok(g) = GridDiagram::new(xs, os) {
            return g;
        }
    }
}

pub fn random_stabilization<R: Rng>(rng: &mut R, g: &GridDiagram) -> GridDiagram {
    let n = g.n();
    let site = StabSite {
        axis: if rng.gen() { Axis::Cols } else { Axis::Rows },
        line: rng.gen_range(0..n),
        insert: rng.gen_range(0..=n),
        o_low: rng.gen(),
    };
    g.stabilize(site)
}

/// One random Cromwell move that keeps the size at most `max_n`.
pub fn random_move<R: Rng>(rng: &mut R, g: &GridDiagram, max_n: usize) -> GridDiagram {
    let n = g.n();
    let axis = if rng.gen() { Axis::Cols } else { Axis::Rows };
    match rng.gen_range(0..4) {
        0 => g.cyclic_move(axis, rng.gen_range(1..n as i64)),
        1 => {
            let legal: Vec<usize> = (0..n - 1).filter(|&i| g.castling_legal(axis, i)).collect();
            match legal.choose(rng) {
                Some(&i) => g.castling_move(axis, i).unwrap(),
                None => g.clone(),
            }
        }
        2 if n < max_n => random_stabilization(rng, g),
        _ => g.destabilize().choose(rng).cloned().unwrap_or_else(|| g.clone()),
    }
}

pub fn random_presentation<R: Rng>(rng: &mut R, g: &GridDiagram, steps: usize, max_n: usize) -> GridDiagram {
    let mut h = g.clone();
    for _ in 0..steps {
        h = random_move(rng, &h, max_n);
    }
    h
}
