//! Budgeted search for small grid presentations.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::grid::{Axis, CanonicalKey, GridDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_expansions: usize,
}

impl SearchBudget {
    pub fn new(max_expansions: usize) -> Self {
        SearchBudget { max_expansions: max_expansions.max(1) }
    }
}

/// The representative plus its one-step cyclic shifts, so that moves across the
/// seam of the torus are seen as ordinary planar moves.
fn seam_views(g: &GridDiagram) -> [GridDiagram; 3] {
    [g.clone(), g.cyclic_move(Axis::Rows, 1), g.cyclic_move(Axis::Cols, 1)]
}

fn dedup_min(v: Vec<GridDiagram>) -> Vec<GridDiagram> {
    let mut m = BTreeMap::new();
    for g in v {
        m.entry(g.canonical_key()).or_insert(g);
    }
    m.into_values().collect()
}

/// Slides every line monotonically by legal castlings, destabilizing after
/// each slide where possible.
pub fn generalized_destabilize(g: &GridDiagram) -> Vec<GridDiagram> {
    if g.n() <= 2 {
        return Vec::new();
    }
    let mut out = g.destabilize();
    for axis in [Axis::Cols, Axis::Rows] {
        for line in 0..g.n() {
            for forward in [false, true] {
                let mut h = g.clone();
                let mut pos = line;
                loop {
                    let step = if forward {
                        (pos + 1 < g.n()).then_some(pos)
                    } else {
                        pos.checked_sub(1)
                    };
                    let Some(idx) = step else { break };
                    match h.castling_move(axis, idx) {
                        Ok(next) => h = next,
                        Err(_) => break,
                    }
                    pos = if forward { pos + 1 } else { pos - 1 };
                    out.extend(h.destabilize());
                }
            }
        }
    }
    dedup_min(out)
}

fn smaller_neighbours(g: &GridDiagram) -> Vec<GridDiagram> {
    dedup_min(seam_views(g).iter().flat_map(generalized_destabilize).collect())
}

fn castling_neighbours(g: &GridDiagram) -> Vec<GridDiagram> {
    let mut out = Vec::new();
    for v in seam_views(g) {
        for axis in [Axis::Cols, Axis::Rows] {
            for i in 0..g.n() - 1 {
                if let Ok(h) = v.castling_move(axis, i) {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// Repeatedly takes the smallest-key destabilization (plain or after slides)
/// until none applies.
pub fn greedy_destabilize(g: &GridDiagram) -> GridDiagram {
    let mut g = g.clone();
    while let Some(d) = smaller_neighbours(&g).into_iter().next() {
        g = d;
    }
    g
}

/// What `minimize_traced` went through: the diagrams along the accepted path,
/// each one move (castling, cyclic shift or generalized destabilization) from
/// the previous, and the expansions spent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub path: Vec<GridDiagram>,
    pub expansions: usize,
}

/// Breadth-first search over castlings and destabilizations, restarting from
/// every strictly smaller diagram found.
pub fn minimize(g: &GridDiagram, budget: SearchBudget) -> GridDiagram {
    minimize_traced(g, budget).0
}

pub fn minimize_traced(g: &GridDiagram, budget: SearchBudget) -> (GridDiagram, Trace) {
    let mut trace = Trace { path: vec![g.clone()], expansions: 0 };
    let mut layer: Vec<GridDiagram> = vec![g.clone()];
    let mut root = g.clone();
    let mut parent: HashMap<CanonicalKey, GridDiagram> = HashMap::new();
    let mut visited: HashSet<CanonicalKey> = HashSet::from([g.canonical_key()]);
    'search: while !layer.is_empty() {
        let mut next: BTreeMap<CanonicalKey, GridDiagram> = BTreeMap::new();
        for d in &layer {
            if trace.expansions >= budget.max_expansions {
                break 'search;
            }
            trace.expansions += 1;
            if let Some(s) = smaller_neighbours(d).into_iter().next() {
                log::debug!("simplifier: n {} -> {} after {} expansions", d.n(), s.n(), trace.expansions);
                let mut back = vec![d.clone()];
                while let Some(p) = parent.get(&back.last().unwrap().canonical_key()) {
                    back.push(p.clone());
                }
                back.pop();
                trace.path.extend(back.into_iter().rev());
                trace.path.push(s.clone());
                root = s.clone();
                parent.clear();
                visited.clear();
                visited.insert(s.canonical_key());
                layer = vec![s];
                continue 'search;
            }
            for h in castling_neighbours(d) {
                let k = h.canonical_key();
                if visited.insert(k.clone()) {
                    parent.insert(k.clone(), d.clone());
                    next.insert(k, h);
                }
            }
        }
        layer = next.into_values().collect();
    }
    (root, trace)
}
