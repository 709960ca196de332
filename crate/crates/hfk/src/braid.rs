//! Braid closures as grid diagrams.

use thiserror::Error;

use crate::grid::GridDiagram;
use crate::simplify::{greedy_destabilize, minimize, SearchBudget};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("empty braid word")]
    EmptyWord,
    #[error("braid letters must be nonzero")]
    ZeroLetter,
    #[error("braid closure has {0} components")]
    MultiComponentClosure(usize),
    #[error("malformed braid word: {0}")]
    Parse(String),
}

pub fn parse_braid_text(s: &str) -> Result<Vec<i32>, BraidError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i32>().map_err(|_| BraidError::Parse(t.to_string())))
        .collect()
}

/// Grid diagram of the closure of a braid word (σ_i ↦ i, σ_i⁻¹ ↦ −i) with at
/// most strands + letters columns.
pub fn parse_braid(word: &[i32]) -> Result<GridDiagram, BraidError> {
    let raw = braid_grid_raw(word)?;
    let bound = word.len() + word.iter().map(|l| l.unsigned_abs() as usize).max().unwrap() + 1;
    let g = greedy_destabilize(&raw);
    if g.n() <= bound {
        return Ok(g);
    }
    // greedy slides got stuck; widen the search
    let mut budget = 64;
    loop {
        let h = minimize(&g, SearchBudget::new(budget));
        if h.n() <= bound || budget > 1 << 20 {
            return Ok(h);
        }
        budget *= 4;
    }
}

/// The staircase construction before any destabilization: every crossing
/// becomes one column in which the over-strand jumps across the under-strand,
/// and each closing arc takes two more columns.
pub fn braid_grid_raw(word: &[i32]) -> Result<GridDiagram, BraidError> {
    if word.is_empty() {
        return Err(BraidError::EmptyWord);
    }
    if word.contains(&0) {
        return Err(BraidError::ZeroLetter);
    }
    let m = word.iter().map(|l| l.unsigned_abs() as usize).max().unwrap() + 1;
    let k = word.len() as i64;

    // closure components = cycles of the braid permutation
    let mut perm: Vec<usize> = (0..m).collect();
    for &l in word {
        let i = l.unsigned_abs() as usize;
        perm.swap(i - 1, i);
    }
    let mut seen = vec![false; m];
    let mut comps = 0;
    for s in 0..m {
        if !seen[s] {
            comps += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
    }
    if comps != 1 {
        return Err(BraidError::MultiComponentClosure(comps));
    }

    // horizontal pieces are ids; `order` lists them bottom to top
    let mut order: Vec<usize> = Vec::new();
    let mut next_id = 0;
    let mut fresh = || {
        next_id += 1;
        next_id - 1
    };
    // verticals: (x, from, to) in the direction of travel
    let mut verticals: Vec<(i64, usize, usize)> = Vec::new();
    let start: Vec<usize> = (0..m).map(|_| fresh()).collect();
    order.extend(&start);
    let mut cur = start.clone();
    for (t, &l) in word.iter().enumerate() {
        let i = l.unsigned_abs() as usize;
        let (over, under, up) = if l > 0 { (i, i - 1, false) } else { (i - 1, i, true) };
        let h_new = fresh();
        let at = order.iter().position(|&h| h == cur[under]).unwrap();
        order.insert(if up { at + 1 } else { at }, h_new);
        verticals.push((t as i64, cur[over], h_new));
        cur[over] = h_new;
        cur.swap(i - 1, i);
    }
    // closing arcs: outermost for position 0
    let tops: Vec<usize> = (0..m).map(|_| fresh()).collect();
    for p in (0..m).rev() {
        order.push(tops[p]);
    }
    for p in 0..m {
        let c = (m - p) as i64;
        verticals.push((k + c - 1, cur[p], tops[p]));
        verticals.push((-c, tops[p], start[p]));
    }

    verticals.sort_by_key(|v| v.0);
    let mut row = vec![0; next_id];
    for (r, &h) in order.iter().enumerate() {
        row[h] = r;
    }
    let xs = verticals.iter().map(|v| row[v.1]).collect();
    let os = verticals.iter().map(|v| row[v.2]).collect();
    Ok(GridDiagram { xs, os })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    #[test]
    fn trefoil_braid() {
        let g = parse_braid(&[1, 1, 1]).unwrap();
        g.validate().unwrap();
        assert!(g.n() <= 5);
        assert!(parse_braid(&[1, -2, 1, -2]).unwrap().n() <= 7);
        assert_eq!(g.alexander_oracle().unwrap(), LaurentPoly::from_terms([(1, 1), (-1, 0), (1, -1)]));
    }

    #[test]
    fn raw_matches_reduced() {
        for w in [&[1, 1, 1][..], &[1, -2, 1, -2], &[1, 1, 1, 2, -1, 2]] {
            let raw = braid_grid_raw(w).unwrap();
            raw.validate().unwrap();
            let g = parse_braid(w).unwrap();
            assert_eq!(raw.alexander_oracle().unwrap(), g.alexander_oracle().unwrap());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(parse_braid(&[]), Err(BraidError::EmptyWord));
        assert_eq!(parse_braid(&[1, 1]), Err(BraidError::MultiComponentClosure(2)));
        assert_eq!(parse_braid_text("1 -2, 3").unwrap(), vec![1, -2, 3]);
    }
}
