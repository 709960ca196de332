//! Pieces of the plane cut out by the ovals, found by flood fill on a refined
//! lattice, with corner incidences and periodic domains.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::gradings::{puncture_pt, SCALE};
use crate::ovals::{Band, OvalConfig, DELTA, DELTA_H};

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub piece_count: usize,
    pub unbounded: usize,
    /// Puncture cells `(c, r)` in each piece.
    pub punctures: Vec<Vec<(usize, usize)>>,
    /// Pieces around each intersection point, counterclockwise from upper right.
    pub corners: Vec<[usize; 4]>,
    /// Pieces inside each oval (oval order).
    pub oval_pieces: Vec<Vec<usize>>,
    /// Connected components of the union of the ovals.
    pub components: usize,
    xs: Vec<i32>,
    ys: Vec<i32>,
    cell_piece: Vec<usize>,
}

/// Multiplicity per piece.
pub type Domain = BTreeMap<usize, i64>;

fn lattice(n: usize, refine: i32) -> Vec<i32> {
    let s = SCALE * refine;
    let mut v = vec![-s, s * n as i32 + s];
    for k in 0..=n as i32 {
        for off in [0, SCALE / 2 - DELTA, SCALE / 2 - DELTA_H, SCALE / 2, SCALE / 2 + DELTA_H, SCALE / 2 + DELTA] {
            if k < n as i32 || off == 0 {
                v.push((s * k) + off * refine);
            }
        }
    }
    if refine > 1 {
        // extra lines halfway between the old ones
        let old = v.clone();
        let mut sorted = old.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            v.push((w[0] + w[1]) / 2);
        }
    }
    v.sort();
    v.dedup();
    v
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn overlaps(a: &Band, b: &Band) -> bool {
    // boundaries of two rectangles meet
    let x_ok = a.x0 <= b.x1 && b.x0 <= a.x1;
    let y_ok = a.y0 <= b.y1 && b.y0 <= a.y1;
    let a_in_b = b.x0 < a.x0 && a.x1 < b.x1 && b.y0 < a.y0 && a.y1 < b.y1;
    let b_in_a = a.x0 < b.x0 && b.x1 < a.x1 && a.y0 < b.y0 && b.y1 < a.y1;
    x_ok && y_ok && !a_in_b && !b_in_a
}

pub fn build_arrangement(cfg: &OvalConfig) -> Arrangement {
    build_with_refinement(cfg, 1)
}

/// Same arrangement on a lattice with extra lines; used to check that the
/// piece structure does not depend on the resolution.
pub fn build_with_refinement(cfg: &OvalConfig, refine: i32) -> Arrangement {
    let n = cfg.n();
    let scale = |b: Band| Band { x0: b.x0 * refine, x1: b.x1 * refine, y0: b.y0 * refine, y1: b.y1 * refine };
    let bands: Vec<Band> = cfg.bands().into_iter().map(scale).collect();
    let xs = lattice(n, refine);
    let ys = xs.clone();
    let (w, h) = (xs.len() - 1, ys.len() - 1);
    let idx = |v: &[i32], t: i32| v.binary_search(&t).expect("band edges are lattice lines");
    // walls[i][j]: the segment on vertical line i between rows j, j+1
    let mut vwall = vec![vec![false; h]; xs.len()];
    let mut hwall = vec![vec![false; w]; ys.len()];
    for b in &bands {
        let (i0, i1, j0, j1) = (idx(&xs, b.x0), idx(&xs, b.x1), idx(&ys, b.y0), idx(&ys, b.y1));
        for j in j0..j1 {
            vwall[i0][j] = true;
            vwall[i1][j] = true;
        }
        for i in i0..i1 {
            hwall[j0][i] = true;
            hwall[j1][i] = true;
        }
    }
    let cell = |i: usize, j: usize| j * w + i;
    let mut dsu = Dsu((0..w * h).collect());
    for j in 0..h {
        for i in 0..w {
            if i + 1 < w && !vwall[i + 1][j] {
                dsu.union(cell(i, j), cell(i + 1, j));
            }
            if j + 1 < h && !hwall[j + 1][i] {
                dsu.union(cell(i, j), cell(i, j + 1));
            }
        }
    }
    let mut label: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cell_piece = vec![0; w * h];
    for k in 0..w * h {
        let r = dsu.find(k);
        let next = label.len();
        cell_piece[k] = *label.entry(r).or_insert(next);
    }
    let piece_count = label.len();
    let piece_at = |x: i32, y: i32| cell_piece[cell(idx(&xs, x), idx(&ys, y))];
    let unbounded = cell_piece[0];
    let mut punctures = vec![Vec::new(); piece_count];
    for (c, r) in cfg.grid.punctures() {
        let p = puncture_pt(c, r);
        punctures[piece_at(p.0 * refine, p.1 * refine)].push((c, r));
    }
    let corners = (0..cfg.points.len() as u32)
        .map(|id| {
            let p = cfg.point_coords(id);
            let (i, j) = (idx(&xs, p.0 * refine), idx(&ys, p.1 * refine));
            [cell_piece[cell(i, j)], cell_piece[cell(i - 1, j)], cell_piece[cell(i - 1, j - 1)], cell_piece[cell(i, j - 1)]]
        })
        .collect();
    let oval_pieces = bands
        .iter()
        .map(|b| {
            let mut ps: Vec<usize> = Vec::new();
            for j in idx(&ys, b.y0)..idx(&ys, b.y1) {
                for i in idx(&xs, b.x0)..idx(&xs, b.x1) {
                    ps.push(cell_piece[cell(i, j)]);
                }
            }
            ps.sort();
            ps.dedup();
            ps
        })
        .collect();
    let mut comp = Dsu((0..bands.len()).collect());
    for a in 0..bands.len() {
        for b in a + 1..bands.len() {
            if overlaps(&bands[a], &bands[b]) {
                comp.union(a, b);
            }
        }
    }
    let components = (0..bands.len()).filter(|&a| comp.find(a) == a).count();
    Arrangement { piece_count, unbounded, punctures, corners, oval_pieces, components, xs, ys, cell_piece }
}

impl Arrangement {
    /// Corner index of `d` at point `p`: a₁ + a₃ − a₂ − a₄.
    pub fn corner_index(&self, d: &Domain, p: usize) -> i64 {
        let m = |k: usize| d.get(&self.corners[p][k]).copied().unwrap_or(0);
        m(0) + m(2) - m(1) - m(3)
    }

    /// One domain per oval: every piece inside it, multiplicity 1.
    pub fn periodic_domains(&self) -> Vec<Domain> {
        self.oval_pieces.iter().map(|ps| ps.iter().map(|&p| (p, 1)).collect()).collect()
    }

    /// Number of (point, quadrant) incidences per piece.
    pub fn corner_counts(&self) -> Vec<usize> {
        let mut k = vec![0; self.piece_count];
        for c in &self.corners {
            for &p in c {
                k[p] += 1;
            }
        }
        k
    }

    /// Plain-text picture: one character per lattice cell, pieces labelled
    /// cyclically by letters, `.` for the unbounded piece, `*` for punctures.
    pub fn dump(&self) -> String {
        let w = self.xs.len() - 1;
        let h = self.ys.len() - 1;
        let mut s = String::new();
        for j in (0..h).rev() {
            for i in 0..w {
                let p = self.cell_piece[j * w + i];
                let ch = if p == self.unbounded {
                    '.'
                } else {
                    (b'a' + (p % 26) as u8) as char
                };
                s.push(ch);
            }
            s.push('\n');
        }
        let _ = writeln!(s, "{} pieces, {} punctures", self.piece_count, self.punctures.iter().map(|v| v.len()).sum::<usize>());
        s
    }
}
