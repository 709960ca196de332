//! Short and long oval configurations on a planar cut of a grid diagram, and
//! the shortening schedule that turns the long one into the short one.

use thiserror::Error;

use crate::gradings::{GradingData, Pt, SCALE};
use crate::grid::{Axis, GridDiagram};

/// Half-widths of the vertical and horizontal bands, in 1/SCALE units.
pub const DELTA: i32 = 4;
pub const DELTA_H: i32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OvalError {
    #[error("column {0} and row {1} do not share a puncture on the boundary of the cut")]
    InvalidOmission(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OvalKind {
    Short,
    Long,
}

/// Intersection of vertical oval `v` with horizontal oval `h`; `sx` is the side
/// of the vertical band (−1 left, +1 right) and `sy` that of the horizontal one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OvalPoint {
    pub v: u8,
    pub h: u8,
    pub sx: i8,
    pub sy: i8,
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Band {
    pub x0: i32,
    pub x1: i32,
    pub y0: i32,
    pub y1: i32,
}

#[derive(Clone, Debug)]
pub struct OvalConfig {
    pub kind: OvalKind,
    /// The planar representative after cutting the torus.
    pub grid: GridDiagram,
    pub cut: (usize, usize),
    pub omitted_col: usize,
    pub omitted_row: usize,
    /// Column of each vertical oval, row of each horizontal oval (ascending).
    pub cols: Vec<usize>,
    pub rows: Vec<usize>,
    pub points: Vec<OvalPoint>,
    /// `pair[v * m + h]`: points of V_v ∩ H_h.
    pub pair: Vec<Vec<u32>>,
}

/// One death of a pair of long points; `p1` has the larger Maslov grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Event {
    pub time: usize,
    pub p1: u32,
    pub p2: u32,
}

#[derive(Clone, Debug)]
pub struct Schedule {
    pub events: Vec<Event>,
    /// `(short point, long point)`
    pub survivors: Vec<(u32, u32)>,
}

/// Rows of the two punctures of each column and columns of the two punctures
/// of each row, each pair sorted.
fn spans(g: &GridDiagram) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let n = g.n();
    let cs = (0..n).map(|c| (g.xs[c].min(g.os[c]), g.xs[c].max(g.os[c]))).collect();
    let (rx, ro) = g.row_decorations();
    let rs = (0..n).map(|r| (rx[r].min(ro[r]), rx[r].max(ro[r]))).collect();
    (cs, rs)
}

pub fn cut_grid(g: &GridDiagram, cut: (usize, usize)) -> GridDiagram {
    g.cyclic_move(Axis::Cols, cut.0 as i64).cyclic_move(Axis::Rows, cut.1 as i64)
}

fn is_puncture(g: &GridDiagram, c: usize, r: usize) -> bool {
    g.xs[c] == r || g.os[c] == r
}

/// Omissions whose common puncture lies on the outer ring of cells, so it is
/// in the unbounded region for both configurations.
pub fn valid_omissions(g: &GridDiagram) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut out: Vec<(usize, usize)> = g
        .punctures()
        .into_iter()
        .filter(|&(c, r)| c == 0 || c == n - 1 || r == 0 || r == n - 1)
        .collect();
    out.sort();
    out.dedup();
    out
}

impl OvalConfig {
    fn skeleton(
        kind: OvalKind,
        g: &GridDiagram,
        cut: (usize, usize),
        omitted_col: usize,
        omitted_row: usize,
    ) -> Result<OvalConfig, OvalError> {
        let grid = cut_grid(g, cut);
        let n = grid.n();
        let border = omitted_col == 0 || omitted_col == n - 1 || omitted_row == 0 || omitted_row == n - 1;
        if omitted_col >= n || omitted_row >= n || !is_puncture(&grid, omitted_col, omitted_row) || !border {
            return Err(OvalError::InvalidOmission(omitted_col, omitted_row));
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != omitted_col).collect();
        let rows: Vec<usize> = (0..n).filter(|&r| r != omitted_row).collect();
        let m = n - 1;
        Ok(OvalConfig {
            kind,
            grid,
            cut,
            omitted_col,
            omitted_row,
            cols,
            rows,
            points: Vec::new(),
            pair: vec![Vec::new(); m * m],
        })
    }

    fn push(&mut self, p: OvalPoint) {
        let m = self.m();
        self.pair[p.v as usize * m + p.h as usize].push(self.points.len() as u32);
        self.points.push(p);
    }

    /// Number of ovals of each direction.
    pub fn m(&self) -> usize {
        self.cols.len()
    }

    pub fn n(&self) -> usize {
        self.grid.n()
    }

    pub fn pair_points(&self, v: usize, h: usize) -> &[u32] {
        &self.pair[v * self.m() + h]
    }

    pub fn coords(&self, p: OvalPoint) -> Pt {
        let c = self.cols[p.v as usize] as i32;
        let r = self.rows[p.h as usize] as i32;
        (
            SCALE * c + SCALE / 2 + DELTA * p.sx as i32,
            SCALE * r + SCALE / 2 + DELTA_H * p.sy as i32,
        )
    }

    pub fn point_coords(&self, id: u32) -> Pt {
        self.coords(self.points[id as usize])
    }

    pub fn find_point(&self, v: usize, h: usize, sx: i8, sy: i8) -> Option<u32> {
        self.pair_points(v, h)
            .iter()
            .copied()
            .find(|&i| self.points[i as usize].sx == sx && self.points[i as usize].sy == sy)
    }

    /// Band of vertical oval `v`.
    pub fn v_band(&self, v: usize) -> Band {
        let c = self.cols[v] as i32;
        let (lo, hi) = match self.kind {
            OvalKind::Long => (0, SCALE * self.n() as i32),
            OvalKind::Short => {
                let (y1, y2) = spans(&self.grid).0[self.cols[v]];
                (SCALE * y1 as i32 + SCALE / 2 - DELTA, SCALE * y2 as i32 + SCALE / 2 + DELTA)
            }
        };
        Band { x0: SCALE * c + SCALE / 2 - DELTA, x1: SCALE * c + SCALE / 2 + DELTA, y0: lo, y1: hi }
    }

    /// Band of horizontal oval `h`.
    pub fn h_band(&self, h: usize) -> Band {
        let r = self.rows[h] as i32;
        let (lo, hi) = match self.kind {
            OvalKind::Long => (0, SCALE * self.n() as i32),
            OvalKind::Short => {
                let (x1, x2) = spans(&self.grid).1[self.rows[h]];
                (SCALE * x1 as i32 + SCALE / 2 - DELTA_H, SCALE * x2 as i32 + SCALE / 2 + DELTA_H)
            }
        };
        Band { x0: lo, x1: hi, y0: SCALE * r + SCALE / 2 - DELTA_H, y1: SCALE * r + SCALE / 2 + DELTA_H }
    }

    /// All ovals in the fixed order: verticals by column, then horizontals by row.
    pub fn bands(&self) -> Vec<Band> {
        let m = self.m();
        (0..m).map(|v| self.v_band(v)).chain((0..m).map(|h| self.h_band(h))).collect()
    }

    pub fn grading_data(&self) -> GradingData {
        GradingData::new(&self.grid)
    }
}

/// Short ovals around each non-omitted line's puncture pair.
pub fn build_short_config(
    g: &GridDiagram,
    cut: (usize, usize),
    omitted_col: usize,
    omitted_row: usize,
) -> Result<OvalConfig, OvalError> {
    let mut cfg = OvalConfig::skeleton(OvalKind::Short, g, cut, omitted_col, omitted_row)?;
    let (cs, rs) = spans(&cfg.grid);
    let m = cfg.m();
    for v in 0..m {
        for h in 0..m {
            let (c, r) = (cfg.cols[v], cfg.rows[h]);
            let (y1, y2) = cs[c];
            let (x1, x2) = rs[r];
            let (vv, hh) = (v as u8, h as u8);
            if y1 < r && r < y2 && x1 < c && c < x2 {
                for (sx, sy) in [(-1, -1), (1, -1), (-1, 1), (1, 1)] {
                    cfg.push(OvalPoint { v: vv, h: hh, sx, sy });
                }
            } else if is_puncture(&cfg.grid, c, r) {
                // the horizontal tip pokes through the far edge of the vertical band
                let sx = if c == x1 { 1 } else { -1 };
                for sy in [-1, 1] {
                    cfg.push(OvalPoint { v: vv, h: hh, sx, sy });
                }
            }
        }
    }
    Ok(cfg)
}

/// Long ovals (every pair meets in 4 points) and the schedule of point-pair
/// deaths while retracting them, in oval order, lower/left tip first.
pub fn build_long_config(
    g: &GridDiagram,
    cut: (usize, usize),
    omitted_col: usize,
    omitted_row: usize,
) -> Result<(OvalConfig, Schedule), OvalError> {
    let mut cfg = OvalConfig::skeleton(OvalKind::Long, g, cut, omitted_col, omitted_row)?;
    let m = cfg.m();
    for v in 0..m as u8 {
        for h in 0..m as u8 {
            for (sx, sy) in [(-1, -1), (1, -1), (-1, 1), (1, 1)] {
                cfg.push(OvalPoint { v, h, sx, sy });
            }
        }
    }
    let (cs, rs) = spans(&cfg.grid);
    let gd = cfg.grading_data();
    let mut events = Vec::new();
    let mut kill = |cfg: &OvalConfig, v: usize, h: usize, fixed_x: Option<i8>, fixed_y: Option<i8>| {
        let pts: Vec<u32> = cfg
            .pair_points(v, h)
            .iter()
            .copied()
            .filter(|&i| {
                let p = cfg.points[i as usize];
                fixed_x.is_none_or(|s| p.sx == s) && fixed_y.is_none_or(|s| p.sy == s)
            })
            .collect();
        debug_assert_eq!(pts.len(), 2);
        let (a, b) = (pts[0], pts[1]);
        let ma = gd.maslov(&[cfg.point_coords(a)], false);
        let mb = gd.maslov(&[cfg.point_coords(b)], false);
        assert_eq!((ma - mb).abs(), 1, "dying pair must differ by one in Maslov grading");
        let (p1, p2) = if ma > mb { (a, b) } else { (b, a) };
        events.push(Event { time: events.len(), p1, p2 });
    };
    for v in 0..m {
        let (y1, y2) = cs[cfg.cols[v]];
        for h in 0..m {
            if cfg.rows[h] < y1 {
                kill(&cfg, v, h, None, Some(-1));
                kill(&cfg, v, h, None, Some(1));
            }
        }
        for h in (0..m).rev() {
            if cfg.rows[h] > y2 {
                kill(&cfg, v, h, None, Some(1));
                kill(&cfg, v, h, None, Some(-1));
            }
        }
    }
    for h in 0..m {
        let r = cfg.rows[h];
        let (x1, x2) = rs[r];
        // verticals still crossing this row after their own shortening
        let crosses = |v: usize| {
            let (y1, y2) = cs[cfg.cols[v]];
            y1 <= r && r <= y2
        };
        for v in 0..m {
            let c = cfg.cols[v];
            if c <= x1 && crosses(v) {
                kill(&cfg, v, h, Some(-1), None);
                if c < x1 {
                    kill(&cfg, v, h, Some(1), None);
                }
            }
        }
        for v in (0..m).rev() {
            let c = cfg.cols[v];
            if c >= x2 && crosses(v) {
                kill(&cfg, v, h, Some(1), None);
                if c > x2 {
                    kill(&cfg, v, h, Some(-1), None);
                }
            }
        }
    }
    let short = build_short_config(g, cut, omitted_col, omitted_row)?;
    let survivors = short
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let l = cfg.find_point(p.v as usize, p.h as usize, p.sx, p.sy).expect("long config has all tags");
            (i as u32, l)
        })
        .collect();
    Ok((cfg, Schedule { events, survivors }))
}

/// Fewest short intersection points over all cuts and omissions; ties go to
/// the smallest (cut, omission).
pub fn select_best_config(g: &GridDiagram) -> OvalConfig {
    let n = g.n();
    let mut best: Option<OvalConfig> = None;
    for cc in 0..n {
        for cr in 0..n {
            let cut = (cc, cr);
            let cg = cut_grid(g, cut);
            for (oc, or) in valid_omissions(&cg) {
                let cfg = build_short_config(g, cut, oc, or).expect("omission is valid");
                if best.as_ref().is_none_or(|b| cfg.points.len() < b.points.len()) {
                    best = Some(cfg);
                }
            }
        }
    }
    best.expect("every grid has a puncture on its border")
}
