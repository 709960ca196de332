//! Generators of oval complexes (proto-generators times corner tags) and the
//! signed boundary of the long complex.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{ComplexError, Grading, SparseComplex};
use crate::gradings::{dominance, puncture_pt, GradingData, Pt};
use crate::mos::perm_rank;
use crate::ovals::{OvalConfig, OvalKind};
use crate::ring::Ring;

/// Generators of one oval configuration. A proto-generator pairs every
/// vertical oval with a horizontal one; a generator additionally picks one
/// intersection point in each pair. Ids are `offsets[proto] + Σ digit_v·stride_v`.
#[derive(Clone, Debug)]
pub struct OvalGenerators {
    pub m: usize,
    pub protos: Vec<Vec<u8>>,
    /// I(x, x) of the proto-generator, shared by all its generators.
    pub proto_ixx: Vec<i64>,
    pub offsets: Vec<u64>,
    proto_of_rank: Vec<u32>,
    /// Per point: 2·Alexander weight and Maslov weight.
    pub a_weight: Vec<i64>,
    pub m_weight: Vec<i64>,
    grading_data: GradingData,
}

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// All perfect matchings of the vertical/horizontal ovals along nonempty pairs.
fn matchings(cfg: &OvalConfig) -> Vec<Vec<u8>> {
    let m = cfg.m();
    let mut out = Vec::new();
    let mut cur = vec![0u8; m];
    let mut used = vec![false; m];
    fn rec(cfg: &OvalConfig, v: usize, cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        let m = cfg.m();
        if v == m {
            out.push(cur.clone());
            return;
        }
        for h in 0..m {
            if !used[h] && !cfg.pair_points(v, h).is_empty() {
                used[h] = true;
                cur[v] = h as u8;
                rec(cfg, v + 1, cur, used, out);
                used[h] = false;
            }
        }
    }
    rec(cfg, 0, &mut cur, &mut used, &mut out);
    out
}

/// I(C, C) for the (column, row) positions of a proto-generator; equals I(x,x)
/// for every generator on it since distinct ovals are separated by whole cells.
fn proto_dominance(cfg: &OvalConfig, perm: &[u8]) -> i64 {
    let c: Vec<Pt> = perm.iter().enumerate().map(|(v, &h)| (cfg.cols[v] as i32, cfg.rows[h as usize] as i32)).collect();
    dominance(&c, &c)
}

impl OvalGenerators {
    pub fn new(cfg: &OvalConfig) -> Self {
        let m = cfg.m();
        let mut protos = matchings(cfg);
        protos.sort_by_key(|p| perm_rank(p));
        let mut proto_of_rank = vec![u32::MAX; factorial(m)];
        let mut offsets = Vec::with_capacity(protos.len() + 1);
        let mut total = 0u64;
        for (i, p) in protos.iter().enumerate() {
            proto_of_rank[perm_rank(p)] = i as u32;
            offsets.push(total);
            total += p.iter().enumerate().map(|(v, &h)| cfg.pair_points(v, h as usize).len() as u64).product::<u64>();
        }
        offsets.push(total);
        let proto_ixx = protos.iter().map(|p| proto_dominance(cfg, p)).collect();
        let gd = cfg.grading_data();
        let pts: Vec<Pt> = (0..cfg.points.len() as u32).map(|i| cfg.point_coords(i)).collect();
        let a_weight = pts.iter().map(|&p| gd.alexander_weight2(p)).collect();
        let m_weight = pts.iter().map(|&p| gd.maslov_weight(p)).collect();
        OvalGenerators { m, protos, proto_ixx, offsets, proto_of_rank, a_weight, m_weight, grading_data: gd }
    }

    pub fn len(&self) -> u64 {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn proto_of(&self, perm: &[u8]) -> Option<usize> {
        let i = self.proto_of_rank[perm_rank(perm)];
        (i != u32::MAX).then_some(i as usize)
    }

    /// Id of the generator picking `points[v]` on each vertical oval.
    pub fn id_of(&self, cfg: &OvalConfig, points: &[u32]) -> Option<u64> {
        let perm: Vec<u8> = points.iter().map(|&p| cfg.points[p as usize].h).collect();
        let proto = self.proto_of(&perm)?;
        let mut id = 0u64;
        let mut stride = 1u64;
        for (v, &p) in points.iter().enumerate() {
            let list = cfg.pair_points(v, perm[v] as usize);
            let d = list.iter().position(|&q| q == p)? as u64;
            id += d * stride;
            stride *= list.len() as u64;
        }
        Some(self.offsets[proto] + id)
    }

    /// Points of generator `id`, one per vertical oval.
    pub fn points_of(&self, cfg: &OvalConfig, id: u64) -> (usize, Vec<u32>) {
        let proto = self.offsets.partition_point(|&o| o <= id) - 1;
        let mut rest = id - self.offsets[proto];
        let perm = &self.protos[proto];
        let pts = perm
            .iter()
            .enumerate()
            .map(|(v, &h)| {
                let list = cfg.pair_points(v, h as usize);
                let k = list.len() as u64;
                let d = rest % k;
                rest /= k;
                list[d as usize]
            })
            .collect();
        (proto, pts)
    }

    pub fn grading_of(&self, proto: usize, points: &[u32]) -> Grading {
        let a: i64 = points.iter().map(|&p| self.a_weight[p as usize]).sum();
        let w: i64 = points.iter().map(|&p| self.m_weight[p as usize]).sum();
        Grading::new(
            self.grading_data.alexander2_from_parts(a),
            self.grading_data.maslov_from_parts(self.proto_ixx[proto], w, false),
        )
    }

    /// Every generator of one proto-generator, with its doubled Alexander grading.
    pub fn for_each_in_proto(&self, cfg: &OvalConfig, proto: usize, mut f: impl FnMut(u64, &[u32], i32)) {
        let perm = &self.protos[proto];
        let lists: Vec<&[u32]> = perm.iter().enumerate().map(|(v, &h)| cfg.pair_points(v, h as usize)).collect();
        let mut digits = vec![0usize; self.m];
        let mut pts: Vec<u32> = lists.iter().map(|l| l[0]).collect();
        let mut id = self.offsets[proto];
        loop {
            let a: i64 = pts.iter().map(|&p| self.a_weight[p as usize]).sum();
            f(id, &pts, self.grading_data.alexander2_from_parts(a));
            id += 1;
            let mut v = 0;
            loop {
                if v == self.m {
                    return;
                }
                digits[v] += 1;
                if digits[v] < lists[v].len() {
                    pts[v] = lists[v][digits[v]];
                    break;
                }
                digits[v] = 0;
                pts[v] = lists[v][0];
                v += 1;
            }
        }
    }

    /// Ids of all generators grouped by doubled Alexander grading, leaving out
    /// the gradings in `skip`.
    pub fn slices(&self, cfg: &OvalConfig, skip: &BTreeSet<i32>) -> BTreeMap<i32, Vec<u64>> {
        let mut out: BTreeMap<i32, Vec<u64>> = BTreeMap::new();
        for proto in 0..self.protos.len() {
            self.for_each_in_proto(cfg, proto, |id, _, a| {
                if !skip.contains(&a) {
                    out.entry(a).or_default().push(id);
                }
            });
        }
        out
    }

    /// Generator counts per bigrading.
    pub fn graded_counts(&self, cfg: &OvalConfig) -> BTreeMap<Grading, u64> {
        let mut out = BTreeMap::new();
        for proto in 0..self.protos.len() {
            self.for_each_in_proto(cfg, proto, |_, pts, _| *out.entry(self.grading_of(proto, pts)).or_insert(0) += 1);
        }
        out
    }

    /// Largest doubled Alexander grading of any generator.
    pub fn max_alexander(&self, cfg: &OvalConfig) -> Option<i32> {
        let m = cfg.m();
        let best: Vec<Vec<Option<i64>>> = (0..m)
            .map(|v| (0..m).map(|h| cfg.pair_points(v, h).iter().map(|&p| self.a_weight[p as usize]).max()).collect())
            .collect();
        max_assignment(&best).map(|w| self.grading_data.alexander2_from_parts(w))
    }

    /// Generator counts per doubled Alexander grading.
    pub fn alexander_counts(&self, cfg: &OvalConfig) -> BTreeMap<i32, u64> {
        let mut out = BTreeMap::new();
        for proto in 0..self.protos.len() {
            self.for_each_in_proto(cfg, proto, |_, _, a| *out.entry(a).or_insert(0) += 1);
        }
        out
    }
}

/// Maximum-weight perfect matching on a square matrix (`None` = forbidden);
/// returns `None` when no perfect matching exists.
pub fn max_assignment(w: &[Vec<Option<i64>>]) -> Option<i64> {
    let n = w.len();
    if n == 0 {
        return Some(0);
    }
    const BIG: i64 = 1 << 40;
    // Hungarian algorithm on costs −w, forbidden edges get a huge cost
    let cost = |i: usize, j: usize| w[i][j].map_or(BIG, |x| -x);
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = 0;
    for j in 1..=n {
        {
            let x = w[p[j] - 1][j - 1]?;
            total += x
        }
    }
    Some(total)
}

/// Generators with doubled Alexander grading above `threshold2`, by
/// branch-and-bound over partial matchings: a branch is cut as soon as the
/// optimal completion of its pair weights cannot exceed the threshold.
pub fn enumerate_high_alexander(cfg: &OvalConfig, gens: &OvalGenerators, threshold2: i32) -> Vec<u64> {
    let m = cfg.m();
    // best point weight per pair
    let best: Vec<Vec<Option<i64>>> = (0..m)
        .map(|v| {
            (0..m)
                .map(|h| cfg.pair_points(v, h).iter().map(|&p| gens.a_weight[p as usize]).max())
                .collect()
        })
        .collect();
    let need = threshold2 as i64 - gens.grading_data.alexander2_from_parts(0) as i64;
    let mut out = Vec::new();
    let mut perm = vec![0u8; m];
    let mut used = vec![false; m];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        cfg: &OvalConfig,
        gens: &OvalGenerators,
        best: &[Vec<Option<i64>>],
        v: usize,
        acc: i64,
        need: i64,
        perm: &mut Vec<u8>,
        used: &mut Vec<bool>,
        out: &mut Vec<u64>,
    ) {
        let m = cfg.m();
        let free: Vec<usize> = (0..m).filter(|&h| !used[h]).collect();
        let sub: Vec<Vec<Option<i64>>> = (v..m).map(|vv| free.iter().map(|&h| best[vv][h]).collect()).collect();
        match max_assignment(&sub) {
            Some(b) if acc + b > need => {}
            _ => return,
        }
        if v == m {
            let proto = gens.proto_of(perm).expect("matching along nonempty pairs");
            gens.for_each_in_proto(cfg, proto, |id, pts, _| {
                let a: i64 = pts.iter().map(|&p| gens.a_weight[p as usize]).sum();
                if a > need {
                    out.push(id);
                }
            });
            return;
        }
        for h in 0..m {
            if let (false, Some(w)) = (used[h], best[v][h]) {
                used[h] = true;
                perm[v] = h as u8;
                rec(cfg, gens, best, v + 1, acc + w, need, perm, used, out);
                used[h] = false;
            }
        }
    }
    rec(cfg, gens, &best, 0, 0, need, &mut perm, &mut used, &mut out);
    out.sort_unstable();
    out
}

/// Sign of the planar rectangle with corners `ll`, `ur` of x, evaluated on
/// the (column, row) positions `c` of x.
pub fn planar_sign(c: &[Pt], ll: Pt, ur: Pt) -> i64 {
    let (a, b) = ll;
    let (cc, d) = ur;
    let dcount = c.iter().filter(|p| a <= p.0 && p.0 <= cc && p.1 < b).count() as i64;
    let low: Vec<Pt> = c.iter().copied().filter(|p| p.1 <= d).collect();
    let mid: Vec<Pt> = c.iter().copied().filter(|p| b < p.1 && p.1 <= d).collect();
    let e = dominance(c, &low) + dcount * (dominance(c, &mid) + 1);
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Static data for boundary rows of a long configuration.
pub struct LongBoundary<'a> {
    cfg: &'a OvalConfig,
    gens: &'a OvalGenerators,
    col_span: Vec<(usize, usize)>,
    row_span: Vec<(usize, usize)>,
    punctures: Vec<Pt>,
}

impl<'a> LongBoundary<'a> {
    pub fn new(cfg: &'a OvalConfig, gens: &'a OvalGenerators) -> Self {
        assert_eq!(cfg.kind, OvalKind::Long, "boundary rows are defined on the long configuration");
        let g = &cfg.grid;
        let n = g.n();
        let col_span = (0..n).map(|c| (g.xs[c].min(g.os[c]), g.xs[c].max(g.os[c]))).collect();
        let (rx, ro) = g.row_decorations();
        let row_span = (0..n).map(|r| (rx[r].min(ro[r]), rx[r].max(ro[r]))).collect();
        let punctures = g.punctures().into_iter().map(|(c, r)| puncture_pt(c, r)).collect();
        LongBoundary { cfg, gens, col_span, row_span, punctures }
    }

    pub fn gens(&self) -> &OvalGenerators {
        self.gens
    }

    /// `∂x` as (target id, ±1), bigons first, then rectangles.
    pub fn row(&self, id: u64) -> Vec<(u64, i64)> {
        let cfg = self.cfg;
        let (proto, pts) = self.gens.points_of(cfg, id);
        let m = cfg.m();
        let op: Vec<_> = pts.iter().map(|&p| cfg.points[p as usize]).collect();
        let c: Vec<Pt> = op.iter().map(|p| (cfg.cols[p.v as usize] as i32, cfg.rows[p.h as usize] as i32)).collect();
        let icc = self.gens.proto_ixx[proto];
        let mut out = Vec::new();
        let mut emit = |new_pts: &[u32], s: i64| {
            let y = self.gens.id_of(cfg, new_pts).expect("target is a generator");
            out.push((y, s));
        };
        for i in 0..m {
            let p = op[i];
            let col = cfg.cols[i];
            let row = cfg.rows[p.h as usize];
            let (y1, y2) = self.col_span[col];
            let (x1, x2) = self.row_span[row];
            let mut cand: Vec<(bool, i8, i8)> = Vec::new();
            // bigons cut off by the tip of the vertical oval
            match (p.sx, p.sy) {
                (1, -1) if y1 >= row => cand.push((true, -1, -1)),
                (1, 1) if y1 > row => cand.push((true, -1, 1)),
                (-1, -1) if y2 < row => cand.push((true, 1, -1)),
                (-1, 1) if y2 <= row => cand.push((true, 1, 1)),
                _ => {}
            }
            // and by the tip of the horizontal one
            match (p.sx, p.sy) {
                (-1, 1) if x1 >= col => cand.push((false, -1, -1)),
                (1, 1) if x1 > col => cand.push((false, 1, -1)),
                (-1, -1) if x2 < col => cand.push((false, -1, 1)),
                (1, -1) if x2 <= col => cand.push((false, 1, 1)),
                _ => {}
            }
            for (vertical, sx, sy) in cand {
                let pre = if vertical {
                    op[..i].iter().filter(|q| q.sx == 1).count()
                } else {
                    op.iter().filter(|q| q.sx == 1).count() + op.iter().filter(|q| q.h < p.h && q.sy == 1).count()
                } as i64;
                let s = if (icc + pre) % 2 == 0 { 1 } else { -1 };
                let mut y = pts.clone();
                y[i] = cfg.find_point(i, p.h as usize, sx, sy).unwrap();
                emit(&y, s);
            }
        }
        let xy: Vec<Pt> = pts.iter().map(|&q| cfg.point_coords(q)).collect();
        for i in 0..m {
            for k in i + 1..m {
                let (p, q) = (op[i], op[k]);
                if p.h >= q.h {
                    continue;
                }
                let (lo, hi) = (xy[i], xy[k]);
                let inside = |z: &Pt| lo.0 < z.0 && z.0 < hi.0 && lo.1 < z.1 && z.1 < hi.1;
                if self.punctures.iter().any(inside) || xy.iter().any(inside) {
                    continue;
                }
                let mut y = pts.clone();
                y[i] = cfg.find_point(i, q.h as usize, p.sx, q.sy).unwrap();
                y[k] = cfg.find_point(k, p.h as usize, q.sx, p.sy).unwrap();
                emit(&y, planar_sign(&c, c[i], c[k]));
            }
        }
        out
    }
}

/// The long complex restricted to `ids` (sorted; closed under ∂, e.g. one
/// Alexander grading).
pub fn long_boundary<R: Ring>(lb: &LongBoundary, ids: &[u64]) -> SparseComplex<R> {
    let cfg = lb.cfg;
    let gradings = ids
        .iter()
        .map(|&id| {
            let (proto, pts) = lb.gens.points_of(cfg, id);
            lb.gens.grading_of(proto, &pts)
        })
        .collect();
    let mut c = SparseComplex::new(gradings);
    for (i, &id) in ids.iter().enumerate() {
        let row = lb.row(id).into_iter().map(|(y, s)| {
            let j = ids.binary_search(&y).expect("boundary stays in the slice");
            (j as u32, R::from_i64(s))
        });
        c.set_row(i as u32, row);
    }
    c
}

/// Whole long complex, checked.
pub fn long_complex<R: Ring>(cfg: &OvalConfig) -> Result<SparseComplex<R>, ComplexError> {
    let gens = OvalGenerators::new(cfg);
    let lb = LongBoundary::new(cfg, &gens);
    let ids: Vec<u64> = (0..gens.len()).collect();
    let c = long_boundary(&lb, &ids);
    c.check_gradings()?;
    c.check_square_zero()?;
    Ok(c)
}
