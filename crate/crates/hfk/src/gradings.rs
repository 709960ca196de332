//! Dominance counts I, J and the Maslov / Alexander gradings.
//!
//! Coordinates are integers in units of 1/SCALE so that puncture centres,
//! lattice points and oval intersection points are all exact.

use num_rational::Ratio;

use crate::grid::GridDiagram;

pub const SCALE: i32 = 20;

pub type Pt = (i32, i32);

/// I(S, T): pairs (s, t) with s strictly south-west of t.
pub fn dominance(s: &[Pt], t: &[Pt]) -> i64 {
    let mut k = 0;
    for a in s {
        for b in t {
            if a.0 < b.0 && a.1 < b.1 {
                k += 1;
            }
        }
    }
    k
}

/// J(S, T) = (I(S,T) + I(T,S)) / 2
pub fn j_pairing(s: &[Pt], t: &[Pt]) -> Ratio<i64> {
    Ratio::new(dominance(s, t) + dominance(t, s), 2)
}

pub fn puncture_pt(c: usize, r: usize) -> Pt {
    (SCALE * c as i32 + SCALE / 2, SCALE * r as i32 + SCALE / 2)
}

/// Everything about the decorations needed to grade generators.
#[derive(Clone, Debug)]
pub struct GradingData {
    pub n: usize,
    pub os: Vec<Pt>,
    pub xs: Vec<Pt>,
    i_oo: i64,
    // 2·(−J((O+X)/2, X−O)) − (n−1)
    a2_const: i64,
}

impl GradingData {
    pub fn new(g: &GridDiagram) -> Self {
        let n = g.n();
        let os: Vec<Pt> = (0..n).map(|c| puncture_pt(c, g.os[c])).collect();
        let xs: Vec<Pt> = (0..n).map(|c| puncture_pt(c, g.xs[c])).collect();
        let i_oo = dominance(&os, &os);
        let a2_const = -(dominance(&xs, &xs) - i_oo) - (n as i64 - 1);
        GradingData { n, os, xs, i_oo, a2_const }
    }

    /// I({p}, O) + I(O, {p})
    pub fn maslov_weight(&self, p: Pt) -> i64 {
        dominance(&[p], &self.os) + dominance(&self.os, &[p])
    }

    /// 2·J({p}, X − O)
    pub fn alexander_weight2(&self, p: Pt) -> i64 {
        let one = [p];
        dominance(&one, &self.xs) + dominance(&self.xs, &one) - dominance(&one, &self.os) - dominance(&self.os, &one)
    }

    /// Maslov grading; `mos` adds the +1 of the MOS normalization (oval
    /// complexes use the same formula minus one).
    pub fn maslov(&self, pts: &[Pt], mos: bool) -> i32 {
        let w: i64 = pts.iter().map(|&p| self.maslov_weight(p)).sum();
        (dominance(pts, pts) - w + self.i_oo + mos as i64) as i32
    }

    /// Maslov grading from a precomputed I(x,x) and per-point weights.
    pub fn maslov_from_parts(&self, i_xx: i64, weight_sum: i64, mos: bool) -> i32 {
        (i_xx - weight_sum + self.i_oo + mos as i64) as i32
    }

    /// Doubled Alexander grading 2·(J(x − (O+X)/2, X − O) − (n−1)/2).
    pub fn alexander2(&self, pts: &[Pt]) -> i32 {
        self.alexander2_from_parts(pts.iter().map(|&p| self.alexander_weight2(p)).sum())
    }

    pub fn alexander2_from_parts(&self, weight_sum: i64) -> i32 {
        (weight_sum + self.a2_const) as i32
    }
}

/// The same Alexander grading via winding numbers of the knot with reversed
/// orientation: A = Σ a(p) − ½ Σ_{q ∈ O ∪ X} ā(q) − (n−1)/2, ā the
/// four-quadrant average at a puncture.
pub fn alexander2_winding(g: &GridDiagram, pts: &[Pt]) -> i32 {
    let to_q = |p: Pt| (Ratio::new(p.0 as i64, SCALE as i64), Ratio::new(p.1 as i64, SCALE as i64));
    let a: i64 = pts
        .iter()
        .map(|&p| -g.winding_number(to_q(p)).expect("generator points avoid the knot"))
        .sum();
    let avg: Ratio<i64> = g
        .punctures()
        .into_iter()
        .map(|(c, r)| -g.quadrant_winding(to_q(puncture_pt(c, r))))
        .sum();
    let v = Ratio::from_integer(2 * a) - avg - Ratio::from_integer(g.n() as i64 - 1);
    assert!(v.is_integer(), "doubled Alexander grading must be integral");
    v.to_integer() as i32
}
