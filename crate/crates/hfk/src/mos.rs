//! The MOS complex of a toroidal grid diagram, with spin-lift signs.

use std::collections::{BTreeMap, HashMap};

use crate::complex::{ComplexError, Grading, SparseComplex};
use crate::gradings::{GradingData, Pt, SCALE};
use crate::grid::GridDiagram;
use crate::ring::Ring;

/// Generators of the MOS complex: `perms[i][c]` is the row of the point in column c.
#[derive(Clone, Debug)]
pub struct MosGenerators {
    pub n: usize,
    pub perms: Vec<Vec<u8>>,
    pub gradings: Vec<Grading>,
}

pub fn perm_rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&v| v < p[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

fn all_perms(n: usize) -> Vec<Vec<u8>> {
    // lexicographic order, so index == perm_rank
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

pub fn mos_points(p: &[u8]) -> Vec<Pt> {
    p.iter().enumerate().map(|(c, &r)| (SCALE * c as i32, SCALE * r as i32)).collect()
}

pub fn mos_generators(g: &GridDiagram) -> MosGenerators {
    let d = GradingData::new(g);
    let perms = all_perms(g.n());
    let gradings = perms
        .iter()
        .map(|p| {
            let pts = mos_points(p);
            Grading::new(d.alexander2(&pts), d.maslov(&pts, true))
        })
        .collect();
    MosGenerators { n: g.n(), perms, gradings }
}

/// Element of the Clifford algebra with e_i² = −1, as sorted (blade, coefficient).
type Multivector = Vec<(u16, i64)>;

fn blade_sign(a: u16, b: u16) -> i64 {
    let mut swaps = (a & b).count_ones();
    let mut bb = b;
    let mut i = 0;
    while bb != 0 {
        if bb & 1 == 1 {
            swaps += (a >> (i + 1)).count_ones();
        }
        bb >>= 1;
        i += 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn coeff(m: &Multivector, b: u16) -> i64 {
    m.binary_search_by_key(&b, |e| e.0).map_or(0, |i| m[i].1)
}

/// Right multiplication by e_i − e_j.
fn times_tau(m: &Multivector, i: usize, j: usize) -> Multivector {
    let mut acc: BTreeMap<u16, i64> = BTreeMap::new();
    for &(b, v) in m {
        for (k, s) in [(i, 1), (j, -1)] {
            let e = 1u16 << k;
            *acc.entry(b ^ e).or_insert(0) += s * v * blade_sign(b, e);
        }
    }
    acc.into_iter().filter(|e| e.1 != 0).collect()
}

/// Lift of a permutation: product of τ's building it from the identity by
/// selection sort.
fn section(p: &[u8]) -> Multivector {
    let mut cur: Vec<u8> = (0..p.len() as u8).collect();
    let mut s: Multivector = vec![(0, 1)];
    for c in 0..p.len() {
        if cur[c] != p[c] {
            let k = cur.iter().position(|&v| v == p[c]).unwrap();
            cur.swap(c, k);
            s = times_tau(&s, c, k);
        }
    }
    s
}

/// Sign of the rectangle x → y whose lower-left corner is in column `c1` and
/// upper-right in `c2`: compares s(y) with s(x)·(e_{c1} − e_{c2}).
fn spin_sign(sx: &Multivector, sy: &Multivector, c1: usize, c2: usize) -> i64 {
    let (b, vy) = sy[0];
    let mut v = 0;
    for (k, s) in [(c1, 1), (c2, -1)] {
        let e = 1u16 << k;
        v += s * coeff(sx, b ^ e) * blade_sign(b ^ e, e);
    }
    debug_assert!(v != 0, "sections of x·τ and y must be proportional");
    (vy * v).signum()
}

/// Empty torus rectangles out of `p`: (c1, c2) with the lower-left corner in
/// column c1 and the upper-right in column c2.
pub fn empty_rectangles(g: &GridDiagram, p: &[u8]) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    for c1 in 0..n {
        for c2 in 0..n {
            if c1 == c2 {
                continue;
            }
            let w = (c2 + n - c1) % n;
            let base = p[c1] as usize;
            let h = (p[c2] as usize + n - base) % n;
            let ok = (0..w).all(|k| {
                let c = (c1 + k) % n;
                let inside = |r: usize| (r + n - base) % n < h;
                let point = k > 0 && {
                    let rr = (p[c] as usize + n - base) % n;
                    rr > 0 && rr < h
                };
                !inside(g.xs[c]) && !inside(g.os[c]) && !point
            });
            if ok {
                out.push((c1, c2));
            }
        }
    }
    out
}

/// Boundary restricted to the generators `ids` (one Alexander grading, or all).
pub fn mos_complex_on<R: Ring>(g: &GridDiagram, gens: &MosGenerators, ids: &[u32]) -> SparseComplex<R> {
    let mut local: HashMap<usize, u32> = HashMap::with_capacity(ids.len());
    for (i, &id) in ids.iter().enumerate() {
        local.insert(id as usize, i as u32);
    }
    let sections: Vec<Multivector> = ids.iter().map(|&id| section(&gens.perms[id as usize])).collect();
    let mut c = SparseComplex::new(ids.iter().map(|&id| gens.gradings[id as usize]).collect());
    for (i, &id) in ids.iter().enumerate() {
        let p = &gens.perms[id as usize];
        let mut row = Vec::new();
        for (c1, c2) in empty_rectangles(g, p) {
            let mut q = p.clone();
            q.swap(c1, c2);
            let j = *local
                .get(&perm_rank(&q))
                .expect("rectangles preserve the Alexander grading");
            let s = spin_sign(&sections[i], &sections[j as usize], c1, c2);
            row.push((j, R::from_i64(s)));
        }
        c.set_row(i as u32, row);
    }
    c
}

/// The whole MOS complex, with ∂² = 0 and the grading rule checked.
pub fn mos_boundary<R: Ring>(g: &GridDiagram) -> Result<SparseComplex<R>, ComplexError> {
    let gens = mos_generators(g);
    let ids: Vec<u32> = (0..gens.perms.len() as u32).collect();
    let c = mos_complex_on(g, &gens, &ids);
    c.check_gradings()?;
    c.check_square_zero()?;
    Ok(c)
}
