//! Homology of sparse complexes and the passage from H(C) to HFK-hat.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::complex::{ComplexError, Grading, SparseComplex};
use crate::linalg::{eliminate, invariant_factors, rank_mod2};
use crate::ring::{Ring, RingKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("homology is not a tensor product with V^(n-1): {0}")]
    InconsistentTensor(String),
    #[error("skipped gradings cannot be reconstructed: {0}")]
    UnderdeterminedSkip(String),
    #[error("empty table")]
    Empty,
}

/// A finitely generated abelian group (or F2 vector space): rank plus torsion
/// invariant factors, each dividing the next.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Group {
    pub rank: u64,
    pub torsion: Vec<u64>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Groups keyed by (doubled Alexander grading, Maslov grading); zero groups omitted.
pub type GradedGroups = BTreeMap<(i32, i32), Group>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub ring: RingKind,
    pub groups: GradedGroups,
}

impl HomologyResult {
    pub fn total_rank(&self) -> u64 {
        self.groups.values().map(|g| g.rank).sum()
    }
}

/// Homology of one complex: unit pivots are cancelled first, the remaining
/// blocks go through Smith normal form (or rank over F2).
pub fn homology<R: Ring>(c: &SparseComplex<R>) -> Result<HomologyResult, ComplexError> {
    let (mut c, _) = c.compact();
    c.reduce_fast()?;
    let (c, _) = c.compact();
    let mut by_grading: BTreeMap<Grading, Vec<u32>> = BTreeMap::new();
    for x in 0..c.len() as u32 {
        by_grading.entry(c.grading(x)).or_default().push(x);
    }
    // invariant factors of the block leaving each grading
    let mut out_factors: BTreeMap<Grading, Vec<BigInt>> = BTreeMap::new();
    for (g, src) in &by_grading {
        let tgt_g = Grading::new(g.alexander2, g.maslov - 1);
        let Some(tgt) = by_grading.get(&tgt_g) else { continue };
        let pos: BTreeMap<u32, usize> = tgt.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        if src.iter().all(|&x| c.row(x).is_empty()) {
            continue;
        }
        let factors = match R::KIND {
            RingKind::Mod2 => {
                let m: Vec<Vec<bool>> = src
                    .iter()
                    .map(|&x| {
                        let mut r = vec![false; tgt.len()];
                        for &(y, v) in c.row(x) {
                            r[pos[&y]] = !v.is_zero();
                        }
                        r
                    })
                    .collect();
                vec![BigInt::one(); rank_mod2(&m)]
            }
            RingKind::Integers => {
                let m: Vec<Vec<BigInt>> = src
                    .iter()
                    .map(|&x| {
                        let mut r = vec![BigInt::zero(); tgt.len()];
                        for &(y, v) in c.row(x) {
                            r[pos[&y]] = v.to_bigint();
                        }
                        r
                    })
                    .collect();
                invariant_factors(m)
            }
        };
        out_factors.insert(*g, factors);
    }
    let mut groups = GradedGroups::new();
    for (g, src) in &by_grading {
        let out_rank = out_factors.get(g).map_or(0, |f| f.len());
        let into = out_factors.get(&Grading::new(g.alexander2, g.maslov + 1));
        let in_rank = into.map_or(0, |f| f.len());
        let torsion: Vec<u64> = into
            .map(|f| f.iter().filter(|d| !d.is_one()).map(|d| d.to_u64().expect("torsion fits in u64")).collect())
            .unwrap_or_default();
        let grp = Group { rank: (src.len() - out_rank - in_rank) as u64, torsion };
        if !grp.is_zero() {
            groups.insert((g.alexander2, g.maslov), grp);
        }
    }
    Ok(HomologyResult { ring: R::KIND, groups })
}

/// HFK-hat with derived invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFKTable {
    pub ring: RingKind,
    pub groups: GradedGroups,
    pub genus: i32,
    pub fibered: bool,
    pub torsion_free: bool,
}

impl HFKTable {
    pub fn from_groups(ring: RingKind, groups: GradedGroups) -> Result<Self, TableError> {
        let (genus, fibered, torsion_free) = invariants(&groups)?;
        Ok(HFKTable { ring, groups, genus, fibered, torsion_free })
    }

    pub fn total_rank(&self) -> u64 {
        self.groups.values().map(|g| g.rank).sum()
    }
}

/// (genus, fibered, torsion_free) of an HFK-hat table.
pub fn invariants(groups: &GradedGroups) -> Result<(i32, bool, bool), TableError> {
    let top = groups.keys().map(|k| k.0).max().ok_or(TableError::Empty)?;
    let at_top: Vec<&Group> = groups.iter().filter(|(k, _)| k.0 == top).map(|(_, g)| g).collect();
    let fibered = at_top.iter().map(|g| g.rank).sum::<u64>() == 1 && at_top.iter().all(|g| g.torsion.is_empty());
    let torsion_free = groups.values().all(|g| g.torsion.is_empty());
    Ok((top.div_euclid(2), fibered, torsion_free))
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Multiplicity vectors: free rank under key 0, torsion factor d under key d.
fn multiplicities(groups: &GradedGroups) -> BTreeMap<(i32, i32), BTreeMap<u64, i64>> {
    groups
        .iter()
        .map(|(k, g)| {
            let mut m = BTreeMap::new();
            if g.rank > 0 {
                m.insert(0, g.rank as i64);
            }
            for &d in &g.torsion {
                *m.entry(d).or_insert(0) += 1;
            }
            (*k, m)
        })
        .collect()
}

fn from_multiplicities(m: &BTreeMap<(i32, i32), BTreeMap<u64, i64>>) -> GradedGroups {
    let mut out = GradedGroups::new();
    for (k, mult) in m {
        let mut g = Group::default();
        for (&d, &c) in mult {
            if d == 0 {
                g.rank = c as u64;
            } else {
                g.torsion.extend(std::iter::repeat_n(d, c as usize));
            }
        }
        g.torsion.sort();
        if !g.is_zero() {
            out.insert(*k, g);
        }
    }
    out
}

/// H ⊗ V^(n−1) on multiplicity vectors.
fn convolve(
    hfk: &BTreeMap<(i32, i32), BTreeMap<u64, i64>>,
    n: usize,
) -> BTreeMap<(i32, i32), BTreeMap<u64, i64>> {
    let mut h: BTreeMap<(i32, i32), BTreeMap<u64, i64>> = BTreeMap::new();
    for (&(a, m), mult) in hfk {
        for k in 0..n as i32 {
            let b = binomial(n as u64 - 1, k as u64);
            let e = h.entry((a - 2 * k, m - k)).or_default();
            for (&d, &c) in mult {
                *e.entry(d).or_insert(0) += b * c;
            }
        }
    }
    h.retain(|_, v| {
        v.retain(|_, c| *c != 0);
        !v.is_empty()
    });
    h
}

/// Recovers HFK-hat from H = HFK-hat ⊗ V^(n−1), top Alexander grading first.
pub fn deconvolve_v(h: &HomologyResult, n: usize) -> Result<HFKTable, TableError> {
    let hm = multiplicities(&h.groups);
    let mut hfk: BTreeMap<(i32, i32), BTreeMap<u64, i64>> = BTreeMap::new();
    let mut keys: Vec<(i32, i32)> = hm.keys().copied().collect();
    keys.sort_by(|a, b| b.cmp(a));
    for (a, m) in keys {
        let mut mult = hm[&(a, m)].clone();
        for k in 1..n as i32 {
            if let Some(up) = hfk.get(&(a + 2 * k, m + k)) {
                let b = binomial(n as u64 - 1, k as u64);
                for (&d, &c) in up {
                    *mult.entry(d).or_insert(0) -= b * c;
                }
            }
        }
        if let Some((d, c)) = mult.iter().find(|(_, &c)| c < 0) {
            return Err(TableError::InconsistentTensor(format!(
                "multiplicity {c} for factor {d} at ({a}/2, {m})"
            )));
        }
        mult.retain(|_, c| *c > 0);
        if !mult.is_empty() {
            hfk.insert((a, m), mult);
        }
    }
    if convolve(&hfk, n) != hm {
        return Err(TableError::InconsistentTensor("re-convolution differs".into()));
    }
    HFKTable::from_groups(h.ring, from_multiplicities(&hfk))
}

/// Like [`deconvolve_v`] when the Alexander gradings in `skipped` were never
/// computed; `range` is the Alexander range (doubled) of the whole complex.
pub fn reconstruct_skipped(
    h: &HomologyResult,
    skipped: &BTreeSet<i32>,
    n: usize,
    range: (i32, i32),
) -> Result<HFKTable, TableError> {
    if skipped.len() > n - 1 {
        return Err(TableError::UnderdeterminedSkip(format!(
            "{} gradings skipped, at most {} allowed",
            skipped.len(),
            n - 1
        )));
    }
    if skipped.is_empty() {
        return deconvolve_v(h, n);
    }
    let (lo, hi) = range;
    let unknowns: Vec<i32> = (lo + 2 * (n as i32 - 1)..=hi).step_by(2).collect();
    let equations: Vec<i32> = (lo..=hi).step_by(2).filter(|a| !skipped.contains(a)).collect();
    type Q = Ratio<i64>;
    let col: BTreeMap<i32, usize> = unknowns.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let rows: Vec<Vec<(usize, Q)>> = equations
        .iter()
        .map(|&a| {
            (0..n as i32)
                .filter_map(|k| col.get(&(a + 2 * k)).map(|&j| (j, Q::from_integer(binomial(n as u64 - 1, k as u64)))))
                .collect()
        })
        .collect();
    let el = eliminate(&rows, unknowns.len());
    if !el.is_unique() {
        return Err(TableError::UnderdeterminedSkip("singular reconstruction system".into()));
    }
    let hm = multiplicities(&h.groups);
    // diagonal lines d = 2m − a are independent
    let lines: BTreeSet<i32> = hm.keys().map(|&(a, m)| 2 * m - a).collect();
    let factors: BTreeSet<u64> = hm.values().flat_map(|v| v.keys().copied()).collect();
    let mut hfk: BTreeMap<(i32, i32), BTreeMap<u64, i64>> = BTreeMap::new();
    for &d in &lines {
        for &f in &factors {
            let rhs: Vec<(usize, Q)> = equations
                .iter()
                .enumerate()
                .filter_map(|(e, &a)| {
                    let m = (d + a).div_euclid(2);
                    let v = hm.get(&(a, m)).and_then(|x| x.get(&f)).copied().unwrap_or(0);
                    (v != 0 && (d + a) % 2 == 0).then(|| (e, Q::from_integer(v)))
                })
                .collect();
            if rhs.is_empty() {
                continue;
            }
            let sol = el
                .solve(&rhs)
                .ok_or_else(|| TableError::InconsistentTensor("reconstruction system inconsistent".into()))?;
            for (j, v) in sol.into_iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if !v.is_integer() || v < Q::zero() {
                    return Err(TableError::InconsistentTensor(format!("non-integral multiplicity {v}")));
                }
                let a = unknowns[j];
                hfk.entry((a, (d + a).div_euclid(2))).or_default().insert(f, v.to_integer());
            }
        }
    }
    // the computed gradings must be reproduced exactly
    let back = convolve(&hfk, n);
    let keep = |k: &(i32, i32)| !skipped.contains(&k.0);
    let lhs: BTreeMap<_, _> = back.iter().filter(|(k, _)| keep(k)).collect();
    let rhs: BTreeMap<_, _> = hm.iter().filter(|(k, _)| keep(k)).collect();
    if lhs != rhs {
        return Err(TableError::InconsistentTensor("reconstruction does not reproduce H".into()));
    }
    HFKTable::from_groups(h.ring, from_multiplicities(&hfk))
}

/// Universal coefficients: dim H(C⊗F2) at (a,m) = free(a,m) + t2(a,m) + t2(a,m−1),
/// t2 counting even torsion factors.
pub fn universal_coefficients_hold(z: &GradedGroups, f2: &GradedGroups) -> bool {
    let even = |k: &(i32, i32)| z.get(k).map_or(0, |g| g.torsion.iter().filter(|d| *d % 2 == 0).count() as u64);
    let keys: BTreeSet<(i32, i32)> = z.keys().chain(f2.keys()).copied().collect();
    keys.iter().all(|&(a, m)| {
        let expect = z.get(&(a, m)).map_or(0, |g| g.rank) + even(&(a, m)) + even(&(a, m - 1));
        f2.get(&(a, m)).map_or(0, |g| g.rank) == expect
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(entries: &[((i32, i32), u64)]) -> HomologyResult {
        HomologyResult {
            ring: RingKind::Integers,
            groups: entries.iter().map(|&(k, r)| (k, Group { rank: r, torsion: vec![] })).collect(),
        }
    }

    #[test]
    fn homology_of_two_by_one() {
        let mut c: SparseComplex<i64> = SparseComplex::new(vec![Grading::new(0, 1), Grading::new(0, 0)]);
        c.set_row(0, [(1, 2)]);
        let h = homology(&c).unwrap();
        assert_eq!(h.groups.len(), 1);
        assert_eq!(h.groups[&(0, 0)], Group { rank: 0, torsion: vec![2] });
        let z: SparseComplex<crate::ring::F2> = c.map_ring(crate::ring::F2::from_i64);
        let h2 = homology(&z).unwrap();
        assert_eq!(h2.total_rank(), 2);
        assert!(universal_coefficients_hold(&h.groups, &h2.groups));
    }

    #[test]
    fn deconvolve_unknot() {
        let h = free(&[((0, 0), 1), ((-2, -1), 3), ((-4, -2), 3), ((-6, -3), 1)]);
        let t = deconvolve_v(&h, 4).unwrap();
        assert_eq!(t.groups.len(), 1);
        assert_eq!(t.groups[&(0, 0)].rank, 1);
        assert_eq!((t.genus, t.fibered, t.torsion_free), (0, true, true));
        assert_eq!(deconvolve_v(&free(&[((0, 0), 1), ((-2, -1), 1)]), 2).unwrap().groups.len(), 1);
    }

    #[test]
    fn deconvolve_rejects_non_tensor() {
        assert!(deconvolve_v(&free(&[((0, 0), 1)]), 2).is_err());
    }

    #[test]
    fn reconstruct_matches() {
        // trefoil ⊗ V^4
        let hfk = free(&[((2, 0), 1), ((0, -1), 1), ((-2, -2), 1)]);
        let full = HomologyResult { ring: RingKind::Integers, groups: from_multiplicities(&convolve(&multiplicities(&hfk.groups), 5)) };
        let expect = deconvolve_v(&full, 5).unwrap();
        let lo = full.groups.keys().map(|k| k.0).min().unwrap();
        let hi = full.groups.keys().map(|k| k.0).max().unwrap();
        for skip in [vec![2, 0, -2, -4], vec![-10, -8, -6, -4], vec![2, -2, -6, -10]] {
            let skipped: BTreeSet<i32> = skip.into_iter().collect();
            let mut part = full.clone();
            part.groups.retain(|k, _| !skipped.contains(&k.0));
            assert_eq!(reconstruct_skipped(&part, &skipped, 5, (lo, hi)).unwrap(), expect);
        }
        let too_many: BTreeSet<i32> = [0, -2, -4, -6, -8].into_iter().collect();
        assert!(matches!(
            reconstruct_skipped(&full, &too_many, 5, (lo, hi)),
            Err(TableError::UnderdeterminedSkip(_))
        ));
    }
}
