//! End-to-end computation: grid → complex slices → homology → HFK-hat.

use std::collections::{BTreeMap, BTreeSet};

use log::{debug, info, warn};
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::build_arrangement;
use crate::braid::BraidError;
use crate::complex::{ComplexError, Grading, SparseComplex};
use crate::domains::DomainSolver;
use crate::grid::{GridDiagram, GridError};
use crate::homology::{deconvolve_v, homology, reconstruct_skipped, GradedGroups, HFKTable, HomologyResult, TableError};
use crate::laurent::LaurentPoly;
use crate::mos::{mos_complex_on, mos_generators, MosGenerators};
use crate::oval_complex::{enumerate_high_alexander, long_boundary, LongBoundary, OvalGenerators};
use crate::ovals::{build_long_config, build_short_config, select_best_config, OvalConfig, OvalError, Schedule};
use crate::paths::{PathCounter, PathError};
use crate::reduce::{reduce_faithful, Deaths, ReduceError, Strategy};
use crate::ring::{Ring, RingKind, F2};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Oval(#[from] OvalError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Paths(#[from] PathError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("Euler characteristic {found} is not a unit multiple of {expected}")]
    EulerMismatch { found: LaurentPoly, expected: LaurentPoly },
    #[error("crosscheck failed: {0}")]
    Crosscheck(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Mos,
    Oval(Strategy),
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Mos => "mos",
            Pipeline::Oval(Strategy::Faithful) => "oval-faithful",
            Pipeline::Oval(Strategy::Fast) => "oval-fast",
            Pipeline::Oval(Strategy::Paths) => "oval-paths",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkipPolicy {
    Auto,
    None,
}

/// The n−1 gradings with the most generators (ties: lower grading first).
pub fn auto_skip(counts: &BTreeMap<i32, u64>, n: usize) -> BTreeSet<i32> {
    let mut v: Vec<(i32, u64)> = counts.iter().map(|(&a, &c)| (a, c)).collect();
    v.sort_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    v.into_iter().take(n - 1).map(|e| e.0).collect()
}

/// Graded Euler characteristic Σ (−1)^M t^A of a complex with these counts.
pub fn euler_characteristic(counts: &BTreeMap<Grading, u64>) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for (g, &c) in counts {
        debug_assert!(g.alexander2 % 2 == 0, "knot gradings are integral");
        let s = if g.maslov.rem_euclid(2) == 0 { 1 } else { -1 };
        p.add_term(s * c as i64, g.alexander2.div_euclid(2));
    }
    p
}

/// Checks χ = Δ(t)·(1 − t⁻¹)^(n−1) up to ±t^s.
pub fn check_euler(g: &GridDiagram, counts: &BTreeMap<Grading, u64>) -> Result<(), RunError> {
    let delta = g.alexander_oracle()?;
    let f = LaurentPoly::from_terms([(1, 0), (-1, -1)]).pow(g.n() as u32 - 1);
    let expected = &delta * &f;
    let found = euler_characteristic(counts);
    if found.is_unit_multiple_of(&expected) {
        Ok(())
    } else {
        Err(RunError::EulerMismatch { found, expected })
    }
}

/// Homology of the complexes in the chosen slices, merged.
fn merge(parts: Vec<GradedGroups>, ring: RingKind) -> HomologyResult {
    let mut groups = GradedGroups::new();
    for p in parts {
        groups.extend(p);
    }
    HomologyResult { ring, groups }
}

/// Computes every slice except the skipped ones and rebuilds HFK-hat,
/// falling back to the skipped slices when the reconstruction fails.
fn assemble<R: Ring>(
    n: usize,
    counts: &BTreeMap<i32, u64>,
    skip: SkipPolicy,
    compute: &(dyn Fn(i32) -> Result<GradedGroups, RunError> + Sync),
) -> Result<HFKTable, RunError> {
    let skipped = match skip {
        SkipPolicy::Auto => auto_skip(counts, n),
        SkipPolicy::None => BTreeSet::new(),
    };
    let todo: Vec<i32> = counts.keys().copied().filter(|a| !skipped.contains(a)).collect();
    let parts: Vec<GradedGroups> = todo.par_iter().map(|&a| compute(a)).collect::<Result<_, _>>()?;
    let h = merge(parts, R::KIND);
    if skipped.is_empty() {
        return Ok(deconvolve_v(&h, n)?);
    }
    let range = (*counts.keys().next().unwrap(), *counts.keys().last().unwrap());
    match reconstruct_skipped(&h, &skipped, n, range) {
        Ok(t) => Ok(t),
        Err(e) => {
            warn!("skip reconstruction failed ({e}); computing the skipped gradings");
            let rest: Vec<GradedGroups> =
                skipped.par_iter().map(|&a| compute(a)).collect::<Result<_, _>>()?;
            let mut all = h.groups;
            for p in rest {
                all.extend(p);
            }
            Ok(deconvolve_v(&HomologyResult { ring: R::KIND, groups: all }, n)?)
        }
    }
}

/// MOS slices: generator ids per doubled Alexander grading.
fn mos_slices(gens: &MosGenerators) -> BTreeMap<i32, Vec<u32>> {
    let mut out: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
    for (i, g) in gens.gradings.iter().enumerate() {
        out.entry(g.alexander2).or_default().push(i as u32);
    }
    out
}

fn mos_slice_homology<R: Ring>(g: &GridDiagram, gens: &MosGenerators, ids: &[u32]) -> Result<GradedGroups, RunError> {
    let c: SparseComplex<R> = mos_complex_on(g, gens, ids);
    c.check_gradings()?;
    c.check_square_zero()?;
    Ok(homology(&c)?.groups)
}

pub fn mos_graded_counts(gens: &MosGenerators) -> BTreeMap<Grading, u64> {
    let mut m = BTreeMap::new();
    for g in &gens.gradings {
        *m.entry(*g).or_insert(0) += 1;
    }
    m
}

/// HFK-hat through the MOS complex.
pub fn compute_mos<R: Ring>(g: &GridDiagram, skip: SkipPolicy, euler: bool) -> Result<HFKTable, RunError> {
    let gens = mos_generators(g);
    if euler {
        check_euler(g, &mos_graded_counts(&gens))?;
    }
    let slices = mos_slices(&gens);
    let counts: BTreeMap<i32, u64> = slices.iter().map(|(&a, v)| (a, v.len() as u64)).collect();
    info!("mos: n = {}, {} generators, {} slices", g.n(), gens.perms.len(), slices.len());
    assemble::<R>(g.n(), &counts, skip, &|a| mos_slice_homology::<R>(g, &gens, &slices[&a]))
}

/// Top nonzero Alexander grading of H, which is the top grading of HFK-hat;
/// returns (genus, fibered).
pub fn genus_mos<R: Ring>(g: &GridDiagram) -> Result<(i32, bool), RunError> {
    let gens = mos_generators(g);
    let slices = mos_slices(&gens);
    for (&a, ids) in slices.iter().rev() {
        let h = mos_slice_homology::<R>(g, &gens, ids)?;
        if !h.is_empty() {
            return Ok(top_invariants(a, &h));
        }
    }
    Err(TableError::Empty.into())
}

fn top_invariants(a: i32, h: &GradedGroups) -> (i32, bool) {
    let rank: u64 = h.values().map(|g| g.rank).sum();
    let torsion = h.values().any(|g| !g.torsion.is_empty());
    (a.div_euclid(2), rank == 1 && !torsion)
}

/// Everything the oval pipeline needs about one grid.
pub struct OvalSetup {
    pub short: OvalConfig,
    pub long: OvalConfig,
    pub schedule: Schedule,
    pub short_gens: OvalGenerators,
    pub long_gens: OvalGenerators,
    pub deaths: Deaths,
}

impl OvalSetup {
    pub fn new(g: &GridDiagram) -> Result<Self, RunError> {
        Self::from_short(g, select_best_config(g))
    }

    /// Any cut and omission, not just the smallest one.
    pub fn with_config(g: &GridDiagram, cut: (usize, usize), omitted: (usize, usize)) -> Result<Self, RunError> {
        Self::from_short(g, build_short_config(g, cut, omitted.0, omitted.1)?)
    }

    fn from_short(g: &GridDiagram, short: OvalConfig) -> Result<Self, RunError> {
        let (long, schedule) = build_long_config(g, short.cut, short.omitted_col, short.omitted_row)?;
        let short_gens = OvalGenerators::new(&short);
        let long_gens = OvalGenerators::new(&long);
        let deaths = Deaths::new(&long, &schedule);
        info!(
            "ovals: cut {:?}, omitted ({}, {}), {} short / {} long points, {} short / {} long generators",
            short.cut,
            short.omitted_col,
            short.omitted_row,
            short.points.len(),
            long.points.len(),
            short_gens.len(),
            long_gens.len()
        );
        Ok(OvalSetup { short, long, schedule, short_gens, long_gens, deaths })
    }
}

/// Homology of one Alexander slice of the oval complex, given the long ids
/// (and, for the path strategy, the short ids) in that slice.
fn oval_slice_homology<R: Ring>(
    s: &OvalSetup,
    lb: &LongBoundary,
    domains: Option<&DomainSolver>,
    strategy: Strategy,
    long_ids: &[u64],
    short_ids: &[u64],
) -> Result<GradedGroups, RunError> {
    let fast = |ids: &[u64]| -> Result<GradedGroups, RunError> {
        let mut c: SparseComplex<R> = long_boundary(lb, ids);
        c.reduce_fast()?;
        Ok(homology(&c)?.groups)
    };
    match strategy {
        Strategy::Fast => fast(long_ids),
        Strategy::Faithful => {
            match reduce_faithful::<R>(lb, &s.long, &s.short, &s.short_gens, &s.deaths, long_ids) {
                Ok(sl) => {
                    sl.complex.check_square_zero()?;
                    Ok(homology(&sl.complex)?.groups)
                }
                Err(ReduceError::ScheduleAssertionFailed { time, a, b }) => {
                    warn!("schedule event {time} failed at {a} -> {b}; reducing greedily instead");
                    fast(long_ids)
                }
                Err(e) => Err(e.into()),
            }
        }
        Strategy::Paths => {
            let c: SparseComplex<R> = short_complex_via_paths(s, lb, domains, short_ids)?;
            c.check_gradings()?;
            c.check_square_zero()?;
            Ok(homology(&c)?.groups)
        }
    }
}

/// ∂_short on the short generators `ids` (sorted), row by row through paths.
pub fn short_complex_via_paths<R: Ring>(
    s: &OvalSetup,
    lb: &LongBoundary,
    domains: Option<&DomainSolver>,
    ids: &[u64],
) -> Result<SparseComplex<R>, RunError> {
    let gradings = ids
        .iter()
        .map(|&id| {
            let (proto, pts) = s.short_gens.points_of(&s.short, id);
            s.short_gens.grading_of(proto, &pts)
        })
        .collect();
    let mut c = SparseComplex::new(gradings);
    let mut pc = PathCounter::<R>::new(lb, &s.long, &s.short, &s.short_gens, &s.deaths);
    for (i, &x) in ids.iter().enumerate() {
        let row = pc.row(x, domains)?;
        let row: Vec<(u32, R)> = row
            .into_iter()
            .map(|(y, v)| (ids.binary_search(&y).expect("∂ keeps the Alexander grading") as u32, v))
            .collect();
        c.set_row(i as u32, row);
    }
    debug!("paths: {} rows, {} memoized expansions", ids.len(), pc.memo_len());
    Ok(c)
}

/// Above this many long generators only the short complex gets an Euler check.
pub const LONG_EULER_LIMIT: u64 = 4_000_000;

/// HFK-hat through the oval complexes.
pub fn compute_oval<R: Ring>(
    g: &GridDiagram,
    strategy: Strategy,
    skip: SkipPolicy,
    euler: bool,
) -> Result<HFKTable, RunError> {
    let s = OvalSetup::new(g)?;
    if euler {
        // cancellation keeps χ, so the short complex has to agree too
        check_euler(g, &s.short_gens.graded_counts(&s.short))?;
        if s.long_gens.len() <= LONG_EULER_LIMIT {
            check_euler(g, &s.long_gens.graded_counts(&s.long))?;
        }
    }
    let lb = LongBoundary::new(&s.long, &s.long_gens);
    let domains = (strategy == Strategy::Paths).then(|| DomainSolver::new(&build_arrangement(&s.short)));
    if let Some(d) = &domains {
        assert!(d.is_unique(), "domain system must have unique solutions");
    }
    let counts = if strategy == Strategy::Paths {
        s.short_gens.alexander_counts(&s.short)
    } else {
        s.long_gens.alexander_counts(&s.long)
    };
    let skipped = match skip {
        SkipPolicy::Auto => auto_skip(&counts, g.n()),
        SkipPolicy::None => BTreeSet::new(),
    };
    // generator lists are only built for the slices that get computed
    let long_slices = if strategy == Strategy::Paths {
        BTreeMap::new()
    } else {
        s.long_gens.slices(&s.long, &skipped)
    };
    let short_slices = if strategy == Strategy::Paths {
        s.short_gens.slices(&s.short, &BTreeSet::new())
    } else {
        BTreeMap::new()
    };
    let empty = Vec::new();
    let compute = |a: i32| -> Result<GradedGroups, RunError> {
        let long_ids: Vec<u64>;
        let long_ref = match long_slices.get(&a) {
            Some(v) => v,
            None if strategy != Strategy::Paths => {
                long_ids = s.long_gens.slices(&s.long, &BTreeSet::new()).remove(&a).unwrap_or_default();
                &long_ids
            }
            None => &empty,
        };
        let short_ref = short_slices.get(&a).unwrap_or(&empty);
        oval_slice_homology::<R>(&s, &lb, domains.as_ref(), strategy, long_ref, short_ref)
    };
    assemble::<R>(g.n(), &counts, skip, &compute)
}

/// Genus and fiberedness from the top Alexander slices of the oval complex;
/// the lower gradings are never enumerated.
pub fn genus_oval<R: Ring>(g: &GridDiagram, strategy: Strategy) -> Result<(i32, bool), RunError> {
    let s = OvalSetup::new(g)?;
    let lb = LongBoundary::new(&s.long, &s.long_gens);
    let domains = (strategy == Strategy::Paths).then(|| DomainSolver::new(&build_arrangement(&s.short)));
    let top = s.long_gens.max_alexander(&s.long).ok_or(TableError::Empty)?;
    let bottom = if strategy == Strategy::Paths {
        s.short_gens.alexander_counts(&s.short)
    } else {
        s.long_gens.alexander_counts(&s.long)
    };
    let bottom = bottom.keys().next().copied().unwrap_or(top);
    let mut a = top;
    while a >= bottom {
        let grade = |gens: &OvalGenerators, cfg: &OvalConfig| -> Vec<u64> {
            enumerate_high_alexander(cfg, gens, a - 1)
                .into_iter()
                .filter(|&id| {
                    let (proto, pts) = gens.points_of(cfg, id);
                    gens.grading_of(proto, &pts).alexander2 == a
                })
                .collect()
        };
        let long_ids = if strategy == Strategy::Paths { Vec::new() } else { grade(&s.long_gens, &s.long) };
        let short_ids = if strategy == Strategy::Paths { grade(&s.short_gens, &s.short) } else { Vec::new() };
        let h = oval_slice_homology::<R>(&s, &lb, domains.as_ref(), strategy, &long_ids, &short_ids)?;
        if !h.is_empty() {
            return Ok(top_invariants(a, &h));
        }
        a -= 2;
    }
    Err(TableError::Empty.into())
}

/// Universal coefficients between the integral and mod 2 tables.
pub fn universal_coefficients(g: &GridDiagram, pipeline: Pipeline) -> Result<bool, RunError> {
    let (z, f) = match pipeline {
        Pipeline::Mos => (
            compute_mos::<i64>(g, SkipPolicy::None, false)?,
            compute_mos::<F2>(g, SkipPolicy::None, false)?,
        ),
        Pipeline::Oval(st) => (
            compute_oval::<i64>(g, st, SkipPolicy::None, false)?,
            compute_oval::<F2>(g, st, SkipPolicy::None, false)?,
        ),
    };
    Ok(crate::homology::universal_coefficients_hold(&z.groups, &f.groups))
}

pub fn compute<R: Ring>(g: &GridDiagram, pipeline: Pipeline, skip: SkipPolicy, euler: bool) -> Result<HFKTable, RunError> {
    match pipeline {
        Pipeline::Mos => compute_mos::<R>(g, skip, euler),
        Pipeline::Oval(st) => compute_oval::<R>(g, st, skip, euler),
    }
}

pub fn genus<R: Ring>(g: &GridDiagram, pipeline: Pipeline) -> Result<(i32, bool), RunError> {
    match pipeline {
        Pipeline::Mos => genus_mos::<R>(g),
        Pipeline::Oval(st) => genus_oval::<R>(g, st),
    }
}
