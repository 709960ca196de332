//! Reduction of the long complex to the short one along the shortening
//! schedule, and the generic greedy reduction.

use thiserror::Error;

use crate::complex::{ComplexError, SparseComplex};
use crate::oval_complex::{long_boundary, LongBoundary, OvalGenerators};
use crate::ovals::{OvalConfig, Schedule};
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("schedule event {time}: matched entry {a} -> {b} is not a unit")]
    ScheduleAssertionFailed { time: usize, a: u64, b: u64 },
    #[error("survivor {0} is not a short generator")]
    NotShort(u64),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Faithful,
    Fast,
    Paths,
}

/// How each long point leaves: the event time, its partner and whether it is
/// the upper (larger Maslov) member of the pair; `None` for survivors.
#[derive(Clone, Debug)]
pub struct Deaths {
    pub point: Vec<Option<(usize, u32, bool)>>,
    /// long point → short point
    pub to_short: Vec<Option<u32>>,
    /// short point → long point
    pub to_long: Vec<u32>,
}

/// The pairing of long generators induced by the schedule: a generator is
/// cancelled at the first event killing one of its points, against the
/// generator with that point replaced by its partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Partner {
    pub time: usize,
    pub other: u64,
    /// true when this generator is the source of the cancelled entry
    pub upper: bool,
}

impl Deaths {
    pub fn new(long: &OvalConfig, sched: &Schedule) -> Self {
        let mut point = vec![None; long.points.len()];
        for e in &sched.events {
            point[e.p1 as usize] = Some((e.time, e.p2, true));
            point[e.p2 as usize] = Some((e.time, e.p1, false));
        }
        let mut to_short = vec![None; long.points.len()];
        let mut to_long = vec![0; sched.survivors.len()];
        for &(s, l) in &sched.survivors {
            to_short[l as usize] = Some(s);
            to_long[s as usize] = l;
        }
        Deaths { point, to_short, to_long }
    }

    pub fn partner(&self, long: &OvalConfig, gens: &OvalGenerators, pts: &[u32]) -> Option<Partner> {
        let (v, (time, q, upper)) = pts
            .iter()
            .enumerate()
            .filter_map(|(v, &p)| self.point[p as usize].map(|d| (v, d)))
            .min_by_key(|(_, d)| d.0)?;
        let mut other = pts.to_vec();
        other[v] = q;
        Some(Partner { time, other: gens.id_of(long, &other).expect("partner is a generator"), upper })
    }

    /// Short generator with the same points, for a surviving long generator.
    pub fn short_id(&self, short: &OvalConfig, short_gens: &OvalGenerators, pts: &[u32]) -> Option<u64> {
        let sp: Option<Vec<u32>> = pts.iter().map(|&p| self.to_short[p as usize]).collect();
        short_gens.id_of(short, &sp?)
    }

    pub fn long_points(&self, short_pts: &[u32]) -> Vec<u32> {
        short_pts.iter().map(|&p| self.to_long[p as usize]).collect()
    }
}

/// A slice of the short complex: generators are `ids` in the short numbering.
#[derive(Clone, Debug)]
pub struct ShortSlice<R: Ring> {
    pub ids: Vec<u64>,
    pub complex: SparseComplex<R>,
}

/// Cancels the schedule's pairs event by event in the long complex on `ids`
/// (one Alexander slice), asserting every matched entry is a unit.
pub fn reduce_faithful<R: Ring>(
    lb: &LongBoundary,
    long: &OvalConfig,
    short: &OvalConfig,
    short_gens: &OvalGenerators,
    deaths: &Deaths,
    ids: &[u64],
) -> Result<ShortSlice<R>, ReduceError> {
    let gens = lb.gens();
    let mut c: SparseComplex<R> = long_boundary(lb, ids);
    let mut pairs = Vec::new();
    for (i, &id) in ids.iter().enumerate() {
        let (_, pts) = gens.points_of(long, id);
        if let Some(p) = deaths.partner(long, gens, &pts) {
            if p.upper {
                let j = ids.binary_search(&p.other).expect("partner in the same slice");
                pairs.push((p.time, i as u32, j as u32));
            }
        }
    }
    pairs.sort_unstable();
    for &(time, a, b) in &pairs {
        if !c.entry(a, b).is_unit() {
            return Err(ReduceError::ScheduleAssertionFailed { time, a: ids[a as usize], b: ids[b as usize] });
        }
        c.cancel_pair(a, b)?;
    }
    let (reduced, old) = c.compact();
    let mut short_ids = Vec::with_capacity(old.len());
    for &o in &old {
        let (_, pts) = gens.points_of(long, ids[o as usize]);
        short_ids.push(deaths.short_id(short, short_gens, &pts).ok_or(ReduceError::NotShort(ids[o as usize]))?);
    }
    // renumber in short-id order
    let mut order: Vec<usize> = (0..short_ids.len()).collect();
    order.sort_by_key(|&i| short_ids[i]);
    let mut pos = vec![0u32; order.len()];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k as u32;
    }
    let mut out = SparseComplex::new(order.iter().map(|&i| reduced.grading(i as u32)).collect());
    for (k, &i) in order.iter().enumerate() {
        out.set_row(k as u32, reduced.row(i as u32).iter().map(|&(y, v)| (pos[y as usize], v)));
    }
    Ok(ShortSlice { ids: order.iter().map(|&i| short_ids[i]).collect(), complex: out })
}

/// Long slice reduced greedily along unit entries.
pub fn reduce_fast<R: Ring>(lb: &LongBoundary, ids: &[u64]) -> Result<SparseComplex<R>, ReduceError> {
    let mut c: SparseComplex<R> = long_boundary(lb, ids);
    c.reduce_fast()?;
    Ok(c.compact().0)
}
