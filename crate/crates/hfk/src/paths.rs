//! The short differential by lazy expansion of the cancellation recursion
//! over the long complex, without building the long complex.
//!
//! For a short generator x, ∂_short(x) sums ∂(x̃, z)·e(z) over the long row of
//! its lift x̃, where e(z) is z itself for a surviving z, 0 when z is the upper
//! member of a cancelled pair, and −∂(a,z)⁻¹·Σ_{w≠z} ∂(a,w)·e(w) when z is the
//! lower member, a its partner.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::domains::DomainSolver;
use crate::oval_complex::{LongBoundary, OvalGenerators};
use crate::ovals::OvalConfig;
use crate::reduce::Deaths;
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("cancellation pairs form a cycle through generator {0}")]
    Cycle(u64),
    #[error("matched entry {0} -> {1} is not a unit")]
    NonUnit(u64, u64),
    #[error("nonzero entry {0} -> {1} has no domain")]
    MissingDomain(u64, u64),
}

type Row<R> = Vec<(u64, R)>;

pub struct PathCounter<'a, R: Ring> {
    lb: &'a LongBoundary<'a>,
    long: &'a OvalConfig,
    short: &'a OvalConfig,
    short_gens: &'a OvalGenerators,
    deaths: &'a Deaths,
    memo: HashMap<u64, Row<R>>,
    active: HashSet<u64>,
}

fn add_scaled<R: Ring>(acc: &mut BTreeMap<u64, R>, row: &[(u64, R)], f: R) {
    for &(y, v) in row {
        let e = acc.entry(y).or_insert_with(R::zero);
        *e = *e + f * v;
    }
}

impl<'a, R: Ring> PathCounter<'a, R> {
    pub fn new(
        lb: &'a LongBoundary<'a>,
        long: &'a OvalConfig,
        short: &'a OvalConfig,
        short_gens: &'a OvalGenerators,
        deaths: &'a Deaths,
    ) -> Self {
        PathCounter { lb, long, short, short_gens, deaths, memo: HashMap::new(), active: HashSet::new() }
    }

    fn long_row(&self, id: u64) -> Vec<(u64, R)> {
        let mut acc: BTreeMap<u64, R> = BTreeMap::new();
        for (y, s) in self.lb.row(id) {
            let e = acc.entry(y).or_insert_with(R::zero);
            *e = *e + R::from_i64(s);
        }
        acc.into_iter().filter(|e| !e.1.is_zero()).collect()
    }

    /// e(z) as a combination of short generators.
    fn expand(&mut self, z: u64) -> Result<Row<R>, PathError> {
        if let Some(r) = self.memo.get(&z) {
            return Ok(r.clone());
        }
        let gens = self.lb.gens();
        let (_, pts) = gens.points_of(self.long, z);
        let out = match self.deaths.partner(self.long, gens, &pts) {
            None => {
                let s = self.deaths.short_id(self.short, self.short_gens, &pts).expect("survivor is short");
                vec![(s, R::one())]
            }
            Some(p) if p.upper => Vec::new(),
            Some(p) => {
                if !self.active.insert(z) {
                    return Err(PathError::Cycle(z));
                }
                let a = p.other;
                let row = self.long_row(a);
                let pivot = row.iter().find(|e| e.0 == z).map(|e| e.1).unwrap_or_else(R::zero);
                let inv = pivot.inverse().ok_or(PathError::NonUnit(a, z))?;
                let mut acc: BTreeMap<u64, R> = BTreeMap::new();
                for (w, v) in row {
                    if w != z {
                        let e = self.expand(w)?;
                        add_scaled(&mut acc, &e, -(inv * v));
                    }
                }
                self.active.remove(&z);
                acc.into_iter().filter(|e| !e.1.is_zero()).collect()
            }
        };
        self.memo.insert(z, out.clone());
        Ok(out)
    }

    /// Row of ∂_short at short generator `x`, keeping only targets reachable
    /// by a domain; a discarded nonzero entry is an error.
    pub fn row(&mut self, x: u64, domains: Option<&DomainSolver>) -> Result<Row<R>, PathError> {
        let (_, spts) = self.short_gens.points_of(self.short, x);
        let lift = self.lb.gens().id_of(self.long, &self.deaths.long_points(&spts)).expect("lift is a generator");
        let mut acc: BTreeMap<u64, R> = BTreeMap::new();
        for (z, c) in self.long_row(lift) {
            let e = self.expand(z)?;
            add_scaled(&mut acc, &e, c);
        }
        let mut out = Vec::new();
        for (y, v) in acc {
            if v.is_zero() {
                continue;
            }
            if let Some(d) = domains {
                let (_, ypts) = self.short_gens.points_of(self.short, y);
                if d.find_domain(&spts, &ypts).is_none() {
                    return Err(PathError::MissingDomain(x, y));
                }
            }
            out.push((y, v));
        }
        Ok(out)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}
