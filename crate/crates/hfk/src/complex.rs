//! Sparse bigraded chain complexes and homotopy reduction by pair cancellation.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ring::{Ring, RingKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("boundary squares to a nonzero map ({0} bad entries)")]
    BoundarySquareNonzero(usize),
    #[error("entry {0} -> {1} does not respect the bigrading")]
    GradingMismatch(u32, u32),
    #[error("pivot entry {0} -> {1} is not a unit")]
    NonUnitPivot(u32, u32),
    #[error("coefficient overflow during cancellation")]
    Overflow,
}

/// Alexander grading (doubled, so half-integers stay exact) and Maslov grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grading {
    pub alexander2: i32,
    pub maslov: i32,
}

impl Grading {
    pub fn new(alexander2: i32, maslov: i32) -> Self {
        Grading { alexander2, maslov }
    }
}

/// Free complex with basis `0..len`; `rows[x]` lists `∂x` sorted by target.
#[derive(Clone, Debug)]
pub struct SparseComplex<R: Ring> {
    gradings: Vec<Grading>,
    rows: Vec<Vec<(u32, R)>>,
    alive: Vec<bool>,
    // sources hitting each target; may contain stale ids
    cols: Vec<Vec<u32>>,
}

fn add_into<R: Ring>(acc: &mut Vec<(u32, R)>, t: u32, c: R) {
    match acc.binary_search_by_key(&t, |e| e.0) {
        Ok(i) => {
            acc[i].1 = acc[i].1 + c;
            if acc[i].1.is_zero() {
                acc.remove(i);
            }
        }
        Err(i) => {
            if !c.is_zero() {
                acc.insert(i, (t, c));
            }
        }
    }
}

impl<R: Ring> SparseComplex<R> {
    pub fn new(gradings: Vec<Grading>) -> Self {
        let n = gradings.len();
        SparseComplex { gradings, rows: vec![Vec::new(); n], alive: vec![true; n], cols: vec![Vec::new(); n] }
    }

    pub fn ring(&self) -> RingKind {
        R::KIND
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn grading(&self, x: u32) -> Grading {
        self.gradings[x as usize]
    }

    pub fn is_alive(&self, x: u32) -> bool {
        self.alive[x as usize]
    }

    pub fn alive(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len() as u32).filter(|&x| self.alive[x as usize])
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn row(&self, x: u32) -> &[(u32, R)] {
        &self.rows[x as usize]
    }

    pub fn entry(&self, x: u32, y: u32) -> R {
        let r = &self.rows[x as usize];
        r.binary_search_by_key(&y, |e| e.0).map_or(R::zero(), |i| r[i].1)
    }

    /// Replaces `∂x`; duplicate targets are summed.
    pub fn set_row(&mut self, x: u32, entries: impl IntoIterator<Item = (u32, R)>) {
        let mut acc: Vec<(u32, R)> = Vec::new();
        for (t, c) in entries {
            add_into(&mut acc, t, c);
        }
        for &(t, _) in &acc {
            self.cols[t as usize].push(x);
        }
        self.rows[x as usize] = acc;
    }

    pub fn entry_count(&self) -> usize {
        self.alive().map(|x| self.rows[x as usize].len()).sum()
    }

    /// Checks that every entry lowers the Maslov grading by one and keeps the
    /// Alexander grading.
    pub fn check_gradings(&self) -> Result<(), ComplexError> {
        for x in self.alive() {
            let gx = self.grading(x);
            for &(y, _) in self.row(x) {
                let gy = self.grading(y);
                if gy.alexander2 != gx.alexander2 || gy.maslov != gx.maslov - 1 {
                    return Err(ComplexError::GradingMismatch(x, y));
                }
            }
        }
        Ok(())
    }

    /// Number of nonzero entries of ∂∘∂ (computed with overflow checks).
    pub fn square_defects(&self) -> usize {
        let mut bad = 0;
        for x in self.alive() {
            let mut acc: BTreeMap<u32, R> = BTreeMap::new();
            for &(y, c) in self.row(x) {
                for &(z, d) in self.row(y) {
                    let e = acc.entry(z).or_insert_with(R::zero);
                    *e = e.checked_mul_add(c, d).expect("overflow in ∂² check");
                }
            }
            bad += acc.values().filter(|v| !v.is_zero()).count();
        }
        bad
    }

    pub fn check_square_zero(&self) -> Result<(), ComplexError> {
        match self.square_defects() {
            0 => Ok(()),
            k => Err(ComplexError::BoundarySquareNonzero(k)),
        }
    }

    /// Cancels the pair `a → b`: removes both and reroutes every zigzag
    /// `x → b ← a → y` into `x → y` with coefficient `−∂(x,b)·∂(a,b)⁻¹·∂(a,y)`.
    pub fn cancel_pair(&mut self, a: u32, b: u32) -> Result<(), ComplexError> {
        let inv = self.entry(a, b).inverse().ok_or(ComplexError::NonUnitPivot(a, b))?;
        let row_a: Vec<(u32, R)> = self.rows[a as usize].iter().filter(|e| e.0 != b).copied().collect();
        let mut sources = std::mem::take(&mut self.cols[b as usize]);
        sources.sort_unstable();
        sources.dedup();
        for &x in &sources {
            if x == a || !self.alive[x as usize] {
                continue;
            }
            let u = self.entry(x, b);
            if u.is_zero() {
                continue;
            }
            let f = -(u * inv);
            let old = std::mem::take(&mut self.rows[x as usize]);
            let mut merged = Vec::with_capacity(old.len() + row_a.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < row_a.len() {
                let take_old = j >= row_a.len() || (i < old.len() && old[i].0 < row_a[j].0);
                let take_new = i >= old.len() || (j < row_a.len() && row_a[j].0 < old[i].0);
                if take_old {
                    if old[i].0 != b {
                        merged.push(old[i]);
                    }
                    i += 1;
                } else if take_new {
                    let (y, v) = row_a[j];
                    let c = R::zero().checked_mul_add(f, v).ok_or(ComplexError::Overflow)?;
                    if !c.is_zero() {
                        merged.push((y, c));
                        self.cols[y as usize].push(x);
                    }
                    j += 1;
                } else {
                    let (y, v) = row_a[j];
                    let c = old[i].1.checked_mul_add(f, v).ok_or(ComplexError::Overflow)?;
                    if !c.is_zero() {
                        merged.push((y, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
            self.rows[x as usize] = merged;
        }
        for z in std::mem::take(&mut self.cols[a as usize]) {
            let r = &mut self.rows[z as usize];
            if let Ok(i) = r.binary_search_by_key(&a, |e| e.0) {
                r.remove(i);
            }
        }
        for id in [a, b] {
            self.alive[id as usize] = false;
            self.rows[id as usize] = Vec::new();
        }
        Ok(())
    }

    /// Greedily cancels unit entries until none remain.
    pub fn reduce_fast(&mut self) -> Result<(), ComplexError> {
        loop {
            let mut progress = false;
            for x in 0..self.len() as u32 {
                while self.alive[x as usize] {
                    let pick = self.rows[x as usize]
                        .iter()
                        .filter(|e| e.1.is_unit())
                        .min_by_key(|e| self.cols[e.0 as usize].len())
                        .map(|e| e.0);
                    match pick {
                        Some(y) => {
                            self.cancel_pair(x, y)?;
                            progress = true;
                        }
                        None => break,
                    }
                }
            }
            if !progress {
                return Ok(());
            }
        }
    }

    /// Live generators renumbered densely; returns the complex and the old ids.
    pub fn compact(&self) -> (SparseComplex<R>, Vec<u32>) {
        let old: Vec<u32> = self.alive().collect();
        let mut new_id = vec![u32::MAX; self.len()];
        for (i, &o) in old.iter().enumerate() {
            new_id[o as usize] = i as u32;
        }
        let mut c = SparseComplex::new(old.iter().map(|&o| self.gradings[o as usize]).collect());
        for (i, &o) in old.iter().enumerate() {
            c.set_row(i as u32, self.rows[o as usize].iter().map(|&(y, v)| (new_id[y as usize], v)));
        }
        (c, old)
    }

    /// Same complex with coefficients pushed through `f`.
    pub fn map_ring<S: Ring>(&self, f: impl Fn(R) -> S) -> SparseComplex<S> {
        let (c, _) = self.compact();
        let mut out = SparseComplex::new(c.gradings.clone());
        for x in 0..c.len() as u32 {
            out.set_row(x, c.row(x).iter().map(|&(y, v)| (y, f(v))));
        }
        out
    }

    /// Graded generator counts over live generators.
    pub fn counts(&self) -> BTreeMap<Grading, usize> {
        let mut m = BTreeMap::new();
        for x in self.alive() {
            *m.entry(self.grading(x)).or_insert(0) += 1;
        }
        m
    }
}
