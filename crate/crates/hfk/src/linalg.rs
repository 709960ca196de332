//! Exact linear algebra: sparse elimination over a field and Smith normal form over Z.

use std::collections::BTreeMap;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Anything we can run Gauss-Jordan elimination over.
pub trait Field:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Result of eliminating a system `A u = b` with `b` left symbolic.
///
/// `solution[j]` expresses the unknown `u_j` as a combination of the right hand
/// sides (only meaningful for pivot columns); `consistency` lists the left
/// kernel of `A`, each row giving a condition `Σ k_e b_e = 0`.
#[derive(Clone, Debug)]
pub struct Elimination<F> {
    pub ncols: usize,
    pub rank: usize,
    pub pivot_of_col: Vec<Option<usize>>,
    pub solution: Vec<Vec<(usize, F)>>,
    pub consistency: Vec<Vec<(usize, F)>>,
}

impl<F: Field> Elimination<F> {
    pub fn is_unique(&self) -> bool {
        self.rank == self.ncols
    }

    /// Solves for a concrete right hand side given sparsely as `(equation, value)`.
    /// Returns `None` if the system is inconsistent or underdetermined.
    pub fn solve(&self, rhs: &[(usize, F)]) -> Option<Vec<F>> {
        if !self.is_unique() {
            return None;
        }
        let b: BTreeMap<usize, F> = rhs.iter().cloned().collect();
        let dot = |row: &Vec<(usize, F)>| {
            row.iter().fold(F::zero(), |acc, (e, k)| match b.get(e) {
                Some(v) => acc + k.clone() * v.clone(),
                None => acc,
            })
        };
        if self.consistency.iter().any(|k| !dot(k).is_zero()) {
            return None;
        }
        Some(self.solution.iter().map(dot).collect())
    }
}

/// Gauss-Jordan elimination of the sparse matrix whose rows are `rows`
/// (equations) over `ncols` unknowns.
pub fn eliminate<F: Field>(rows: &[Vec<(usize, F)>], ncols: usize) -> Elimination<F> {
    let neq = rows.len();
    // columns >= ncols track the row operations
    let mut work: Vec<BTreeMap<usize, F>> = rows
        .iter()
        .enumerate()
        .map(|(e, r)| {
            let mut m = BTreeMap::new();
            for (c, v) in r {
                let s = m.remove(c).unwrap_or_else(F::zero) + v.clone();
                if !s.is_zero() {
                    m.insert(*c, s);
                }
            }
            m.insert(ncols + e, F::one());
            m
        })
        .collect();

    let mut used = vec![false; neq];
    let mut pivot_of_col = vec![None; ncols];
    let mut rank = 0;
    for j in 0..ncols {
        let pick = (0..neq)
            .filter(|&i| !used[i] && work[i].contains_key(&j))
            .min_by_key(|&i| work[i].len());
        let Some(p) = pick else { continue };
        used[p] = true;
        pivot_of_col[j] = Some(p);
        rank += 1;
        let inv = F::one() / work[p][&j].clone();
        let prow: Vec<(usize, F)> = work[p]
            .iter()
            .map(|(c, v)| (*c, v.clone() * inv.clone()))
            .collect();
        work[p] = prow.iter().cloned().collect();
        for i in 0..neq {
            if i == p {
                continue;
            }
            let Some(f) = work[i].get(&j).cloned() else { continue };
            let row = &mut work[i];
            for (c, v) in &prow {
                let s = row.remove(c).unwrap_or_else(F::zero) - f.clone() * v.clone();
                if !s.is_zero() {
                    row.insert(*c, s);
                }
            }
        }
    }

    let tracked = |row: &BTreeMap<usize, F>| -> Vec<(usize, F)> {
        row.range(ncols..).map(|(c, v)| (c - ncols, v.clone())).collect()
    };
    let solution = (0..ncols)
        .map(|j| pivot_of_col[j].map(|p| tracked(&work[p])).unwrap_or_default())
        .collect();
    let consistency = (0..neq)
        .filter(|&i| !used[i])
        .map(|i| tracked(&work[i]))
        .filter(|k| !k.is_empty())
        .collect();
    Elimination { ncols, rank, pivot_of_col, solution, consistency }
}

/// Nonzero invariant factors (absolute values, each dividing the next) of an
/// integer matrix; their count is the rank.
pub fn invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..ncols {
                    let v = &q * &m[t][j];
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for i in t..nrows {
                    let v = &q * &m[i][t];
                    m[i][j] -= v;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (t + 1..nrows)
                    .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..ncols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                    }
                }
            }
            // move the smallest nonzero of row/column t to the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.1 == t {
                m.swap(t, best.0);
            } else {
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag.sort();
    diag
}

/// Rank over the field with two elements of a 0/1 matrix.
pub fn rank_mod2(m: &[Vec<bool>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let words = ncols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (j, &b) in r.iter().enumerate() {
                if b {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for j in 0..ncols {
        let (wi, bit) = (j / 64, 1u64 << (j % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][wi] & bit != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[wi] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}
