//! Domains connecting two generators: nonnegative integral combinations of
//! pieces with prescribed corner indices and no punctures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{Arrangement, Domain};
use crate::linalg::{eliminate, Elimination};

/// The corner-index system of an arrangement, eliminated once.
#[derive(Clone, Debug)]
pub struct DomainSolver {
    points: usize,
    system: Elimination<BigRational>,
}

impl DomainSolver {
    pub fn new(arr: &Arrangement) -> Self {
        let q = |k: i64| BigRational::from_integer(BigInt::from(k));
        let mut rows: Vec<Vec<(usize, BigRational)>> = arr
            .corners
            .iter()
            .map(|c| vec![(c[0], q(1)), (c[2], q(1)), (c[1], q(-1)), (c[3], q(-1))])
            .collect();
        for (p, punct) in arr.punctures.iter().enumerate() {
            if !punct.is_empty() {
                rows.push(vec![(p, q(1))]);
            }
        }
        let system = eliminate(&rows, arr.piece_count);
        DomainSolver { points: arr.corners.len(), system }
    }

    /// The system has exactly one solution for every consistent right hand side.
    pub fn is_unique(&self) -> bool {
        self.system.is_unique()
    }

    /// Domain from `x` to `y` (point ids), if one exists.
    pub fn find_domain(&self, x: &[u32], y: &[u32]) -> Option<Domain> {
        let mut rhs: Vec<(usize, BigRational)> = Vec::new();
        for &p in x {
            if !y.contains(&p) {
                rhs.push((p as usize, BigRational::one()));
            }
        }
        for &p in y {
            if !x.contains(&p) {
                rhs.push((p as usize, -BigRational::one()));
            }
        }
        debug_assert!(rhs.iter().all(|e| e.0 < self.points));
        if rhs.is_empty() {
            // only periodic combinations, all excluded by the punctures
            return None;
        }
        let sol = self.system.solve(&rhs)?;
        let mut d = Domain::new();
        for (piece, v) in sol.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if !v.is_integer() || v.is_negative() {
                return None;
            }
            d.insert(piece, i64::try_from(v.to_integer()).ok()?);
        }
        Some(d)
    }
}
