//! Grid diagrams, Cromwell moves and the determinant oracle for Δ(t).

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("decoration rows are not a permutation")]
    NotPermutation,
    #[error("column {0} carries both an X and an O")]
    CoincidentDecorations(usize),
    #[error("diagram has {0} components; only knots are supported")]
    MultiComponent(usize),
    #[error("grid size must be at least 2")]
    TooSmall,
    #[error("castling of {axis} {index} and {next} is not legal", next = index + 1)]
    IllegalCastling { axis: Axis, index: usize },
    #[error("point lies on the knot projection")]
    PointOnDiagram,
    #[error("winding matrix has zero determinant")]
    DegenerateDeterminant,
    #[error("malformed grid file: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Rows,
    Cols,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Rows => "rows",
            Axis::Cols => "columns",
        })
    }
}

/// An n×n grid: `xs[c]` / `os[c]` is the row of the X / O in column `c`.
///
/// The knot runs from X to O inside a column and from O to X inside a row;
/// vertical strands pass over horizontal ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    pub xs: Vec<usize>,
    pub os: Vec<usize>,
}

/// Where a column (or row) can be removed by destabilization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DestabSite {
    /// `Cols`: delete a column and merge two rows.
    pub axis: Axis,
    pub line: usize,
}

/// Inverse of a destabilization: split `line` (a row if `axis == Cols`) into
/// two adjacent lines and insert a new line at position `insert`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StabSite {
    pub axis: Axis,
    pub line: usize,
    pub insert: usize,
    /// whether the O of the split line ends up in the lower of the two halves
    pub o_low: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&v| v < p.len() && !std::mem::replace(&mut seen[v], true))
}

impl GridDiagram {
    /// Builds and validates.
    pub fn new(xs: Vec<usize>, os: Vec<usize>) -> Result<Self, GridError> {
        let g = GridDiagram { xs, os };
        g.validate()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn validate(&self) -> Result<(), GridError> {
        let n = self.xs.len();
        if self.os.len() != n || !is_perm(&self.xs) || !is_perm(&self.os) {
            return Err(GridError::NotPermutation);
        }
        if n < 2 {
            return Err(GridError::TooSmall);
        }
        if let Some(c) = (0..n).find(|&c| self.xs[c] == self.os[c]) {
            return Err(GridError::CoincidentDecorations(c));
        }
        match self.component_count() {
            1 => Ok(()),
            k => Err(GridError::MultiComponent(k)),
        }
    }

    pub fn component_count(&self) -> usize {
        let xinv = inverse(&self.xs);
        let mut seen = vec![false; self.n()];
        let mut count = 0;
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                c = xinv[self.os[c]];
            }
        }
        count
    }

    /// Columns of the X and of the O in each row.
    pub fn row_decorations(&self) -> (Vec<usize>, Vec<usize>) {
        (inverse(&self.xs), inverse(&self.os))
    }

    /// Rows ↔ columns.
    pub fn transpose(&self) -> GridDiagram {
        let (xc, oc) = self.row_decorations();
        GridDiagram { xs: xc, os: oc }
    }

    /// Punctures as cells `(column, row)`: first the X's, then the O's.
    pub fn punctures(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).map(|c| (c, self.xs[c])).chain((0..n).map(|c| (c, self.os[c]))).collect()
    }

    pub fn cyclic_move(&self, axis: Axis, amount: i64) -> GridDiagram {
        let n = self.n();
        let k = amount.rem_euclid(n as i64) as usize;
        match axis {
            Axis::Rows => GridDiagram {
                xs: self.xs.iter().map(|&r| (r + k) % n).collect(),
                os: self.os.iter().map(|&r| (r + k) % n).collect(),
            },
            Axis::Cols => {
                let mut xs = vec![0; n];
                let mut os = vec![0; n];
                for c in 0..n {
                    xs[(c + k) % n] = self.xs[c];
                    os[(c + k) % n] = self.os[c];
                }
                GridDiagram { xs, os }
            }
        }
    }

    fn col_interval(&self, c: usize) -> (usize, usize) {
        (self.xs[c].min(self.os[c]), self.xs[c].max(self.os[c]))
    }

    pub fn castling_legal(&self, axis: Axis, index: usize) -> bool {
        if axis == Axis::Rows {
            return self.transpose().castling_legal(Axis::Cols, index);
        }
        if index + 1 >= self.n() {
            return false;
        }
        let (a0, a1) = self.col_interval(index);
        let (b0, b1) = self.col_interval(index + 1);
        a1 < b0 || b1 < a0 || (a0 < b0 && b1 < a1) || (b0 < a0 && a1 < b1)
    }

    pub fn castling_move(&self, axis: Axis, index: usize) -> Result<GridDiagram, GridError> {
        if !self.castling_legal(axis, index) {
            return Err(GridError::IllegalCastling { axis, index });
        }
        Ok(match axis {
            Axis::Cols => {
                let mut g = self.clone();
                g.xs.swap(index, index + 1);
                g.os.swap(index, index + 1);
                g
            }
            Axis::Rows => {
                let swap = |r: usize| {
                    if r == index {
                        index + 1
                    } else if r == index + 1 {
                        index
                    } else {
                        r
                    }
                };
                GridDiagram {
                    xs: self.xs.iter().map(|&r| swap(r)).collect(),
                    os: self.os.iter().map(|&r| swap(r)).collect(),
                }
            }
        })
    }

    pub fn destab_sites(&self) -> Vec<DestabSite> {
        if self.n() <= 2 {
            return Vec::new();
        }
        let t = self.transpose();
        let cols = (0..self.n()).filter(|&c| self.xs[c].abs_diff(self.os[c]) == 1);
        let rows = (0..self.n()).filter(|&r| t.xs[r].abs_diff(t.os[r]) == 1);
        cols.map(|line| DestabSite { axis: Axis::Cols, line })
            .chain(rows.map(|line| DestabSite { axis: Axis::Rows, line }))
            .collect()
    }

    pub fn destabilize_at(&self, site: DestabSite) -> Option<GridDiagram> {
        if self.n() <= 2 {
            return None;
        }
        if site.axis == Axis::Rows {
            let t = self.transpose();
            return t
                .destabilize_at(DestabSite { axis: Axis::Cols, line: site.line })
                .map(|g| g.transpose());
        }
        let c = site.line;
        if self.xs[c].abs_diff(self.os[c]) != 1 {
            return None;
        }
        let hi = self.xs[c].max(self.os[c]);
        let map = |r: usize| if r >= hi { r - 1 } else { r };
        let keep = (0..self.n()).filter(|&k| k != c);
        Some(GridDiagram {
            xs: keep.clone().map(|k| map(self.xs[k])).collect(),
            os: keep.map(|k| map(self.os[k])).collect(),
        })
    }

    /// One diagram per destabilization site.
    pub fn destabilize(&self) -> Vec<GridDiagram> {
        self.destab_sites().into_iter().filter_map(|s| self.destabilize_at(s)).collect()
    }

    pub fn stabilize(&self, site: StabSite) -> GridDiagram {
        if site.axis == Axis::Rows {
            return self
                .transpose()
                .stabilize(StabSite { axis: Axis::Cols, ..site })
                .transpose();
        }
        let n = self.n();
        let r = site.line;
        let (o_row, x_row) = if site.o_low { (r, r + 1) } else { (r + 1, r) };
        let lift = |v: usize, is_o: bool| match v.cmp(&r) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Greater => v + 1,
            std::cmp::Ordering::Equal => {
                if is_o {
                    o_row
                } else {
                    x_row
                }
            }
        };
        let mut xs = Vec::with_capacity(n + 1);
        let mut os = Vec::with_capacity(n + 1);
        for c in 0..=n {
            if c == site.insert {
                // the new column's X continues the row of the old O
                xs.push(o_row);
                os.push(x_row);
            }
            if c < n {
                xs.push(lift(self.xs[c], false));
                os.push(lift(self.os[c], true));
            }
        }
        GridDiagram { xs, os }
    }

    /// Lexicographic minimum over all n² cyclic representatives.
    pub fn canonical_key(&self) -> CanonicalKey {
        let n = self.n();
        let mut best: Option<Vec<u8>> = None;
        let mut buf = vec![0u8; 2 * n + 1];
        for dc in 0..n {
            for dr in 0..n {
                buf[0] = n as u8;
                for c in 0..n {
                    let d = (c + dc) % n;
                    buf[1 + d] = ((self.xs[c] + dr) % n) as u8;
                    buf[1 + n + d] = ((self.os[c] + dr) % n) as u8;
                }
                if best.as_ref().is_none_or(|b| buf < *b) {
                    best = Some(buf.clone());
                }
            }
        }
        CanonicalKey(best.unwrap())
    }

    /// Winding number of the oriented projection around `p`.
    pub fn winding_number(&self, p: (Ratio<i64>, Ratio<i64>)) -> Result<i64, GridError> {
        let half = Ratio::new(1, 2);
        let (px, py) = p;
        let (xc, oc) = self.row_decorations();
        for c in 0..self.n() {
            let (lo, hi) = self.col_interval(c);
            let x = Ratio::from_integer(c as i64) + half;
            if px == x && Ratio::from_integer(lo as i64) + half <= py && py <= Ratio::from_integer(hi as i64) + half {
                return Err(GridError::PointOnDiagram);
            }
        }
        for r in 0..self.n() {
            let (lo, hi) = (xc[r].min(oc[r]), xc[r].max(oc[r]));
            let y = Ratio::from_integer(r as i64) + half;
            if py == y && Ratio::from_integer(lo as i64) + half <= px && px <= Ratio::from_integer(hi as i64) + half {
                return Err(GridError::PointOnDiagram);
            }
        }
        let mut w = 0;
        for c in 0..self.n() {
            let x = Ratio::from_integer(c as i64) + half;
            if x <= px {
                continue;
            }
            let (lo, hi) = self.col_interval(c);
            if Ratio::from_integer(lo as i64) + half < py && py < Ratio::from_integer(hi as i64) + half {
                w += if self.os[c] > self.xs[c] { 1 } else { -1 };
            }
        }
        Ok(w)
    }

    /// Average of the winding numbers in the four quadrants around `p`.
    pub fn quadrant_winding(&self, p: (Ratio<i64>, Ratio<i64>)) -> Ratio<i64> {
        let e = Ratio::new(1, 10);
        let mut s = 0;
        for dx in [-e, e] {
            for dy in [-e, e] {
                s += self
                    .winding_number((p.0 + dx, p.1 + dy))
                    .expect("quadrant points avoid the projection");
            }
        }
        Ratio::new(s, 4)
    }

    /// Winding numbers at the lattice points, `w[i][j]` around `(i, j)`.
    pub fn winding_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        self.winding_number((Ratio::from_integer(i as i64), Ratio::from_integer(j as i64)))
                            .expect("lattice points avoid the projection")
                    })
                    .collect()
            })
            .collect()
    }

    /// Symmetrized Alexander polynomial from det(t^{w(i,j)}).
    pub fn alexander_oracle(&self) -> Result<LaurentPoly, GridError> {
        let n = self.n();
        let w = self.winding_matrix();
        let m: Vec<Vec<LaurentPoly>> = w
            .iter()
            .map(|row| row.iter().map(|&e| LaurentPoly::monomial(1, e as i32)).collect())
            .collect();
        let det = bareiss_det(m);
        if det.is_zero() {
            return Err(GridError::DegenerateDeterminant);
        }
        let one_minus_t = LaurentPoly::from_terms([(1, 0), (-1, 1)]);
        let q = det
            .div_exact(&one_minus_t.pow(n as u32 - 1))
            .ok_or(GridError::DegenerateDeterminant)?;
        let p = q.symmetrized().ok_or(GridError::DegenerateDeterminant)?;
        if p.eval_one() != 1 {
            return Err(GridError::DegenerateDeterminant);
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
        format!("{}\nX: {}\nO: {}\n", self.n(), join(&self.xs), join(&self.os))
    }

    pub fn from_text(s: &str) -> Result<Self, GridError> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let bad = |m: &str| GridError::Parse(m.to_string());
        let n: usize = lines
            .next()
            .ok_or_else(|| bad("missing size line"))?
            .parse()
            .map_err(|_| bad("size is not an integer"))?;
        let mut read = |tag: &str| -> Result<Vec<usize>, GridError> {
            let line = lines.next().ok_or_else(|| bad("missing decoration line"))?;
            let rest = line
                .strip_prefix(tag)
                .ok_or_else(|| GridError::Parse(format!("expected line starting with {tag}")))?;
            let v = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("row index is not an integer"))?;
            if v.len() != n {
                return Err(GridError::Parse(format!("expected {n} entries after {tag}")));
            }
            Ok(v)
        };
        let xs = read("X:")?;
        let os = read("O:")?;
        GridDiagram::new(xs, os)
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        for r in (0..n).rev() {
            let row: String = (0..n)
                .map(|c| if self.xs[c] == r { 'X' } else if self.os[c] == r { 'O' } else { '.' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Fraction-free Gaussian elimination over Z[t, t⁻¹].
fn bareiss_det(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    let mut sign = 1;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn trefoil() -> GridDiagram {
        GridDiagram::new(vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(GridDiagram::new(vec![1, 0], vec![0, 1]).is_ok());
        assert_eq!(GridDiagram::new(vec![0, 1], vec![0, 1]), Err(GridError::CoincidentDecorations(0)));
        assert_eq!(GridDiagram::new(vec![0, 0, 2], vec![1, 2, 0]), Err(GridError::NotPermutation));
        assert_eq!(
            GridDiagram::new(vec![1, 0, 3, 2], vec![0, 1, 2, 3]),
            Err(GridError::MultiComponent(2))
        );
    }

    #[test]
    fn unknot_center_winding() {
        let g = GridDiagram::new(vec![1, 0], vec![0, 1]).unwrap();
        let w = g.winding_number((Ratio::from_integer(1), Ratio::from_integer(1))).unwrap();
        assert_eq!(w.abs(), 1);
        let far = g.winding_number((Ratio::from_integer(5), Ratio::from_integer(1))).unwrap();
        assert_eq!(far, 0);
        assert_eq!(
            g.winding_number((Ratio::new(1, 2), Ratio::from_integer(1))),
            Err(GridError::PointOnDiagram)
        );
    }

    #[test]
    fn oracle_small() {
        let u = GridDiagram::new(vec![1, 0], vec![0, 1]).unwrap();
        assert_eq!(u.alexander_oracle().unwrap(), LaurentPoly::one());
        let t = trefoil().alexander_oracle().unwrap();
        assert_eq!(t, LaurentPoly::from_terms([(1, 1), (-1, 0), (1, -1)]));
    }

    #[test]
    fn cyclic_identities() {
        let g = trefoil();
        assert_eq!(g.cyclic_move(Axis::Rows, 0), g);
        assert_eq!(g.cyclic_move(Axis::Cols, 5), g);
        assert_eq!(g.cyclic_move(Axis::Rows, 3).canonical_key(), g.canonical_key());
    }

    #[test]
    fn stabilize_then_destabilize() {
        let g = trefoil();
        for line in 0..5 {
            for insert in 0..=5 {
                for o_low in [false, true] {
                    for axis in [Axis::Rows, Axis::Cols] {
                        let s = g.stabilize(StabSite { axis, line, insert, o_low });
                        s.validate().unwrap();
                        assert!(s.destabilize().iter().any(|d| d.canonical_key() == g.canonical_key()));
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let g = trefoil();
        assert_eq!(GridDiagram::from_text(&g.to_text()).unwrap(), g);
        assert!(GridDiagram::from_text("2\nX: 1 0\n").is_err());
    }
}
