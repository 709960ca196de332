//! Laurent polynomials in one variable with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, e);
        p
    }

    /// Builds from `(coefficient, exponent)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, i32)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, c: i64, e: i32) {
        if c == 0 {
            return;
        }
        let v = self.coeffs.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Multiplication by t^s.
    pub fn shift(&self, s: i32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + s, c)).collect() }
    }

    /// p(t⁻¹)
    pub fn invert_var(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&e, &c)| (c * k, e)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dlo, dhi) = (d.min_exp()?, d.max_exp()?);
        let lead = d.coeff(dhi);
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(hi) = rem.max_exp() {
            if hi - dhi < rem.min_exp().unwrap() - dlo {
                return None;
            }
            let c = rem.coeff(hi);
            if c % lead != 0 {
                return None;
            }
            let t = Self::monomial(c / lead, hi - dhi);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// True if `self = ±t^s · other` for some s.
    pub fn is_unit_multiple_of(&self, other: &Self) -> bool {
        let (Some(a), Some(b)) = (self.min_exp(), other.min_exp()) else {
            return self.is_zero() && other.is_zero();
        };
        let s = other.shift(a - b);
        *self == s || *self == -&s
    }

    /// Normalizes by ±t^s so that p(t) = p(t⁻¹) and p(1) > 0.
    /// Returns `None` if no shift makes the polynomial symmetric.
    pub fn symmetrized(&self) -> Option<Self> {
        let (lo, hi) = (self.min_exp()?, self.max_exp()?);
        if (lo + hi) % 2 != 0 {
            return None;
        }
        let mut p = self.shift(-(lo + hi) / 2);
        if p.eval_one() < 0 {
            p = -&p;
        }
        (p == p.invert_var()).then_some(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in rhs.terms() {
            p.add_term(c, e);
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in rhs.terms() {
            p.add_term(-c, e);
        }
        p
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                p.add_term(c1 * c2, e1 + e2);
            }
        }
        p
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let a = c.abs();
            let body = match (*e, a) {
                (0, _) => format!("{a}"),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{a}t"),
                (_, 1) => format!("t^{e}"),
                _ => format!("{a}t^{e}"),
            };
            if i > 0 {
                write!(f, "{sep}{sign} {body}")?;
            } else {
                write!(f, "{sign}{body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let one_minus_t = LaurentPoly::from_terms([(1, 0), (-1, 1)]);
        let p = &LaurentPoly::from_terms([(1, -1), (-1, 0), (1, 1)]) * &one_minus_t.pow(3);
        let q = p.div_exact(&one_minus_t.pow(3)).unwrap();
        assert_eq!(q, LaurentPoly::from_terms([(1, -1), (-1, 0), (1, 1)]));
        assert!(LaurentPoly::from_terms([(1, 0), (1, 1)]).div_exact(&one_minus_t).is_none());
    }

    #[test]
    fn symmetrize() {
        let p = LaurentPoly::from_terms([(-1, 3), (1, 4), (-1, 5)]);
        assert_eq!(p.symmetrized().unwrap(), LaurentPoly::from_terms([(1, -1), (-1, 0), (1, 1)]));
        assert_eq!(p.symmetrized().unwrap().to_string(), "t - 1 + t^-1");
    }
}
