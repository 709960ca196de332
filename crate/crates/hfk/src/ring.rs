//! Coefficient rings for chain complexes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Mod2,
}

impl RingKind {
    pub fn tag(self) -> &'static str {
        match self {
            RingKind::Integers => "z",
            RingKind::Mod2 => "z2",
        }
    }
}

/// A commutative ring in which boundary coefficients live.
///
/// Only the integers and the field with two elements are used; the trait
/// keeps the reduction and homology code independent of that choice.
pub trait Ring:
    Copy
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const KIND: RingKind;

    fn from_i64(v: i64) -> Self;

    /// `Some(u⁻¹)` when `self` is a unit.
    fn inverse(self) -> Option<Self>;

    fn is_unit(self) -> bool {
        self.inverse().is_some()
    }

    fn to_bigint(self) -> BigInt;

    /// Overflow-checked `self + a * b`.
    fn checked_mul_add(self, a: Self, b: Self) -> Option<Self>;
}

impl Ring for i64 {
    const KIND: RingKind = RingKind::Integers;

    fn from_i64(v: i64) -> Self {
        v
    }

    fn inverse(self) -> Option<Self> {
        match self {
            1 | -1 => Some(self),
            _ => None,
        }
    }

    fn to_bigint(self) -> BigInt {
        BigInt::from(self)
    }

    fn checked_mul_add(self, a: Self, b: Self) -> Option<Self> {
        a.checked_mul(b).and_then(|p| self.checked_add(p))
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2(pub bool);

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2(true)
    }
}

impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Sub for F2 {
    type Output = F2;
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

impl Ring for F2 {
    const KIND: RingKind = RingKind::Mod2;

    fn from_i64(v: i64) -> Self {
        F2(v.rem_euclid(2) == 1)
    }

    fn inverse(self) -> Option<Self> {
        if self.0 {
            Some(self)
        } else {
            None
        }
    }

    fn to_bigint(self) -> BigInt {
        BigInt::from(self.0 as u8)
    }

    fn checked_mul_add(self, a: Self, b: Self) -> Option<Self> {
        Some(self + a * b)
    }
}
