//! Exact nonnegative counts.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision nonnegative integer used for every exact count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// `base^exp`.
    pub fn pow(base: u64, exp: u32) -> Self {
        BigCount(BigUint::from(base).pow(exp))
    }

    /// `n!`.
    pub fn factorial(n: u64) -> Self {
        BigCount((1..=n).fold(BigUint::one(), |acc, i| acc * i))
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, divisor: &BigCount) -> BigCount {
        debug_assert!((&self.0 % &divisor.0).is_zero());
        BigCount(&self.0 / &divisor.0)
    }

    /// Natural logarithm, accurate to double precision even when the value
    /// exceeds the range of `f64`. Returns `-inf` for zero.
    pub fn ln(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.0.bits();
        if bits <= 1000 {
            return self.0.to_f64().unwrap_or(f64::INFINITY).ln();
        }
        let shift = bits - 64;
        let top = (&self.0 >> shift).to_f64().unwrap_or(f64::INFINITY);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 + &rhs.0)
    }
}

impl AddAssign<&BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &BigCount) {
        self.0 += &rhs.0;
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &'a BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}
