//! Minimal exact-ring contract shared by integers, rationals and quadratic
//! field elements.
//!
//! Quadratic elements carry their radicand at runtime, so there is no static
//! `zero()`; constants are produced from an existing value instead.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

pub type BigRat = BigRational;

pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn int_like(&self, k: i64) -> Self;
}

/// Rings in which division by a positive integer is exact.
pub trait DivInt: Ring {
    fn div_int(&self, k: u64) -> Self;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn int_like(&self, k: i64) -> Self {
        BigInt::from(k)
    }
}

impl Ring for BigRat {
    fn zero_like(&self) -> Self {
        BigRat::zero()
    }
    fn one_like(&self) -> Self {
        BigRat::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn int_like(&self, k: i64) -> Self {
        BigRat::from_integer(BigInt::from(k))
    }
}

impl DivInt for BigRat {
    fn div_int(&self, k: u64) -> Self {
        self / BigRat::from_integer(BigInt::from(k))
    }
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}
