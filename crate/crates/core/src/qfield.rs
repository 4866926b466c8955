//! Exact arithmetic in quadratic fields `Q(sqrt(r))`, `r` squarefree and
//! possibly negative, plus exact sign and order decisions for real surds.

use crate::error::ArithError;
use crate::numtheory::is_squarefree;
use crate::ring::{BigRat, DivInt, Ring};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `a + b*sqrt(r)`.
///
/// Elements with `b = 0` are rational and combine with elements of any
/// radicand; otherwise both operands must share `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    a: BigRat,
    b: BigRat,
    r: i64,
}

fn check_radicand(r: i64) -> Result<(), ArithError> {
    if r == 0 || r == 1 || !is_squarefree(r.unsigned_abs()) {
        Err(ArithError::InvalidRadicand(r))
    } else {
        Ok(())
    }
}

impl QuadElem {
    pub fn new(a: BigRat, b: BigRat, r: i64) -> Result<Self, ArithError> {
        check_radicand(r)?;
        Ok(Self { a, b, r })
    }

    /// The rational `q` viewed inside `Q(sqrt(r))`.
    pub fn rational(q: BigRat, r: i64) -> Result<Self, ArithError> {
        Self::new(q, BigRat::zero(), r)
    }

    /// `sqrt(r)` itself.
    pub fn sqrt_of(r: i64) -> Result<Self, ArithError> {
        Self::new(BigRat::zero(), BigRat::one(), r)
    }

    pub fn a(&self) -> &BigRat {
        &self.a
    }

    pub fn b(&self) -> &BigRat {
        &self.b
    }

    pub fn radicand(&self) -> i64 {
        self.r
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_radicand(&self, rhs: &Self) -> Result<i64, ArithError> {
        if self.r == rhs.r || rhs.b.is_zero() {
            Ok(self.r)
        } else if self.b.is_zero() {
            Ok(rhs.r)
        } else {
            Err(ArithError::RadicandMismatch(self.r, rhs.r))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        let r = self.common_radicand(rhs)?;
        Ok(Self {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            r,
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, ArithError> {
        let r = self.common_radicand(rhs)?;
        Ok(Self {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            r,
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        let r = self.common_radicand(rhs)?;
        let rr = BigRat::from_integer(BigInt::from(r));
        Ok(Self {
            a: &self.a * &rhs.a + &self.b * &rhs.b * rr,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            r,
        })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        self.try_mul(&rhs.inv()?)
    }

    /// Field norm `a^2 - r b^2`, i.e. `x * conj(x)`.
    pub fn norm(&self) -> BigRat {
        &self.a * &self.a - &self.b * &self.b * BigRat::from_integer(BigInt::from(self.r))
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self {
            a: &self.a / &n,
            b: -&self.b / &n,
            r: self.r,
        })
    }

    /// Algebraic conjugate `a - b*sqrt(r)`.
    pub fn conj(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
            r: self.r,
        }
    }

    pub fn scale(&self, q: &BigRat) -> Self {
        Self {
            a: &self.a * q,
            b: &self.b * q,
            r: self.r,
        }
    }

    /// `(|a|, |b|)`; the L1 norm is `|a| + |b| sqrt(|r|)`, kept symbolic.
    pub fn l1_norm_parts(&self) -> (BigRat, BigRat) {
        (self.a.abs(), self.b.abs())
    }

    /// Squared complex modulus.
    pub fn abs_square(&self) -> AbsSquare {
        if self.r < 0 {
            let rr = BigRat::from_integer(BigInt::from(-self.r));
            AbsSquare::Rational(&self.a * &self.a + &self.b * &self.b * rr)
        } else {
            AbsSquare::Real(self.try_mul(self).expect("same radicand"))
        }
    }

    /// Sign of a real element (`r > 0` or rational).
    ///
    /// # Panics
    /// Panics for a non-real element of an imaginary field.
    pub fn real_sign(&self) -> Ordering {
        if self.b.is_zero() {
            return self.a.cmp(&BigRat::zero());
        }
        assert!(self.r > 0, "sign of a non-real quadratic element");
        cmp_surd(&self.a, &self.b, self.r as u64, &BigRat::zero())
    }

    /// Absolute value of a real element.
    pub fn real_abs(&self) -> Self {
        if self.real_sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Whether `2a` and `2b` are integers of equal parity, the shape of
    /// algebraic integers of `Q(sqrt(r))` when `r = 1 mod 4`.
    pub fn is_half_integral_pair(&self) -> bool {
        let two = BigRat::from_integer(BigInt::from(2));
        let (a2, b2) = (&self.a * &two, &self.b * &two);
        if !a2.is_integer() || !b2.is_integer() {
            return false;
        }
        (a2.to_integer() - b2.to_integer()) % BigInt::from(2) == BigInt::zero()
    }
}

/// Result of [`QuadElem::abs_square`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AbsSquare {
    /// Imaginary field: `a^2 + |r| b^2`.
    Rational(BigRat),
    /// Real field: the element squared.
    Real(QuadElem),
}

/// Exact order of `x + y*sqrt(d)` against `q`.
///
/// `d` is meant to be a nonsquare; perfect squares are handled by direct
/// evaluation.
pub fn cmp_surd(x: &BigRat, y: &BigRat, d: u64, q: &BigRat) -> Ordering {
    let s = d.sqrt();
    if s * s == d {
        let v = x + y * BigRat::from_integer(BigInt::from(s));
        return v.cmp(q);
    }
    // order of y*sqrt(d) against t
    let t = q - x;
    let ys = y.cmp(&BigRat::zero());
    let ts = t.cmp(&BigRat::zero());
    match (ys, ts) {
        (Ordering::Equal, _) => BigRat::zero().cmp(&t),
        (Ordering::Greater, Ordering::Less | Ordering::Equal) => Ordering::Greater,
        (Ordering::Less, Ordering::Greater | Ordering::Equal) => Ordering::Less,
        (Ordering::Greater, Ordering::Greater) => {
            (y * y * BigRat::from_integer(BigInt::from(d))).cmp(&(&t * &t))
        }
        (Ordering::Less, Ordering::Less) => {
            (&t * &t).cmp(&(y * y * BigRat::from_integer(BigInt::from(d))))
        }
    }
}

/// Exact order of two real elements (`r > 0` or rational).
///
/// Returns `None` when both are irrational with different radicands.
pub fn cmp_real(lhs: &QuadElem, rhs: &QuadElem) -> Option<Ordering> {
    let diff = lhs.try_sub(rhs).ok()?;
    Some(diff.real_sign())
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{} ", self.a)?;
            write!(f, "{} ", if self.b.is_negative() { '-' } else { '+' })?;
        } else if self.b.is_negative() {
            write!(f, "-")?;
        }
        let mag = self.b.abs();
        if mag.is_one() {
            write!(f, "sqrt({})", self.r)
        } else {
            write!(f, "{}*sqrt({})", mag, self.r)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            /// # Panics
            /// Panics on a radicand mismatch; use the `try_` form to handle it.
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
            r: self.r,
        }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

impl Ring for QuadElem {
    fn zero_like(&self) -> Self {
        Self {
            a: BigRat::zero(),
            b: BigRat::zero(),
            r: self.r,
        }
    }
    fn one_like(&self) -> Self {
        Self {
            a: BigRat::one(),
            b: BigRat::zero(),
            r: self.r,
        }
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
        Self {
            a: BigRat::from_integer(BigInt::from(k)),
            b: BigRat::zero(),
            r: self.r,
        }
    }
}

impl DivInt for QuadElem {
    fn div_int(&self, k: u64) -> Self {
        self.scale(&BigRat::new(BigInt::one(), BigInt::from(k)))
    }
}
