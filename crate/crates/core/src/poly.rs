//! Dense univariate polynomials over an exact ring, ascending degree.

use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct DensePoly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> DensePoly<T> {
    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `X^k - 1` style binomials: `lead * X^k + constant`.
    pub fn binomial(k: usize, lead: T, constant: T) -> Self {
        let mut coeffs = vec![lead.zero_like(); k + 1];
        coeffs[0] = constant;
        coeffs[k] = if k == 0 {
            coeffs[0].add_ref(&lead)
        } else {
            lead
        };
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o = o.add_ref(s);
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(Ring::neg_ref).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul_ref(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// Quotient and remainder by a monic divisor. Exact in any ring.
    ///
    /// # Panics
    /// Panics if `divisor` is zero or not monic.
    pub fn divrem_monic(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        assert!(
            divisor.coeffs[dd] == divisor.coeffs[dd].one_like(),
            "divrem_monic needs a monic divisor"
        );
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![rem[0].zero_like(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let q = rem[i + dd].clone();
            if q.is_zero_elem() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub_ref(&q.mul_ref(c));
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

impl<T: Ring> DensePoly<T> {
    /// Index of the first coefficient where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).find(|&i| match (self.coeffs.get(i), other.coeffs.get(i)) {
            (Some(a), Some(b)) => a != b,
            (Some(a), None) | (None, Some(a)) => !a.is_zero_elem(),
            (None, None) => false,
        })
    }
}

impl DensePoly<BigInt> {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// Renders integer polynomials as `2X^2 + X + 2` in descending powers.
impl fmt::Display for DensePoly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, BigRat};

    #[test]
    fn multiply_and_divide() {
        let a = DensePoly::from_i64(&[1, 1]);
        let b = DensePoly::from_i64(&[-1, 1]);
        let p = a.mul(&b);
        assert_eq!(p, DensePoly::from_i64(&[-1, 0, 1]));
        let (q, r) = p.divrem_monic(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        let (q, r) = DensePoly::from_i64(&[3, 0, 1]).divrem_monic(&b);
        assert_eq!(q, a);
        assert_eq!(r, DensePoly::from_i64(&[4]));
    }

    #[test]
    fn trims_and_compares() {
        let p = DensePoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(DensePoly::<BigInt>::from_i64(&[0, 0]).degree(), None);
        let q = DensePoly::from_i64(&[1, 3]);
        assert_eq!(p.first_difference(&q), Some(1));
        assert_eq!(p.first_difference(&p), None);
    }

    #[test]
    fn display() {
        assert_eq!(DensePoly::from_i64(&[2, 1, 2]).to_string(), "2X^2 + X + 2");
        assert_eq!(
            DensePoly::from_i64(&[-2, -1, 1, 2]).to_string(),
            "2X^3 + X^2 - X - 2"
        );
        assert_eq!(DensePoly::from_i64(&[0, 1]).to_string(), "X");
        assert_eq!(DensePoly::from_i64(&[-1, 0, -1]).to_string(), "-X^2 - 1");
        assert_eq!(DensePoly::<BigInt>::zero().to_string(), "0");
    }

    #[test]
    fn rational_eval() {
        let p = DensePoly::new(vec![rat(1, 2), rat(0, 1), rat(3, 1)]);
        assert_eq!(p.eval(&rat(1, 3)), rat(5, 6));
        assert_eq!(DensePoly::<BigRat>::zero().eval(&rat(7, 1)), rat(0, 1));
    }
}
