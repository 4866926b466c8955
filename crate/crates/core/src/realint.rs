//! Validated real arithmetic on intervals with dyadic endpoints.
//!
//! Every operation rounds its lower endpoint toward -inf and its upper
//! endpoint toward +inf, to `precision` significant bits, so the result
//! always contains the exact image of its inputs. Elementary functions use
//! argument reduction plus truncated series whose tails are bounded and
//! added as an explicit error term.

use crate::error::RealError;
use crate::ring::BigRat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// `mant * 2^exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn div_dir(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => num.div_floor(den),
        Round::Up => -((-num).div_floor(den)),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Self {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Self { mant, exp }
        }
    }

    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        self.mant.cmp(&BigInt::zero())
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// `self * 2^k`, exact.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// `floor(log2 |x|) + 1`, the binary magnitude; `i64::MIN` for zero.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.mant.bits() as i64 + self.exp
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Self::new(a + b, e)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let mant = div_dir(&self.mant, &pow2(shift), dir);
        Self::new(mant, self.exp + shift as i64)
    }

    /// `self / rhs` rounded to `prec` bits.
    pub fn div_round(&self, rhs: &Self, prec: u32, dir: Round) -> Self {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let s = prec as i64 + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64;
        let (num, den) = if s >= 0 {
            (&self.mant << s as u64, rhs.mant.clone())
        } else {
            (self.mant.clone(), &rhs.mant << (-s) as u64)
        };
        let q = div_dir(&num, &den, dir);
        Self::new(q, self.exp - rhs.exp - s).round(prec, dir)
    }

    /// Square root of a nonnegative dyadic, rounded to `prec` bits.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Self {
        assert!(self.signum() != Ordering::Less, "sqrt of a negative dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let mut t = (2 * prec as i64 + 4 - self.mant.bits() as i64).max(0);
        if (self.exp - t).rem_euclid(2) != 0 {
            t += 1;
        }
        let n = &self.mant << t as u64;
        let mut r = n.sqrt();
        if dir == Round::Up && &r * &r < n {
            r += 1;
        }
        Self::new(r, (self.exp - t) / 2).round(prec, dir)
    }

    pub fn from_rat(q: &BigRat, prec: u32, dir: Round) -> Self {
        Self::from_int_big(q.numer().clone()).div_round(
            &Self::from_int_big(q.denom().clone()),
            prec,
            dir,
        )
    }

    pub fn from_int_big(n: BigInt) -> Self {
        Self::new(n, 0)
    }

    pub fn to_rat(&self) -> BigRat {
        if self.exp >= 0 {
            BigRat::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRat::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Nearby `f64`, for display only.
    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&self.mant >> shift as u64).to_f64().unwrap_or(0.0);
        m * 2f64.powi((self.exp + shift).clamp(-2000, 2000) as i32)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

/// Extra bits carried inside series evaluations.
const GUARD_BITS: u32 = 24;

impl DyadicInterval {
    /// `[lo, hi]` rounded outward to `prec` bits.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Self::new(x.clone(), x, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::point(Dyadic::from_int(n), prec)
    }

    pub fn from_rat(q: &BigRat, prec: u32) -> Self {
        Self {
            lo: Dyadic::from_rat(q, prec, Round::Down),
            hi: Dyadic::from_rat(q, prec, Round::Up),
            prec,
        }
    }

    /// Enclosure of `x + y*sqrt(d)`.
    pub fn from_surd(x: &BigRat, y: &BigRat, d: u64, prec: u32) -> Self {
        if y.is_zero() || d == 0 {
            return Self::from_rat(x, prec);
        }
        // extra bits cover cancellation between the two terms
        let mag = |q: &BigRat| (q.numer().bits() as i64 - q.denom().bits() as i64 + 1).max(0);
        let extra = (mag(x).max(mag(y) + (64 - d.leading_zeros() as i64) / 2 + 1)) as u32;
        let w = prec + extra + 8;
        let root = Self::from_int(d as i64, w).sqrt().expect("d >= 0");
        let v = Self::from_rat(x, w).add(&Self::from_rat(y, w).mul(&root));
        v.with_prec(prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() != Ordering::Greater && self.hi.signum() != Ordering::Less
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rat(&self, q: &BigRat) -> bool {
        &self.lo.to_rat() <= q && q <= &self.hi.to_rat()
    }

    /// Whether `self` lies inside `outer`.
    pub fn subset_of(&self, outer: &Self) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() == Ordering::Greater
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    /// Largest absolute value of a member.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    fn joint_prec(&self, rhs: &Self) -> u32 {
        self.prec.max(rhs.prec)
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.lo.add(&rhs.lo),
            self.hi.add(&rhs.hi),
            self.joint_prec(rhs),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = p.iter().min().expect("nonempty").clone();
        let hi = p.iter().max().expect("nonempty").clone();
        Self::new(lo, hi, self.joint_prec(rhs))
    }

    pub fn sqr(&self) -> Self {
        if self.contains_zero() {
            let m = self.mag();
            Self::new(Dyadic::zero(), m.mul(&m), self.prec)
        } else {
            self.mul(self)
        }
    }

    /// Multiply by `2^k`, exact.
    pub fn shl(&self, k: i64) -> Self {
        Self {
            lo: self.lo.shl(k),
            hi: self.hi.shl(k),
            prec: self.prec,
        }
    }

    pub fn recip(&self) -> Result<Self, RealError> {
        if self.contains_zero() {
            return Err(RealError::DivisionByZero);
        }
        let one = Dyadic::from_int(1);
        Ok(Self {
            lo: one.div_round(&self.hi, self.prec, Round::Down),
            hi: one.div_round(&self.lo, self.prec, Round::Up),
            prec: self.prec,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, RealError> {
        let p = self.joint_prec(rhs);
        Ok(self.with_prec(p).mul(&rhs.with_prec(p).recip()?))
    }

    pub fn div_int(&self, k: i64) -> Self {
        self.div(&Self::from_int(k, self.prec))
            .expect("nonzero integer")
    }

    pub fn sqrt(&self) -> Result<Self, RealError> {
        if self.lo.signum() == Ordering::Less {
            return Err(RealError::NegativeSqrt);
        }
        Ok(Self {
            lo: self.lo.sqrt_round(self.prec, Round::Down),
            hi: self.hi.sqrt_round(self.prec, Round::Up),
            prec: self.prec,
        })
    }

    /// Adds `[-r, r]` for a nonnegative radius `r`.
    fn widen(&self, r: &Dyadic) -> Self {
        Self::new(self.lo.sub(r), self.hi.add(r), self.prec)
    }

    pub fn exp(&self) -> Self {
        let lo = exp_point(&self.lo, self.prec);
        let hi = if self.lo == self.hi {
            lo.clone()
        } else {
            exp_point(&self.hi, self.prec)
        };
        Self {
            lo: lo.lo,
            hi: hi.hi,
            prec: self.prec,
        }
    }

    pub fn ln(&self) -> Result<Self, RealError> {
        if !self.is_positive() {
            return Err(RealError::NonPositiveLog);
        }
        let lo = ln_point(&self.lo, self.prec);
        let hi = if self.lo == self.hi {
            lo.clone()
        } else {
            ln_point(&self.hi, self.prec)
        };
        Ok(Self {
            lo: lo.lo,
            hi: hi.hi,
            prec: self.prec,
        })
    }

    /// Integer power by repeated squaring.
    pub fn pow_int(&self, n: i64) -> Result<Self, RealError> {
        if n < 0 {
            return self.pow_int(-n)?.recip();
        }
        let mut result = Self::from_int(1, self.prec);
        let mut base = self.clone();
        let mut k = n as u64;
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                result = if first {
                    base.clone()
                } else {
                    result.mul(&base)
                };
                first = false;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        Ok(result)
    }

    /// `self^q`. Integers and half-integers avoid `exp`/`ln`.
    pub fn pow_rat(&self, q: &BigRat) -> Result<Self, RealError> {
        if q.is_integer() {
            let n = q.to_integer().to_i64().expect("exponent fits i64");
            return self.pow_int(n);
        }
        if *q.denom() == BigInt::from(2) {
            if self.lo.signum() == Ordering::Less {
                return Err(RealError::NonPositivePowBase);
            }
            let n = q.numer().to_i64().expect("exponent fits i64");
            return self.pow_int(n)?.sqrt();
        }
        if !self.is_positive() {
            return Err(RealError::NonPositivePowBase);
        }
        Ok(self.ln()?.mul(&Self::from_rat(q, self.prec)).exp())
    }

    /// `self^y = exp(y ln self)` for a positive base.
    pub fn pow(&self, y: &Self) -> Result<Self, RealError> {
        if !self.is_positive() {
            return Err(RealError::NonPositivePowBase);
        }
        let p = self.joint_prec(y);
        Ok(self.with_prec(p).ln()?.mul(y).exp())
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Enclosure of `exp(x)` for a single dyadic point.
fn exp_point(x: &Dyadic, prec: u32) -> DyadicInterval {
    if x.is_zero() {
        return DyadicInterval::from_int(1, prec);
    }
    // reduce to |y| <= 2^-8, then square k times
    let k = (x.magnitude() + 8).max(0);
    let y = x.shl(-k);
    let w = prec + GUARD_BITS + k as u32;
    let yi = DyadicInterval::point(y, w);
    let mut sum = DyadicInterval::from_int(1, w);
    let mut term = DyadicInterval::from_int(1, w);
    let eps_mag = -(w as i64) - 4;
    for i in 1.. {
        term = term.mul(&yi).div_int(i);
        sum = sum.add(&term);
        if term.mag().magnitude() < eps_mag {
            break;
        }
    }
    // |y| <= 1/2 bounds the tail by the last term
    let mut r = sum.widen(&term.mag());
    for _ in 0..k {
        r = r.sqr();
    }
    r.with_prec(prec)
}

/// `atanh(z) = sum z^(2i+1)/(2i+1)` for `|z| <= 1/2`.
fn atanh_series(z: &DyadicInterval, w: u32) -> DyadicInterval {
    let z2 = z.sqr();
    let mut p = z.clone();
    let mut sum = z.clone();
    let eps_mag = -(w as i64) - 4;
    for i in 1.. {
        p = p.mul(&z2);
        sum = sum.add(&p.div_int(2 * i + 1));
        if p.mag().magnitude() < eps_mag {
            break;
        }
    }
    // z^2 <= 1/4: remaining terms sum to at most |p| z^2/(1-z^2) <= |p|
    sum.widen(&p.mag())
}

pub fn ln2(prec: u32) -> DyadicInterval {
    cached(Constant::Ln2, prec, ln2_uncached)
}

fn ln2_uncached(prec: u32) -> DyadicInterval {
    let w = prec + GUARD_BITS;
    let third = DyadicInterval::from_rat(&BigRat::new(BigInt::one(), BigInt::from(3)), w);
    atanh_series(&third, w).shl(1).with_prec(prec)
}

/// Enclosure of `ln(x)` for a positive dyadic point.
fn ln_point(x: &Dyadic, prec: u32) -> DyadicInterval {
    assert!(x.signum() == Ordering::Greater);
    // x = f * 2^k with f in [3/4, 3/2)
    let bits = x.mant.bits() as i64;
    let mut k = x.exp + bits;
    let mut f = Dyadic::new(x.mant.clone(), -bits);
    if f < Dyadic::new(BigInt::from(3), -2) {
        f = f.shl(1);
        k -= 1;
    }
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let w = prec + GUARD_BITS + kbits;
    let one = Dyadic::from_int(1);
    let z = DyadicInterval::point(f.sub(&one), w)
        .div(&DyadicInterval::point(f.add(&one), w))
        .expect("f + 1 > 0");
    let mut out = atanh_series(&z, w).shl(1);
    if k != 0 {
        out = out.add(&ln2(w).mul(&DyadicInterval::from_int(k, w)));
    }
    out.with_prec(prec)
}

/// `atan(1/k)` for an integer `k >= 2`.
fn atan_inv(k: i64, w: u32) -> DyadicInterval {
    let k2 = DyadicInterval::from_int(k * k, w);
    let mut p = DyadicInterval::from_int(1, w).div_int(k);
    let mut sum = DyadicInterval::from_int(0, w);
    let eps_mag = -(w as i64) - 4;
    for i in 0.. {
        let term = p.div_int(2 * i + 1);
        sum = if i % 2 == 0 {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
        p = p.div(&k2).expect("k^2 > 0");
        if p.mag().magnitude() < eps_mag {
            break;
        }
    }
    // alternating, decreasing: tail bounded by the next term
    sum.widen(&p.mag())
}

/// Constants below 4 carry this many extra bits so their absolute width
/// stays under `2^(1-prec)`.
const CONST_EXTRA_BITS: u32 = 4;

/// Enclosure of pi (Machin's formula).
pub fn pi(prec: u32) -> DyadicInterval {
    cached(Constant::Pi, prec, pi_uncached)
}

fn pi_uncached(prec: u32) -> DyadicInterval {
    let w = prec + GUARD_BITS;
    let a = atan_inv(5, w).shl(4);
    let b = atan_inv(239, w).shl(2);
    a.sub(&b).with_prec(prec + CONST_EXTRA_BITS)
}

/// Enclosure of e.
pub fn e(prec: u32) -> DyadicInterval {
    cached(Constant::E, prec, |p| {
        exp_point(&Dyadic::from_int(1), p + CONST_EXTRA_BITS)
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Constant {
    Ln2,
    Pi,
    E,
}

thread_local! {
    static CONSTANTS: RefCell<HashMap<(Constant, u32), DyadicInterval>> = RefCell::new(HashMap::new());
}

fn cached(c: Constant, prec: u32, compute: impl FnOnce(u32) -> DyadicInterval) -> DyadicInterval {
    if let Some(v) = CONSTANTS.with(|m| m.borrow().get(&(c, prec)).cloned()) {
        return v;
    }
    let v = compute(prec);
    CONSTANTS.with(|m| m.borrow_mut().insert((c, prec), v.clone()));
    v
}

/// Outcome of a validated comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Unresolved,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

/// Starting precision of [`resolve_compare`].
pub const START_PRECISION: u32 = 64;
/// Default precision ceiling.
pub const DEFAULT_PRECISION_MAX: u32 = 4096;

/// Compares two lazily evaluated quantities.
///
/// The exact hook, when given and able to decide, wins. Otherwise both sides
/// are re-evaluated at doubling precision until their enclosures separate or
/// `max_prec` is reached.
pub fn resolve_compare<L, R>(
    lhs: L,
    rhs: R,
    max_prec: u32,
    exact: Option<&dyn Fn() -> Option<Ordering>>,
) -> Result<Comparison, RealError>
where
    L: Fn(u32) -> Result<DyadicInterval, RealError>,
    R: Fn(u32) -> Result<DyadicInterval, RealError>,
{
    if let Some(ord) = exact.and_then(|hook| hook()) {
        return Ok(ord.into());
    }
    let mut p = START_PRECISION.min(max_prec).max(2);
    loop {
        let a = lhs(p)?;
        let b = rhs(p)?;
        if a.hi < b.lo {
            return Ok(Comparison::Less);
        }
        if a.lo > b.hi {
            return Ok(Comparison::Greater);
        }
        if p >= max_prec {
            return Ok(Comparison::Unresolved);
        }
        p = (p * 2).min(max_prec);
    }
}

/// Rectangular complex enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: DyadicInterval,
    pub im: DyadicInterval,
}

impl ComplexInterval {
    pub fn zero(prec: u32) -> Self {
        Self {
            re: DyadicInterval::from_int(0, prec),
            im: DyadicInterval::from_int(0, prec),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn scale(&self, s: &DyadicInterval) -> Self {
        Self {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }

    /// Larger of the two component widths.
    pub fn width(&self) -> Dyadic {
        self.re.width().max(self.im.width())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

/// Enclosure of `exp(2 pi i j / n)`.
pub fn root_of_unity(j: i64, n: u64, prec: u32) -> ComplexInterval {
    let n_i = n as i64;
    let mut j = j.rem_euclid(n_i);
    if 2 * j > n_i {
        j -= n_i;
    }
    let w = prec + GUARD_BITS;
    // theta in [-pi, pi]
    let theta = pi(w).shl(1).mul(&DyadicInterval::from_rat(
        &BigRat::new(BigInt::from(j), BigInt::from(n)),
        w,
    ));
    let mut cos = DyadicInterval::from_int(1, w);
    let mut sin = DyadicInterval::from_int(0, w);
    let mut term = DyadicInterval::from_int(1, w);
    let eps_mag = -(w as i64) - 4;
    for i in 1i64.. {
        term = term.mul(&theta).div_int(i);
        let signed = if (i / 2) % 2 == 0 {
            term.clone()
        } else {
            term.neg()
        };
        if i % 2 == 0 {
            cos = cos.add(&signed);
        } else {
            sin = sin.add(&signed);
        }
        // |theta| < 4, so from i = 8 on each term at most halves the previous
        if i >= 8 && term.mag().magnitude() < eps_mag {
            break;
        }
    }
    let r = term.mag();
    ComplexInterval {
        re: cos.widen(&r).with_prec(prec),
        im: sin.widen(&r).with_prec(prec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};
    use proptest::prelude::*;

    /// Decimal digits of a reference constant, as an exact rational with
    /// the given half-width in units of the last digit.
    fn decimal(digits: &str, ulps: i64) -> (BigRat, BigRat) {
        let (int_part, frac) = digits.split_once('.').unwrap();
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let n: BigInt = format!("{int_part}{frac}").parse().unwrap();
        let v = BigRat::new(n, scale.clone());
        (v, BigRat::new(BigInt::from(ulps), scale))
    }

    fn assert_encloses(iv: &DyadicInterval, digits: &str) {
        let (v, r) = decimal(digits, 1);
        let lo = iv.lo().to_rat();
        let hi = iv.hi().to_rat();
        assert!(lo <= &v + &r && &v - &r <= hi, "{iv} vs {digits}");
    }

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";
    const E_50: &str = "2.71828182845904523536028747135266249775724709369995";
    const SQRT5_50: &str = "2.23606797749978969640917366873127623544061835961152";
    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436025";
    // (4/3)^((1+sqrt 5)/2)
    const POW_REF: &str = "1.59277753755804198464069041213056674873489718731679";

    #[test]
    fn from_rat_and_surd() {
        let third = DyadicInterval::from_rat(&rat(1, 3), 20);
        assert!(third.contains_rat(&rat(1, 3)));
        assert!(third.width().to_rat() <= rat(1, 1 << 19));

        let phi = DyadicInterval::from_surd(&rat(1, 2), &rat(1, 2), 5, 80);
        assert_encloses(&phi, "1.6180339887498948482045868343656381177203091798058");
        let bound = rat(2, 1) * BigRat::new(BigInt::one(), BigInt::one() << 79u32);
        assert!(phi.width().to_rat() <= bound);

        let zero = DyadicInterval::from_surd(&int(0), &int(0), 5, 30);
        assert!(zero.lo().is_zero() && zero.hi().is_zero());

        // heavy cancellation still meets the width bound
        let tiny = DyadicInterval::from_surd(&rat(-2_236_068, 1_000_000), &int(1), 5, 40);
        let bound = BigRat::new(BigInt::one(), BigInt::one() << 39u32);
        assert!(tiny.width().to_rat() <= bound);
        assert!(tiny.hi().signum() == Ordering::Less);
    }

    #[test]
    fn constants() {
        let p = pi(30);
        assert!(p.lo().to_rat() >= decimal("3.1415926525", 0).0);
        assert!(p.hi().to_rat() <= decimal("3.1415926545", 0).0);
        assert_encloses(&pi(160), PI_50);
        assert!(pi(160).width().magnitude() < -150);
        assert_encloses(&pi(4), "3.14159");
        for p in [4u32, 30, 64, 200] {
            let bound = BigRat::new(BigInt::from(2), BigInt::one() << p);
            assert!(pi(p).width().to_rat() <= bound && e(p).width().to_rat() <= bound);
        }
        assert_encloses(&e(30), "2.718281828");
        assert_encloses(&e(170), E_50);
        assert_encloses(&ln2(170), LN2_50);
    }

    #[test]
    fn elementary_functions() {
        let one = DyadicInterval::from_int(0, 40).exp();
        assert!(one.contains(&Dyadic::from_int(1)));

        let s5 = DyadicInterval::from_int(5, 170).sqrt().unwrap();
        assert_encloses(&s5, SQRT5_50);

        let base = DyadicInterval::from_rat(&rat(4, 3), 170);
        let expo = DyadicInterval::from_surd(&rat(1, 2), &rat(1, 2), 5, 170);
        assert_encloses(&base.pow(&expo).unwrap(), POW_REF);

        let l = DyadicInterval::from_int(1000, 170).ln().unwrap();
        assert_encloses(&l, "6.90775527898213705205397436405309262280330446588631");
        let small = DyadicInterval::from_rat(&rat(1, 1000), 170).ln().unwrap();
        assert_encloses(
            &small,
            "-6.90775527898213705205397436405309262280330446588631",
        );
        let big_exp = DyadicInterval::from_int(-30, 170).exp();
        assert_encloses(
            &big_exp,
            "0.00000000000009357622968840174604915832223378706744",
        );
    }

    #[test]
    fn domain_errors() {
        let z = DyadicInterval::new(Dyadic::from_int(-1), Dyadic::from_int(1), 30);
        assert_eq!(z.recip(), Err(RealError::DivisionByZero));
        assert_eq!(z.sqrt(), Err(RealError::NegativeSqrt));
        assert_eq!(z.ln(), Err(RealError::NonPositiveLog));
        assert_eq!(
            z.pow(&DyadicInterval::from_int(2, 30)),
            Err(RealError::NonPositivePowBase)
        );
        assert!(z.pow_int(2).is_ok());
        assert_eq!(z.pow_int(2).unwrap().lo().signum(), Ordering::Equal);
    }

    #[test]
    fn pow_routes_agree() {
        let base = DyadicInterval::from_rat(&rat(7, 5), 100);
        for q in [rat(3, 1), rat(-2, 1), rat(5, 2), rat(-3, 2), rat(2, 3)] {
            let direct = base.pow_rat(&q).unwrap();
            let via_exp = base.pow(&DyadicInterval::from_rat(&q, 100)).unwrap();
            // mutual containment up to overlap
            assert!(
                direct.lo() <= via_exp.hi() && via_exp.lo() <= direct.hi(),
                "q = {q}"
            );
        }
    }

    #[test]
    fn resolve_compare_contract() {
        let golden = |p: u32| Ok(DyadicInterval::from_surd(&rat(1, 2), &rat(1, 2), 5, p));
        let two = |p: u32| Ok(DyadicInterval::from_int(2, p));
        assert_eq!(
            resolve_compare(golden, two, 4096, None),
            Ok(Comparison::Less)
        );

        let hook: &dyn Fn() -> Option<Ordering> = &|| Some(Ordering::Equal);
        assert_eq!(
            resolve_compare(two, two, 4096, Some(hook)),
            Ok(Comparison::Equal)
        );
        assert_eq!(
            resolve_compare(two, two, 256, None),
            Ok(Comparison::Unresolved)
        );

        let s5 = |p: u32| DyadicInterval::from_int(5, p).sqrt();
        let trunc = |p: u32| Ok(DyadicInterval::from_rat(&rat(22_360_679, 10_000_000), p));
        assert_eq!(
            resolve_compare(s5, trunc, 12, None),
            Ok(Comparison::Unresolved)
        );
        assert_eq!(
            resolve_compare(s5, trunc, 4096, None),
            Ok(Comparison::Greater)
        );
    }

    #[test]
    fn roots_of_unity() {
        for n in [1u64, 3, 5, 7, 12] {
            for j in 0..n as i64 {
                let z = root_of_unity(j, n, 100);
                // |z|^2 encloses 1
                let m = z.re.sqr().add(&z.im.sqr());
                assert!(m.contains(&Dyadic::from_int(1)), "n = {n}, j = {j}");
                assert!(z.width().magnitude() < -90);
            }
        }
        let i = root_of_unity(1, 4, 60);
        assert!(i.re.contains_zero() && i.im.contains(&Dyadic::from_int(1)));
        // sum of the 5th roots is zero
        let s = (0..5).fold(ComplexInterval::zero(80), |acc, j| {
            acc.add(&root_of_unity(j, 5, 80))
        });
        assert!(s.contains_zero());
    }

    #[derive(Debug, Clone)]
    enum Expr {
        Lit(i64, i64),
        Add(Box<Expr>, Box<Expr>),
        Mul(Box<Expr>, Box<Expr>),
        Exp(Box<Expr>),
        Ln(Box<Expr>),
        Sqrt(Box<Expr>),
    }

    // Positive-valued expression trees with modest magnitudes.
    fn expr() -> impl Strategy<Value = Expr> {
        let leaf = (1i64..40, 1i64..20).prop_map(|(n, d)| Expr::Lit(n, d));
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                inner
                    .clone()
                    .prop_map(|a| Expr::Exp(Box::new(Expr::Ln(Box::new(a))))),
                inner.clone().prop_map(|a| Expr::Sqrt(Box::new(a))),
                inner.prop_map(|a| Expr::Ln(Box::new(Expr::Add(
                    Box::new(a),
                    Box::new(Expr::Lit(1, 1))
                )))),
            ]
        })
    }

    fn eval(e: &Expr, p: u32) -> DyadicInterval {
        match e {
            Expr::Lit(n, d) => DyadicInterval::from_rat(&rat(*n, *d), p),
            Expr::Add(a, b) => eval(a, p).add(&eval(b, p)),
            Expr::Mul(a, b) => eval(a, p).mul(&eval(b, p)),
            Expr::Exp(a) => eval(a, p).exp(),
            Expr::Ln(a) => eval(a, p).ln().unwrap(),
            Expr::Sqrt(a) => eval(a, p).sqrt().unwrap(),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn refinement_is_nested_and_narrower(e in expr(), p in 40u32..120) {
            let coarse = eval(&e, p);
            let fine = eval(&e, 2 * p);
            // both are enclosures of the same value, so they must overlap
            prop_assert!(fine.lo() <= coarse.hi() && coarse.lo() <= fine.hi());
            prop_assert!(fine.width().magnitude() <= coarse.width().magnitude());
            let reference = eval(&e, 400);
            prop_assert!(reference.lo() <= coarse.hi() && coarse.lo() <= reference.hi());
            prop_assert!(reference.lo() <= fine.hi() && fine.lo() <= reference.hi());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn exp_ln_roundtrip(n in 1i64..10_000, d in 1i64..1000) {
            let x = DyadicInterval::from_rat(&rat(n, d), 90);
            prop_assert!(x.ln().unwrap().exp().contains_rat(&rat(n, d)));
        }
    }
}
