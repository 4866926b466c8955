//! Coefficient bounds for `Psi_d` and `Xi_d`.
//!
//! `F_{d,n}` (resp. `G_{d,n}`) is the largest of `phi(f)/2` over divisors
//! `1 < f <= n` of `d` and the surd `|1 + sqrt(D)|/2` (resp.
//! `(1 + sqrt(d))/2`). The rising-factorial bound is
//! `2 F (F+1) ... (F+n-1) / n!`; the three-way bound adds Stirling-type
//! and binomial estimates that are only checked through intervals.

use crate::error::CheckError;
use crate::error::RealError;
use crate::kraitchik::KraitchikPair;
use crate::numtheory::{divisors, euler_phi};
use crate::powersums::DiscriminantContext;
use crate::qfield::{cmp_real, cmp_surd, QuadElem};
use crate::realint::{self, resolve_compare, Comparison, DyadicInterval};
use crate::ring::BigRat;
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Outcome of a bound check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Falsified,
    Unresolved,
}

impl Verdict {
    /// Worst of several verdicts: falsified beats unresolved beats verified.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts
            .into_iter()
            .fold(Verdict::Verified, |acc, v| match (acc, v) {
                (Verdict::Falsified, _) | (_, Verdict::Falsified) => Verdict::Falsified,
                (Verdict::Unresolved, _) | (_, Verdict::Unresolved) => Verdict::Unresolved,
                _ => Verdict::Verified,
            })
    }

    /// Verdict for a claimed `lhs <= rhs` (`strict = false`) or `lhs < rhs`.
    pub fn from_comparison(c: Comparison, strict: bool) -> Verdict {
        match c {
            Comparison::Less => Verdict::Verified,
            Comparison::Equal if !strict => Verdict::Verified,
            Comparison::Equal | Comparison::Greater => Verdict::Falsified,
            Comparison::Unresolved => Verdict::Unresolved,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Falsified => "falsified",
            Verdict::Unresolved => "unresolved",
        })
    }
}

/// An exact positive real of the form `phi(f)/2` or `x + y sqrt(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    HalfInteger(BigRat),
    Surd { x: BigRat, y: BigRat, radicand: u64 },
}

impl BoundValue {
    /// `sqrt(m) / 2` with the square part of `m` pulled out.
    fn half_sqrt(m: u64) -> Self {
        let mut c = 1u64;
        let mut s = m;
        let mut p = 2u64;
        while p * p <= s {
            while s.is_multiple_of(p * p) {
                s /= p * p;
                c *= p;
            }
            p += 1;
        }
        let half_c = BigRat::new(BigInt::from(c), BigInt::from(2));
        if s == 1 {
            BoundValue::HalfInteger(half_c)
        } else {
            BoundValue::Surd {
                x: BigRat::zero(),
                y: half_c,
                radicand: s,
            }
        }
    }

    /// `(1 + sqrt(d)) / 2`.
    fn golden_like(d: u64) -> Self {
        let s = d.sqrt();
        if s * s == d {
            return BoundValue::HalfInteger(BigRat::new(BigInt::from(1 + s), BigInt::from(2)));
        }
        let half = BigRat::new(BigInt::one(), BigInt::from(2));
        BoundValue::Surd {
            x: half.clone(),
            y: half,
            radicand: d,
        }
    }

    /// This value in `Q(sqrt(r))`; `r` is used only when the value is rational.
    pub fn to_quad(&self, r: i64) -> QuadElem {
        match self {
            BoundValue::HalfInteger(q) => QuadElem::rational(q.clone(), r),
            BoundValue::Surd { x, y, radicand } => {
                QuadElem::new(x.clone(), y.clone(), *radicand as i64)
            }
        }
        .expect("valid radicand")
    }

    pub fn enclose(&self, prec: u32) -> DyadicInterval {
        match self {
            BoundValue::HalfInteger(q) => DyadicInterval::from_rat(q, prec),
            BoundValue::Surd { x, y, radicand } => DyadicInterval::from_surd(x, y, *radicand, prec),
        }
    }

    /// Exact order against a rational.
    pub fn cmp_rat(&self, q: &BigRat) -> Ordering {
        match self {
            BoundValue::HalfInteger(v) => v.cmp(q),
            BoundValue::Surd { x, y, radicand } => cmp_surd(x, y, *radicand, q),
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::HalfInteger(q) => write!(f, "{q}"),
            BoundValue::Surd { x, y, radicand } => {
                if x.is_zero() {
                    write!(f, "{y}*sqrt({radicand})")
                } else {
                    write!(f, "{x} + {y}*sqrt({radicand})")
                }
            }
        }
    }
}

fn check_index(ctx: &DiscriminantContext, n: u64, lo: u64) -> Result<(), CheckError> {
    if ctx.d() < 5 {
        return Err(crate::error::ModulusError::TooSmall(ctx.d(), 5).into());
    }
    if n < lo || n > ctx.dprime() {
        return Err(CheckError::IndexRange {
            n,
            lo,
            hi: ctx.dprime(),
        });
    }
    Ok(())
}

fn max_with_divisors(d: u64, n: u64, surd: BoundValue) -> BoundValue {
    let best_rational = divisors(d)
        .into_iter()
        .filter(|&f| 1 < f && f <= n)
        .map(|f| BigRat::new(BigInt::from(euler_phi(f)), BigInt::from(2)))
        .max();
    match best_rational {
        Some(q) if surd.cmp_rat(&q) != Ordering::Greater => BoundValue::HalfInteger(q),
        _ => surd,
    }
}

/// `F_{d,n}`.
pub fn f_value(ctx: &DiscriminantContext, n: u64) -> BoundValue {
    let d = ctx.d();
    let surd = if ctx.disc() > 0 {
        BoundValue::golden_like(d)
    } else {
        BoundValue::half_sqrt(d + 1)
    };
    max_with_divisors(d, n, surd)
}

/// `G_{d,n}`.
pub fn g_value(ctx: &DiscriminantContext, n: u64) -> BoundValue {
    max_with_divisors(ctx.d(), n, BoundValue::golden_like(ctx.d()))
}

/// `G_d = G_{d, floor(phi(d)/4)}`.
pub fn g_d(ctx: &DiscriminantContext) -> BoundValue {
    g_value(ctx, ctx.phi() / 4)
}

/// An exact bound value: rational, or in the real quadratic field of `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactBound {
    Rational(BigRat),
    Quad(QuadElem),
}

impl ExactBound {
    pub fn to_quad(&self, r: i64) -> QuadElem {
        match self {
            ExactBound::Rational(q) => QuadElem::rational(q.clone(), r).expect("valid radicand"),
            ExactBound::Quad(x) => x.clone(),
        }
    }
}

/// `2 F (F+1) ... (F+n-1) / n!`, exactly.
pub fn rising_bound(f: &BoundValue, n: u64) -> ExactBound {
    // accumulate over Z[sqrt(r)] with a common denominator, divide once
    let (x, y, r) = match f {
        BoundValue::HalfInteger(q) => (q.clone(), BigRat::zero(), 1),
        BoundValue::Surd { x, y, radicand } => (x.clone(), y.clone(), *radicand),
    };
    let den = x.denom().lcm(y.denom());
    let xn = x.numer() * (&den / x.denom());
    let yn = y.numer() * (&den / y.denom());
    let rb = BigInt::from(r);
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    let mut scale = BigInt::one();
    for i in 0..n {
        let s = &xn + &den * i;
        let (np, nq) = (&p * &s + &q * &yn * &rb, &p * &yn + &q * &s);
        p = np;
        q = nq;
        scale *= &den * (i + 1);
    }
    let two = BigInt::from(2);
    let pr = BigRat::new(&p * &two, scale.clone());
    match f {
        BoundValue::HalfInteger(_) => ExactBound::Rational(pr),
        BoundValue::Surd { .. } => ExactBound::Quad(
            QuadElem::new(pr, BigRat::new(q * two, scale), r as i64).expect("valid radicand"),
        ),
    }
}

/// Exact order of two real quadratic quantities, falling back to
/// validated intervals when their fields differ.
fn compare_real(lhs: &QuadElem, rhs: &QuadElem, max_prec: u32) -> Result<Comparison, RealError> {
    if let Some(ord) = cmp_real(lhs, rhs) {
        return Ok(ord.into());
    }
    let enclose =
        |x: &QuadElem, p: u32| DyadicInterval::from_surd(x.a(), x.b(), x.radicand() as u64, p);
    resolve_compare(
        |p| Ok(enclose(lhs, p)),
        |p| Ok(enclose(rhs, p)),
        max_prec,
        None,
    )
}

/// Per-`n` outcome of the rising-factorial bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientBoundReport {
    pub n: u64,
    pub f: BoundValue,
    pub g: BoundValue,
    /// `|a + b sqrt(D)| <= 2 F (F+1)...(F+n-1)/n!`
    pub modulus: Verdict,
    /// `|a| + |b| sqrt(d) <= 2 G (G+1)...(G+n-1)/n!`
    pub l1: Verdict,
    /// Same bound applied to `|2 u_{d,n}| = |a - b sqrt(D)|`; informational.
    pub conjugate: Verdict,
}

impl CoefficientBoundReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::combine([self.modulus, self.l1])
    }
}

/// `|x|` vs `bound` with `x = a + b sqrt(D)` read as a complex number.
fn modulus_le(
    x: &QuadElem,
    bound: &ExactBound,
    d: u64,
    max_prec: u32,
) -> Result<Verdict, RealError> {
    let bound_q = bound.to_quad(d as i64);
    let cmp = if x.radicand() < 0 {
        // both sides nonnegative: compare squares
        let lhs2 = match x.abs_square() {
            crate::qfield::AbsSquare::Rational(q) => q,
            crate::qfield::AbsSquare::Real(_) => unreachable!("imaginary field"),
        };
        let lhs2 = QuadElem::rational(lhs2, bound_q.radicand()).expect("valid radicand");
        compare_real(&lhs2, &(&bound_q * &bound_q), max_prec)?
    } else {
        compare_real(&x.real_abs(), &bound_q, max_prec)?
    };
    Ok(Verdict::from_comparison(cmp, false))
}

/// Both rising-factorial inequalities for one `(d, n)`, decided exactly.
pub fn check_coefficient_bounds(
    pair: &KraitchikPair,
    n: u64,
    max_prec: u32,
) -> Result<CoefficientBoundReport, CheckError> {
    let ctx = &pair.ctx;
    check_index(ctx, n, 0)?;
    let d = ctx.d();
    let disc = ctx.disc();
    let idx = n as usize;
    let a = BigRat::from_integer(pair.a[idx].clone());
    let b = BigRat::from_integer(pair.b_at(idx));
    let f = f_value(ctx, n);
    let g = g_value(ctx, n);
    let fb = rising_bound(&f, n);
    let gb = rising_bound(&g, n);

    let plus = QuadElem::new(a.clone(), b.clone(), disc).expect("D squarefree");
    let modulus = modulus_le(&plus, &fb, d, max_prec)?;
    let conjugate = modulus_le(&plus.conj(), &fb, d, max_prec)?;

    let l1_lhs = QuadElem::new(a.abs(), b.abs(), d as i64).expect("d squarefree");
    let l1 = Verdict::from_comparison(
        compare_real(&l1_lhs, &gb.to_quad(d as i64), max_prec)?,
        false,
    );

    Ok(CoefficientBoundReport {
        n,
        f,
        g,
        modulus,
        l1,
        conjugate,
    })
}

/// The three upper bounds of the corollary at precision `p`.
pub fn corollary_bounds(f: &BoundValue, n: u64, p: u32) -> Result<[DyadicInterval; 3], RealError> {
    let fi = f.enclose(p);
    let ni = DyadicInterval::from_int(n as i64, p);
    let one = DyadicInterval::from_int(1, p);
    let two = DyadicInterval::from_int(2, p);
    let e = realint::e(p);
    let pi = realint::pi(p);
    let e_pi = e.mul(&pi);
    let f_minus_1 = fi.sub(&one);
    let f_n_1 = fi.add(&ni).sub(&one);
    // e^{1/(6(F+n))}
    let t = DyadicInterval::from_int(6, p)
        .mul(&fi.add(&ni))
        .recip()?
        .exp();
    let half = BigRat::new(BigInt::one(), BigInt::from(2));

    let pref1 = two.mul(&t).div(&e_pi.mul(&ni))?.sqrt()?;
    let base1 = e.mul(&f_n_1).div(&f_minus_1)?;
    let b1 = pref1.mul(&base1.pow(&fi.sub(&DyadicInterval::from_rat(&half, p)))?);

    let pref2 = two.mul(&t).div(&e_pi.mul(&f_minus_1))?.sqrt()?;
    let base2 = e.mul(&f_n_1).div(&ni)?;
    let b2 = pref2.mul(&base2.pow_rat(&(BigRat::from_integer(BigInt::from(n)) + half))?);

    let b3 = match f {
        BoundValue::HalfInteger(q) => two.pow_rat(&(q + BigRat::from_integer(BigInt::from(n))))?,
        BoundValue::Surd { .. } => two.pow(&fi.add(&ni))?,
    };
    Ok([b1, b2, b3])
}

/// Per-`n` outcome of the three-way corollary bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    pub n: u64,
    pub f: BoundValue,
    /// `|a + b sqrt(d)| < min{...}`, the statement as written.
    pub literal: Verdict,
    /// `|a + b sqrt(D)| < min{...}`; informational.
    pub disc_variant: Verdict,
}

fn strictly_below(
    lhs: &dyn Fn(u32) -> Result<DyadicInterval, RealError>,
    f: &BoundValue,
    n: u64,
    max_prec: u32,
) -> Result<Verdict, RealError> {
    let memo: RefCell<HashMap<u32, [DyadicInterval; 3]>> = RefCell::new(HashMap::new());
    let bounds_at = |p: u32| -> Result<[DyadicInterval; 3], RealError> {
        if let Some(b) = memo.borrow().get(&p) {
            return Ok(b.clone());
        }
        let b = corollary_bounds(f, n, p)?;
        memo.borrow_mut().insert(p, b.clone());
        Ok(b)
    };
    let mut verdicts = Vec::with_capacity(3);
    for which in 0..3 {
        let rhs = |p: u32| bounds_at(p).map(|b| b[which].clone());
        let c = resolve_compare(lhs, rhs, max_prec, None)?;
        verdicts.push(Verdict::from_comparison(c, true));
    }
    Ok(Verdict::combine(verdicts))
}

/// The three-way bound for one `(d, n)`, `1 <= n <= d'`.
pub fn check_corollary(
    pair: &KraitchikPair,
    n: u64,
    max_prec: u32,
) -> Result<CorollaryReport, CheckError> {
    let ctx = &pair.ctx;
    check_index(ctx, n, 1)?;
    let d = ctx.d();
    let idx = n as usize;
    let a = BigRat::from_integer(pair.a[idx].clone());
    let b = BigRat::from_integer(pair.b_at(idx));
    let f = f_value(ctx, n);
    assert!(
        f.cmp_rat(&BigRat::one()) == Ordering::Greater,
        "F must exceed 1"
    );

    let literal_abs = QuadElem::new(a.clone(), b.clone(), d as i64)
        .expect("d squarefree")
        .real_abs();
    let literal_lhs = |p: u32| {
        Ok(DyadicInterval::from_surd(
            literal_abs.a(),
            literal_abs.b(),
            d,
            p,
        ))
    };
    let literal = strictly_below(&literal_lhs, &f, n, max_prec)?;

    let disc_variant = if ctx.disc() > 0 {
        literal
    } else {
        let sq = &a * &a + &b * &b * BigRat::from_integer(BigInt::from(d));
        let lhs = |p: u32| DyadicInterval::from_rat(&sq, p).sqrt();
        strictly_below(&lhs, &f, n, max_prec)?
    };
    Ok(CorollaryReport {
        n,
        f,
        literal,
        disc_variant,
    })
}
