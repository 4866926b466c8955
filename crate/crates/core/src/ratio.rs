//! Closeness of `Xi_d(x) / Psi_d(x)` to `1 / (2x - mu(d))` for rational `x > 2 G_d`.

use crate::bounds::{g_d, BoundValue, Verdict};
use crate::error::{CheckError, RealError};
use crate::kraitchik::KraitchikPair;
use crate::poly::DensePoly;
use crate::realint::{resolve_compare, DyadicInterval};
use crate::ring::BigRat;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Precision used for the reported right-hand-side enclosure.
const REPORT_PRECISION: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub d: u64,
    pub x: BigRat,
    pub g: BoundValue,
    /// `|Xi(x)/Psi(x) - 1/(2x - mu)|`.
    pub lhs_exact: BigRat,
    pub rhs_enclosure: DyadicInterval,
    pub psi_positive: bool,
    pub verdict: Verdict,
}

impl RatioReport {
    pub fn lhs_exact_f64(&self) -> f64 {
        self.lhs_exact.to_f64().unwrap_or(f64::NAN)
    }
}

fn eval_rat(p: &DensePoly<BigInt>, x: &BigRat) -> BigRat {
    p.coeffs().iter().rev().fold(BigRat::zero(), |acc, c| {
        acc * x + BigRat::from_integer(c.clone())
    })
}

/// `x / ((2x - mu) sqrt(d)) * ((1 - 1/x)^(-G) - 1 - G/x)`.
pub fn ratio_rhs(
    d: u64,
    mu: i8,
    g: &BoundValue,
    x: &BigRat,
    prec: u32,
) -> Result<DyadicInterval, RealError> {
    let two_x_mu =
        x * BigRat::from_integer(BigInt::from(2)) - BigRat::from_integer(BigInt::from(mu));
    let xi = DyadicInterval::from_rat(x, prec);
    let gi = g.enclose(prec);
    let base = DyadicInterval::from_rat(&(BigRat::one() - x.recip()), prec);
    let power = match g {
        BoundValue::HalfInteger(q) => base.pow_rat(&-q)?,
        BoundValue::Surd { .. } => base.pow(&gi.neg())?,
    };
    let bracket = power
        .sub(&DyadicInterval::from_int(1, prec))
        .sub(&gi.div(&xi)?);
    let pref = DyadicInterval::from_rat(&(x / two_x_mu), prec)
        .div(&DyadicInterval::from_int(d as i64, prec).sqrt()?)?;
    Ok(pref.mul(&bracket))
}

/// Checks the ratio estimate at one rational `x`; `x <= 2 G_d` is rejected.
pub fn check_ratio_estimate(
    pair: &KraitchikPair,
    x: &BigRat,
    max_prec: u32,
) -> Result<RatioReport, CheckError> {
    let ctx = &pair.ctx;
    let d = ctx.d();
    let g = g_d(ctx);
    let half_x = x / BigRat::from_integer(BigInt::from(2));
    if g.cmp_rat(&half_x) != Ordering::Less {
        return Err(CheckError::RatioGate {
            d,
            x: x.to_string(),
        });
    }
    let psi = eval_rat(&pair.psi, x);
    let xi = eval_rat(&pair.xi, x);
    let target = (x * BigRat::from_integer(BigInt::from(2))
        - BigRat::from_integer(BigInt::from(ctx.mu())))
    .recip();
    let psi_positive = psi.is_positive();
    let rhs_enclosure = ratio_rhs(d, ctx.mu(), &g, x, REPORT_PRECISION)?;
    if psi.is_zero() {
        return Ok(RatioReport {
            d,
            x: x.clone(),
            g,
            lhs_exact: BigRat::zero(),
            rhs_enclosure,
            psi_positive,
            verdict: Verdict::Falsified,
        });
    }
    let lhs = (xi / psi - target).abs();
    let cmp = resolve_compare(
        |p| Ok(DyadicInterval::from_rat(&lhs, p)),
        |p| ratio_rhs(d, ctx.mu(), &g, x, p),
        max_prec,
        None,
    )?;
    let verdict = if !psi_positive {
        Verdict::Falsified
    } else {
        Verdict::from_comparison(cmp, true)
    };
    Ok(RatioReport {
        d,
        x: x.clone(),
        g,
        lhs_exact: lhs,
        rhs_enclosure,
        psi_positive,
        verdict,
    })
}

pub fn ratio_table(
    pair: &KraitchikPair,
    xs: &[BigRat],
    max_prec: u32,
) -> Vec<Result<RatioReport, CheckError>> {
    xs.iter()
        .map(|x| check_ratio_estimate(pair, x, max_prec))
        .collect()
}

/// Smallest integer `x` with `x > 2 G_d`.
pub fn first_admissible_x(pair: &KraitchikPair) -> u64 {
    let g = g_d(&pair.ctx);
    (1u64..)
        .find(|&x| g.cmp_rat(&BigRat::new(BigInt::from(x), BigInt::from(2))) == Ordering::Less)
        .expect("G_d is finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kraitchik::pair_for;
    use crate::ring::{int, rat};

    fn verdicts(d: u64, xs: &[i64]) -> Vec<Option<Verdict>> {
        let p = pair_for(d).unwrap();
        let xs: Vec<BigRat> = xs.iter().map(|&x| int(x)).collect();
        ratio_table(&p, &xs, 4096)
            .into_iter()
            .map(|r| r.ok().map(|r| r.verdict))
            .collect()
    }

    #[test]
    fn d5_at_four() {
        let p = pair_for(5).unwrap();
        let r = check_ratio_estimate(&p, &int(4), 4096).unwrap();
        assert_eq!(r.lhs_exact, rat(1, 171));
        assert!(r.psi_positive);
        assert_eq!(r.verdict, Verdict::Verified);
        // reference 0.03742065531797714259...
        let lo = r.rhs_enclosure.lo().to_f64();
        assert!((lo - 0.037_420_655_317_977_14).abs() < 1e-15, "{lo}");
    }

    #[test]
    fn gate_rejects_small_x() {
        let p = pair_for(5).unwrap();
        assert!(matches!(
            check_ratio_estimate(&p, &int(3), 4096),
            Err(CheckError::RatioGate { d: 5, .. })
        ));
        assert_eq!(first_admissible_x(&p), 4);
        assert_eq!(
            verdicts(5, &[3, 4, 8]),
            vec![None, Some(Verdict::Verified), Some(Verdict::Verified)]
        );
        assert_eq!(verdicts(7, &[4]), vec![Some(Verdict::Verified)]);
    }

    #[test]
    fn large_x_and_empty_batch() {
        let p = pair_for(5).unwrap();
        let r = check_ratio_estimate(&p, &int(1_000_000), 4096).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(r.lhs_exact < rat(1, 1_000_000_000_000));
        assert!(ratio_table(&p, &[], 4096).is_empty());
    }

    #[test]
    fn rational_points_between_integers() {
        let p = pair_for(13).unwrap();
        // 2 G_13 = 1 + sqrt(13) = 4.6055...
        let r = check_ratio_estimate(&p, &rat(47, 10), 4096).unwrap();
        assert!(r.psi_positive);
        assert!(check_ratio_estimate(&p, &rat(46, 10), 4096).is_err());
        assert_eq!(first_admissible_x(&p), 5);
    }

    #[test]
    fn lhs_decays_quadratically() {
        for d in [5u64, 7, 11, 13, 15] {
            let p = pair_for(d).unwrap();
            let at = |x: i64| check_ratio_estimate(&p, &int(x), 4096).unwrap().lhs_exact;
            let (l1, l2) = (at(100), at(200));
            // at least quadratic decay
            let ratio = l2 / l1;
            assert!(ratio < rat(3, 10), "d = {d}: {ratio}");
        }
    }

    #[test]
    fn psi_positive_past_the_gate() {
        for d in crate::numtheory::odd_squarefree_range(5, 61) {
            let p = pair_for(d).unwrap();
            let x0 = first_admissible_x(&p);
            for x in x0..x0 + 20 {
                assert!(
                    eval_rat(&p.psi, &int(x as i64)).is_positive(),
                    "d = {d}, x = {x}"
                );
            }
        }
    }
}
