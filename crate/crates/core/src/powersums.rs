//! Power sums of the quadratic-residue roots of unity.
//!
//! For odd squarefree `d` and `gcd(k, d) = 1` the sum of `zeta_d^(k a)`
//! over residues `a` is `(mu(d) + (k/d) sqrt(D)) / 2`; when
//! `gcd(k, d) = f > 1` it collapses to the rational `mu(d/f) phi(f) / 2`.
//! The numeric routines below sum actual roots of unity and serve as an
//! independent cross-check of these closed forms.

use crate::error::ModulusError;
use crate::numtheory::{euler_phi, factor, gcd, jacobi, mobius};
use crate::qfield::{cmp_surd, QuadElem};
use crate::realint::{root_of_unity, ComplexInterval, DyadicInterval};
use crate::ring::BigRat;
use num_bigint::BigInt;
use num_traits::Zero;
use std::cmp::Ordering;

/// Invariants of an odd squarefree modulus `d >= 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantContext {
    d: u64,
    disc: i64,
    phi: u64,
    dprime: u64,
    mu: i8,
    composite: bool,
}

impl DiscriminantContext {
    pub fn new(d: u64) -> Result<Self, ModulusError> {
        if d.is_multiple_of(2) {
            return Err(ModulusError::Even(d));
        }
        if d < 3 {
            return Err(ModulusError::TooSmall(d, 3));
        }
        let f = factor(d);
        if !f.is_squarefree() {
            return Err(ModulusError::NotSquarefree(d));
        }
        let phi = euler_phi(d);
        let sign = if ((d - 1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        };
        Ok(Self {
            d,
            disc: sign * d as i64,
            phi,
            dprime: phi / 2,
            mu: mobius(d),
            composite: !f.is_prime(),
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `D = (-1)^((d-1)/2) d`.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// `d' = phi(d) / 2`.
    pub fn dprime(&self) -> u64 {
        self.dprime
    }

    pub fn mu(&self) -> i8 {
        self.mu
    }

    pub fn is_composite(&self) -> bool {
        self.composite
    }
}

/// `s_{d,k}` in closed form, as an element of `Q(sqrt(D))`.
pub fn power_sum_s(ctx: &DiscriminantContext, k: u64) -> QuadElem {
    assert!(k >= 1, "power sums are indexed from 1");
    let d = ctx.d();
    let f = gcd(k % d, d);
    let f = if f == 0 { d } else { f };
    let two = BigInt::from(2);
    if f == 1 {
        let chi = jacobi((k % d) as i64, d).expect("d is odd");
        QuadElem::new(
            BigRat::new(BigInt::from(ctx.mu()), two.clone()),
            BigRat::new(BigInt::from(chi), two),
            ctx.disc(),
        )
        .expect("D is squarefree")
    } else {
        let v = mobius(d / f) as i64 * euler_phi(f) as i64;
        QuadElem::rational(BigRat::new(BigInt::from(v), two), ctx.disc()).expect("D is squarefree")
    }
}

/// Ramanujan sum `sum_{gcd(a,d)=1} zeta_d^(k a) = mu(d/f) phi(d) / phi(d/f)`,
/// `f = gcd(k, d)`.
pub fn ramanujan_h(d: u64, k: u64) -> i64 {
    assert!(d >= 1 && k >= 1);
    let f = gcd(k, d);
    let q = d / f;
    mobius(q) as i64 * (euler_phi(d) / euler_phi(q)) as i64
}

/// Bits needed for `digits` decimal digits plus headroom.
fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

/// Enclosures of `zeta_d^j` for `j = 0..d`.
pub fn roots_of_unity(d: u64, prec: u32) -> Vec<ComplexInterval> {
    (0..d as i64).map(|j| root_of_unity(j, d, prec)).collect()
}

/// `sum_{1 <= a <= d} weight(a) zeta_d^(k a)` from a precomputed root table.
fn weighted_sum(roots: &[ComplexInterval], k: u64, weight: impl Fn(u64) -> i8) -> ComplexInterval {
    let d = roots.len() as u64;
    let prec = roots[0].re.precision();
    let mut acc = ComplexInterval::zero(prec);
    for a in 1..=d {
        let z = &roots[((k % d) * (a % d) % d) as usize];
        match weight(a) {
            1 => acc = acc.add(z),
            -1 => acc = acc.sub(z),
            _ => {}
        }
    }
    acc
}

/// Direct numeric `s_{d,k}` over the residue roots, from a root table.
pub fn residue_power_sum_numeric(roots: &[ComplexInterval], k: u64) -> ComplexInterval {
    let d = roots.len() as u64;
    weighted_sum(roots, k, |a| {
        (jacobi(a as i64, d).expect("odd d") == 1) as i8
    })
}

/// Validated enclosure of the quadratic Gauss sum `g_{d,k}`.
pub fn gauss_sum_numeric(d: u64, k: u64, digits: u32) -> ComplexInterval {
    assert!(d % 2 == 1 && d >= 3, "odd modulus expected");
    let roots = roots_of_unity(d, digits_to_bits(digits));
    weighted_sum(&roots, k, |a| jacobi(a as i64, d).expect("odd d"))
}

/// Validated enclosure of the Ramanujan sum `h_{d,k}`.
pub fn ramanujan_numeric(d: u64, k: u64, digits: u32) -> ComplexInterval {
    let roots = roots_of_unity(d, digits_to_bits(digits));
    weighted_sum(&roots, k, |a| (gcd(a, d) == 1) as i8)
}

fn between(lo: &BigRat, x: &BigRat, y: &BigRat, r: u64, hi: &BigRat) -> bool {
    cmp_surd(x, y, r, lo) != Ordering::Less && cmp_surd(x, y, r, hi) != Ordering::Greater
}

/// Whether the exact value `x` (read as a complex number) lies in `iv`.
pub fn encloses_exact(iv: &ComplexInterval, x: &QuadElem) -> bool {
    let rl = |i: &DyadicInterval| (i.lo().to_rat(), i.hi().to_rat());
    let (re_lo, re_hi) = rl(&iv.re);
    let (im_lo, im_hi) = rl(&iv.im);
    let zero = BigRat::zero();
    let r = x.radicand();
    if r < 0 || x.is_rational() {
        between(&re_lo, x.a(), &zero, 1, &re_hi)
            && between(&im_lo, &zero, x.b(), r.unsigned_abs(), &im_hi)
    } else {
        between(&re_lo, x.a(), x.b(), r as u64, &re_hi) && iv.im.contains_rat(&zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realint::Dyadic;
    use crate::ring::{int, rat};

    fn ctx(d: u64) -> DiscriminantContext {
        DiscriminantContext::new(d).unwrap()
    }

    #[test]
    fn context_validation() {
        assert_eq!(
            DiscriminantContext::new(9),
            Err(ModulusError::NotSquarefree(9))
        );
        assert_eq!(DiscriminantContext::new(10), Err(ModulusError::Even(10)));
        assert_eq!(
            DiscriminantContext::new(1),
            Err(ModulusError::TooSmall(1, 3))
        );
        let c = ctx(15);
        assert_eq!((c.disc(), c.phi(), c.dprime(), c.mu()), (-15, 8, 4, 1));
        assert_eq!(ctx(5).disc(), 5);
        assert_eq!(ctx(7).disc(), -7);
        for d in crate::numtheory::odd_squarefree_range(3, 255) {
            let c = ctx(d);
            assert_eq!(c.disc().rem_euclid(4), 1);
            assert_eq!(2 * c.dprime(), c.phi());
        }
    }

    #[test]
    fn closed_form_examples() {
        let s = power_sum_s(&ctx(5), 1);
        assert_eq!(s, QuadElem::new(rat(-1, 2), rat(1, 2), 5).unwrap());
        assert_eq!(
            power_sum_s(&ctx(15), 3),
            QuadElem::rational(int(-1), -15).unwrap()
        );
        assert_eq!(
            power_sum_s(&ctx(15), 15),
            QuadElem::rational(int(4), -15).unwrap()
        );
        // s_{d,d} is the count of residues
        assert_eq!(
            power_sum_s(&ctx(7), 14),
            QuadElem::rational(int(3), -7).unwrap()
        );
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_h(5, 5), 4);
        assert_eq!(ramanujan_h(5, 1), -1);
        assert_eq!(ramanujan_h(15, 3), -2);
        assert_eq!(ramanujan_h(15, 3), ramanujan_h(5, 3) * ramanujan_h(3, 3));
        // non-squarefree moduli follow the general formula
        assert_eq!(ramanujan_h(9, 3), -3);
        assert_eq!(ramanujan_h(9, 1), 0);
    }

    #[test]
    fn gauss_sum_examples() {
        let g5 = gauss_sum_numeric(5, 1, 30);
        assert!(encloses_exact(&g5, &QuadElem::sqrt_of(5).unwrap()));
        let g7 = gauss_sum_numeric(7, 1, 30);
        assert!(encloses_exact(&g7, &QuadElem::sqrt_of(-7).unwrap()));
        let g15 = gauss_sum_numeric(15, 3, 30);
        assert!(g15.contains_zero());
        assert!(g15.width().magnitude() < -90);
    }

    #[test]
    fn ramanujan_matches_numeric() {
        for d in [3u64, 5, 9, 15, 21, 35] {
            for k in 1..=d {
                let iv = ramanujan_numeric(d, k, 20);
                assert!(
                    iv.re.contains(&Dyadic::from_int(ramanujan_h(d, k))),
                    "d={d} k={k}"
                );
                assert!(iv.im.contains_zero());
            }
        }
    }

    #[test]
    fn conjugate_pair_sums_to_ramanujan() {
        for d in crate::numtheory::odd_squarefree_range(3, 101) {
            let c = ctx(d);
            for k in 1..=2 * d {
                let s = power_sum_s(&c, k);
                let sum = &s + &s.conj();
                assert_eq!(
                    sum,
                    QuadElem::rational(int(ramanujan_h(d, k)), c.disc()).unwrap()
                );
                if k % d != 0 {
                    assert_eq!(s, power_sum_s(&c, k % d));
                }
            }
        }
    }

    #[test]
    fn gauss_sum_modulus_is_multiplicative() {
        for (d, m) in [(3u64, 5u64), (3, 7), (5, 7), (3, 11), (5, 13)] {
            let abs2 = |n: u64| {
                let g = gauss_sum_numeric(n, 1, 25);
                g.re.sqr().add(&g.im.sqr())
            };
            let lhs = abs2(d * m);
            let rhs = abs2(d).mul(&abs2(m));
            assert!(lhs.lo() <= rhs.hi() && rhs.lo() <= lhs.hi(), "{d}*{m}");
            assert!(lhs.contains(&Dyadic::from_int((d * m) as i64)));
        }
    }
}
