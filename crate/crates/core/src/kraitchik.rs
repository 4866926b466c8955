//! Construction of `Psi_d` and `Xi_d`.
//!
//! `U_d^+(X) = sum_n u_{d,n} X^(d'-n)` is the product of `X - zeta_d^a`
//! over quadratic residues `a`. Its coefficients are signed elementary
//! symmetric functions of those roots, obtained from the closed-form power
//! sums through the Girard-Newton recurrence, so no root of unity is ever
//! formed. With `u_{d,n} = (a_{d,n} - b_{d,n} sqrt(D)) / 2`,
//! `Psi_d = sum a_{d,n} X^(d'-n)` and `Xi_d = sum b_{d,n} X^(d'-n)`.

use crate::error::ConstructionError;
use crate::numtheory::{divisors, mobius};
use crate::poly::DensePoly;
use crate::powersums::{power_sum_s, DiscriminantContext};
use crate::qfield::QuadElem;
use crate::ring::BigRat;
use crate::symfunc::newton_elementary;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// `u_{d,0..d'}`.
pub fn u_coefficients(ctx: &DiscriminantContext) -> Vec<QuadElem> {
    let n = ctx.dprime();
    let sums: Vec<QuadElem> = (1..=n).map(|j| power_sum_s(ctx, j)).collect();
    let one = QuadElem::rational(BigRat::one(), ctx.disc()).expect("D is squarefree");
    newton_elementary(&sums, &one)
        .into_iter()
        .enumerate()
        .map(|(k, e)| if k % 2 == 1 { -e } else { e })
        .collect()
}

/// Everything computed for one modulus `d`.
///
/// `a` and `b` use descending-power indexing (`a[n]` multiplies `X^(d'-n)`);
/// `b` holds `b_{d,1..d'}`. The polynomials store ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct KraitchikPair {
    pub ctx: DiscriminantContext,
    pub u: Vec<QuadElem>,
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
    pub psi: DensePoly<BigInt>,
    pub xi: DensePoly<BigInt>,
}

impl KraitchikPair {
    pub fn d(&self) -> u64 {
        self.ctx.d()
    }

    pub fn dprime(&self) -> u64 {
        self.ctx.dprime()
    }

    /// `b_{d,n}` with the convention `b_{d,0} = 0`.
    pub fn b_at(&self, n: usize) -> BigInt {
        if n == 0 {
            BigInt::zero()
        } else {
            self.b[n - 1].clone()
        }
    }

    pub fn a_i64(&self) -> Result<Vec<i64>, ConstructionError> {
        to_i64(&self.a, self.d(), 0)
    }

    pub fn b_i64(&self) -> Result<Vec<i64>, ConstructionError> {
        to_i64(&self.b, self.d(), 1)
    }
}

fn to_i64(v: &[BigInt], d: u64, offset: usize) -> Result<Vec<i64>, ConstructionError> {
    v.iter()
        .enumerate()
        .map(|(i, x)| {
            x.to_i64().ok_or(ConstructionError::Overflow {
                d,
                index: i + offset,
            })
        })
        .collect()
}

fn rat_to_int(q: &BigRat) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// Builds `Psi_d`, `Xi_d` and their coefficient lists.
pub fn psi_xi(ctx: &DiscriminantContext) -> Result<KraitchikPair, ConstructionError> {
    let u = u_coefficients(ctx);
    let d = ctx.d();
    let two = BigRat::from_integer(BigInt::from(2));
    let mut a = Vec::with_capacity(u.len());
    let mut b_full = Vec::with_capacity(u.len());
    for (n, un) in u.iter().enumerate() {
        // a = u + conj(u), b = (conj(u) - u)/sqrt(D) = -2 * (sqrt(D)-part of u)
        let an = rat_to_int(&(un.a() * &two));
        let bn = rat_to_int(&(-(un.b() * &two)));
        match (an, bn) {
            (Some(an), Some(bn)) => {
                a.push(an);
                b_full.push(bn);
            }
            _ => return Err(ConstructionError::NonIntegral { d, index: n }),
        }
    }
    let b: Vec<BigInt> = b_full[1..].to_vec();
    let psi = DensePoly::new(a.iter().rev().cloned().collect());
    let xi = DensePoly::new(b.iter().rev().cloned().collect());
    Ok(KraitchikPair {
        ctx: ctx.clone(),
        u,
        a,
        b,
        psi,
        xi,
    })
}

/// Convenience: validate `d` and build its pair.
pub fn pair_for(d: u64) -> Result<KraitchikPair, crate::Error> {
    let ctx = DiscriminantContext::new(d)?;
    Ok(psi_xi(&ctx)?)
}

/// `Phi_d` as the Möbius product `prod_{e | d} (X^e - 1)^mu(d/e)`.
pub fn cyclotomic(d: u64) -> Result<DensePoly<BigInt>, ConstructionError> {
    assert!(d >= 1);
    let one = BigInt::one();
    let x_e_minus_1 = |e: u64| DensePoly::binomial(e as usize, one.clone(), -one.clone());
    let divs = divisors(d);
    let mut acc = DensePoly::new(vec![one.clone()]);
    for &e in &divs {
        if mobius(d / e) == 1 {
            acc = acc.mul(&x_e_minus_1(e));
        }
    }
    for &e in &divs {
        if mobius(d / e) == -1 {
            let (q, r) = acc.divrem_monic(&x_e_minus_1(e));
            if !r.is_zero() {
                return Err(ConstructionError::NonzeroRemainder { d, e });
            }
            acc = q;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// Lowest degree where `4 Phi_d` and `Psi^2 - D Xi^2` disagree.
    pub first_mismatch: Option<usize>,
}

/// Exact check of `4 Phi_d = Psi_d^2 - D Xi_d^2`.
pub fn verify_identity(pair: &KraitchikPair) -> Result<IdentityCheck, ConstructionError> {
    let four = BigInt::from(4);
    let lhs = cyclotomic(pair.d())?.scale(&four);
    let disc = BigInt::from(pair.ctx.disc());
    let rhs = pair.psi.square().sub(&pair.xi.square().scale(&disc));
    let first_mismatch = lhs.first_difference(&rhs);
    Ok(IdentityCheck {
        holds: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// Outcome of the coefficient symmetry checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    /// `a_{d,n} = (-1)^{d'} a_{d,d'-n}` for every `n`.
    pub a_holds: bool,
    pub a_first_violation: Option<usize>,
    /// Sign `e` predicted for `b_{d,n} = e b_{d,d'-n}`: `-1` exactly when
    /// `d = 3 mod 4` is composite.
    pub b_sign_expected: i8,
    /// Signs for which the `b` relation actually holds (one or both).
    pub b_signs_observed: Vec<i8>,
}

impl SymmetryReport {
    pub fn b_rule_holds(&self) -> bool {
        self.b_signs_observed.contains(&self.b_sign_expected)
    }

    pub fn holds(&self) -> bool {
        self.a_holds && self.b_rule_holds()
    }
}

pub fn check_symmetry(pair: &KraitchikPair) -> SymmetryReport {
    let dp = pair.dprime() as usize;
    let a_sign = if dp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let a_first_violation = (0..=dp).find(|&n| pair.a[n] != &a_sign * &pair.a[dp - n]);
    let b_full: Vec<BigInt> = (0..=dp).map(|n| pair.b_at(n)).collect();
    let b_signs_observed = [1i8, -1]
        .into_iter()
        .filter(|&s| {
            let s = BigInt::from(s);
            (0..=dp).all(|n| b_full[n] == &s * &b_full[dp - n])
        })
        .collect();
    let d = pair.d();
    let b_sign_expected = if d % 4 == 3 && pair.ctx.is_composite() {
        -1
    } else {
        1
    };
    SymmetryReport {
        a_holds: a_first_violation.is_none(),
        a_first_violation,
        b_sign_expected,
        b_signs_observed,
    }
}
