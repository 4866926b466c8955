//! Elementary arithmetic functions: factorization, Möbius, totient,
//! Jacobi symbol and divisor enumeration.
//!
//! All inputs are machine integers. Factoring is plain trial division,
//! which is adequate for the moduli this crate works with (well below 10^7).

use crate::error::ArithError;

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor `n` by trial division. `factor(1)` has no factors.
///
/// # Panics
/// Panics if `n == 0`.
pub fn factor(n: u64) -> Factorization {
    assert!(n >= 1, "factor: n must be positive");
    let mut factors = Vec::new();
    let mut m = n;
    let mut push = |p: u64, m: &mut u64| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut m);
    let mut p = 3;
    while p * p <= m {
        push(p, &mut m);
        p += 2;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Factorization { n, factors }
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).is_squarefree()
}

pub fn mobius(n: u64) -> i8 {
    let f = factor(n);
    if !f.is_squarefree() {
        0
    } else if f.factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .factors
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

/// Jacobi symbol `(a/n)` for odd positive `n`; `(a/1) = 1`.
pub fn jacobi(a: i64, n: u64) -> Result<i8, ArithError> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(ArithError::JacobiModulus(n));
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor(n).factors {
        let base = divs.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divs.extend(base.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Odd squarefree integers in `lo..=hi` that are at least 3.
pub fn odd_squarefree_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi)
        .filter(|&d| d % 2 == 1 && is_squarefree(d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factor_examples() {
        assert!(factor(1).factors.is_empty());
        assert_eq!(factor(15).factors, vec![(3, 1), (5, 1)]);
        assert_eq!(factor(255).factors, vec![(3, 1), (5, 1), (17, 1)]);
        assert_eq!(factor(720).factors, vec![(2, 4), (3, 2), (5, 1)]);
        assert_eq!(factor(999_983).factors, vec![(999_983, 1)]);
    }

    #[test]
    fn mobius_and_phi_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(5), -1);
        assert_eq!(mobius(15), 1);
        assert_eq!(mobius(9), 0);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(5), 4);
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(2, 7).unwrap(), 1);
        assert_eq!(jacobi(3, 15).unwrap(), 0);
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert_eq!(jacobi(-1, 7).unwrap(), -1);
        assert_eq!(jacobi(5, 1).unwrap(), 1);
        assert!(jacobi(3, 8).is_err());
        assert!(jacobi(3, 0).is_err());
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(15), vec![1, 3, 5, 15]);
        assert_eq!(divisors(105), vec![1, 3, 5, 7, 15, 21, 35, 105]);
    }

    #[test]
    fn mobius_and_phi_divisor_sums() {
        for n in 1..=10_000u64 {
            let divs = divisors(n);
            let mu_sum: i64 = divs.iter().map(|&e| mobius(e) as i64).sum();
            assert_eq!(mu_sum, (n == 1) as i64, "n = {n}");
            let phi_sum: u64 = divs.iter().map(|&e| euler_phi(e)).sum();
            assert_eq!(phi_sum, n, "n = {n}");
        }
    }

    #[test]
    fn jacobi_matches_squares_mod_prime() {
        for p in [3u64, 5, 7, 11, 13, 101, 997] {
            let squares: std::collections::HashSet<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                assert_eq!(jacobi(a as i64, p).unwrap() == 1, squares.contains(&a));
            }
        }
    }

    proptest! {
        #[test]
        fn jacobi_is_multiplicative(a in -5000i64..5000, b in -5000i64..5000, half in 0u64..500) {
            let n = 2 * half + 1;
            let lhs = jacobi(a, n).unwrap() * jacobi(b, n).unwrap();
            prop_assert_eq!(lhs, jacobi(a * b, n).unwrap());
        }

        #[test]
        fn factorization_reconstructs(n in 1u64..2_000_000) {
            let f = factor(n);
            let prod: u64 = f.factors.iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(prod, n);
            prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
            for &(p, _) in &f.factors {
                prop_assert!((2..p).take_while(|q| q * q <= p).all(|q| p % q != 0));
            }
        }
    }
}
