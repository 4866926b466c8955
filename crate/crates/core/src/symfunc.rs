//! Power sums to elementary symmetric functions.
//!
//! Besides the Girard-Newton recurrence this module builds the partition
//! weights `w_e` of the expansion
//! `S^(m) = sum_e (-1)^(m-k) w_e prod S_{e_i}` and the collapsed
//! polynomial `P_m(X) = sum_k (-1)^(m-k) v_{m,k} X^k`, which equals the
//! binomial polynomial `X(X-1)...(X-m+1)/m!`.

use crate::poly::DensePoly;
use crate::ring::{BigRat, DivInt, Ring};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// A partition of `m` as a nondecreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Canonicalizes by sorting. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable();
        Some(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct part values, ascending.
    pub fn distinct_parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i == 0 || self.0[i - 1] != p)
            .map(|(_, &p)| p)
    }

    /// The partition with one copy of `part` removed.
    pub fn without_one(&self, part: u32) -> Self {
        let mut parts = self.0.clone();
        let pos = parts
            .iter()
            .position(|&p| p == part)
            .expect("part not present");
        parts.remove(pos);
        Self(parts)
    }
}

/// All partitions of `m`, each nondecreasing, in lexicographic order.
pub fn partitions(m: u32) -> Vec<Partition> {
    fn rec(remaining: u32, min_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in min_part..=remaining {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, 1, &mut Vec::new(), &mut out);
    out
}

/// Weights `w_e` for every partition of `m`.
#[derive(Debug, Clone)]
pub struct WeightTable {
    pub m: u32,
    pub weights: BTreeMap<Partition, BigRat>,
}

impl WeightTable {
    /// `v_{m,k}`: the sum of weights over partitions with `k` parts.
    pub fn v(&self, k: usize) -> BigRat {
        self.weights
            .iter()
            .filter(|(p, _)| p.len() == k)
            .map(|(_, w)| w)
            .fold(BigRat::zero(), |acc, w| acc + w)
    }

    /// Evaluates `sum_e (-1)^(m-k) w_e prod S_{e_i}` at concrete power sums
    /// (`power_sums[j-1] = S_j`).
    pub fn expand<T: DivInt>(&self, power_sums: &[T], one: &T) -> T {
        let mut total = one.zero_like();
        for (part, w) in &self.weights {
            let mut term = one.clone();
            for &e in part.parts() {
                term = term.mul_ref(&power_sums[e as usize - 1]);
            }
            // w = num/den with num, den small enough for the m this is used with
            let num: i64 = w.numer().try_into().expect("weight numerator fits i64");
            let den: u64 = w.denom().try_into().expect("weight denominator fits u64");
            term = term.mul_ref(&one.int_like(num)).div_int(den);
            if (self.m as usize - part.len()) % 2 == 1 {
                term = term.neg_ref();
            }
            total = total.add_ref(&term);
        }
        total
    }
}

/// Weight table for `m >= 1` via `m * w_e = sum over distinct parts j of
/// w_{e minus one j}`, starting from `w_() = 1`.
pub fn partition_weights(m: u32) -> WeightTable {
    let mut memo: HashMap<Partition, BigRat> = HashMap::new();
    memo.insert(Partition::empty(), BigRat::one());
    for size in 1..=m {
        for part in partitions(size) {
            let mut acc = BigRat::zero();
            for j in part.distinct_parts() {
                acc += &memo[&part.without_one(j)];
            }
            memo.insert(part, acc / BigRat::from_integer(BigInt::from(size)));
        }
    }
    let weights = partitions(m)
        .into_iter()
        .map(|p| {
            let w = memo.remove(&p).expect("computed above");
            (p, w)
        })
        .collect();
    WeightTable { m, weights }
}

/// `P_m(X) = sum_k (-1)^(m-k) v_{m,k} X^k`.
pub fn pm_polynomial(m: u32) -> DensePoly<BigRat> {
    if m == 0 {
        return DensePoly::new(vec![BigRat::one()]);
    }
    let table = partition_weights(m);
    let coeffs = (0..=m as usize)
        .map(|k| {
            let v = if k == 0 { BigRat::zero() } else { table.v(k) };
            if (m as usize - k) % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    DensePoly::new(coeffs)
}

/// `X(X-1)...(X-m+1)/m!` expanded by direct multiplication.
pub fn binomial_polynomial(m: u32) -> DensePoly<BigRat> {
    let mut p = DensePoly::new(vec![BigRat::one()]);
    let mut fact = BigInt::one();
    for i in 0..m {
        p = p.mul(&DensePoly::new(vec![
            BigRat::from_integer(BigInt::from(-(i as i64))),
            BigRat::one(),
        ]));
        fact *= i + 1;
    }
    p.scale(&BigRat::new(BigInt::one(), fact))
}

/// Elementary symmetric values `e_0..e_N` from power sums `S_1..S_N` by
/// `m e_m = sum_{j=1}^m (-1)^(j-1) e_(m-j) S_j`.
pub fn newton_elementary<T: DivInt>(power_sums: &[T], one: &T) -> Vec<T> {
    let mut e = Vec::with_capacity(power_sums.len() + 1);
    e.push(one.clone());
    for m in 1..=power_sums.len() {
        let mut acc = one.zero_like();
        for j in 1..=m {
            let term = e[m - j].mul_ref(&power_sums[j - 1]);
            acc = if j % 2 == 1 {
                acc.add_ref(&term)
            } else {
                acc.sub_ref(&term)
            };
        }
        e.push(acc.div_int(m as u64));
    }
    e
}

/// `e_m(values)` summed directly over all `m`-subsets.
pub fn elementary_brute<T: Ring>(values: &[T], m: usize, one: &T) -> T {
    fn rec<T: Ring>(values: &[T], m: usize, start: usize, prod: T, acc: &mut T) {
        if m == 0 {
            *acc = acc.add_ref(&prod);
            return;
        }
        for i in start..values.len() {
            if values.len() - i < m {
                break;
            }
            rec(values, m - 1, i + 1, prod.mul_ref(&values[i]), acc);
        }
    }
    let mut acc = one.zero_like();
    rec(values, m, 0, one.clone(), &mut acc);
    acc
}

/// Power sums `S_1..S_n` of `values`.
pub fn power_sums<T: Ring>(values: &[T], n: usize, one: &T) -> Vec<T> {
    let mut powers: Vec<T> = values.to_vec();
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        if j > 1 {
            for (p, v) in powers.iter_mut().zip(values) {
                *p = p.mul_ref(v);
            }
        }
        out.push(powers.iter().fold(one.zero_like(), |acc, p| acc.add_ref(p)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};
    use proptest::prelude::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn newton_examples() {
        let one = int(1);
        let e = newton_elementary(&[int(6), int(14), int(36)], &one);
        assert_eq!(e, vec![int(1), int(6), int(11), int(6)]);

        let (s, t) = (rat(3, 2), rat(-7, 5));
        let e = newton_elementary(&[s.clone(), t.clone()], &one);
        assert_eq!(e[2], (&s * &s - &t) / int(2));

        let x = rat(-5, 3);
        let sums: Vec<BigRat> = (1..=5).map(|j| num_traits::pow(x.clone(), j)).collect();
        let e = newton_elementary(&sums, &one);
        assert_eq!(e[1], x);
        assert!(e[2..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn brute_examples() {
        let one = int(1);
        assert_eq!(
            elementary_brute(&[int(1), int(2), int(3)], 2, &one),
            int(11)
        );
        assert_eq!(elementary_brute(&[int(4), int(9)], 0, &one), int(1));
        assert_eq!(elementary_brute(&[rat(2, 3)], 2, &one), int(0));
    }

    #[test]
    fn weight_examples() {
        let w1 = partition_weights(1);
        assert_eq!(w1.weights.len(), 1);
        assert_eq!(w1.weights[&part(&[1])], int(1));

        let w2 = partition_weights(2);
        assert_eq!(w2.weights[&part(&[1, 1])], rat(1, 2));
        assert_eq!(w2.weights[&part(&[2])], rat(1, 2));

        let w3 = partition_weights(3);
        assert_eq!(w3.weights[&part(&[1, 1, 1])], rat(1, 6));
        assert_eq!(w3.weights[&part(&[2, 1])], rat(1, 2));
        assert_eq!(w3.weights[&part(&[3])], rat(1, 3));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=12).map(|m| partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        assert_eq!(partitions(30).len(), 5604);
    }

    #[test]
    fn pm_examples() {
        assert_eq!(pm_polynomial(0), DensePoly::new(vec![int(1)]));
        assert_eq!(
            pm_polynomial(2),
            DensePoly::new(vec![int(0), rat(-1, 2), rat(1, 2)])
        );
        let expected_5 = DensePoly::new(vec![
            int(0),
            rat(24, 120),
            rat(-50, 120),
            rat(35, 120),
            rat(-10, 120),
            rat(1, 120),
        ]);
        assert_eq!(pm_polynomial(5), expected_5);
    }

    #[test]
    fn pm_matches_binomial_up_to_20() {
        for m in 1..=20 {
            assert_eq!(pm_polynomial(m), binomial_polynomial(m), "m = {m}");
        }
    }

    #[test]
    fn weights_positive_and_anchor_sums() {
        let mut fact = BigInt::one();
        for m in 1..=20u32 {
            fact *= m;
            let table = partition_weights(m);
            assert!(table.weights.values().all(|w| *w > BigRat::zero()));
            assert_eq!(
                table.v(m as usize),
                BigRat::new(BigInt::one(), fact.clone())
            );
            assert_eq!(table.v(1), rat(1, m as i64));
        }
    }

    #[test]
    fn index_wise_recursion_breaks_base_case() {
        // counting repeated parts with multiplicity gives w_(1,1) = 1
        let index_wise = BigRat::from_integer(BigInt::from(2)) / int(2);
        assert_ne!(partition_weights(2).weights[&part(&[1, 1])], index_wise);
    }

    fn multiset() -> impl Strategy<Value = Vec<BigRat>> {
        prop::collection::vec((-20i64..20, 1i64..7).prop_map(|(n, d)| rat(n, d)), 0..=6)
    }

    proptest! {
        #[test]
        fn newton_matches_brute(values in multiset()) {
            let one = int(1);
            let sums = power_sums(&values, 6, &one);
            let e = newton_elementary(&sums, &one);
            for (m, em) in e.iter().enumerate() {
                prop_assert_eq!(em, &elementary_brute(&values, m, &one));
            }
        }

        #[test]
        fn weight_expansion_reconstructs(
            sums in prop::collection::vec((-9i64..9, 1i64..5).prop_map(|(n, d)| rat(n, d)), 8),
        ) {
            let one = int(1);
            let e = newton_elementary(&sums, &one);
            for m in 1..=8u32 {
                prop_assert_eq!(&partition_weights(m).expand(&sums, &one), &e[m as usize]);
            }
        }
    }
}
