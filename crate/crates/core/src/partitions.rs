//! Integer partitions and the partition statistics behind the combinatorial
//! proofs: conjugation, Frobenius symbols, `kappa`, and the rectangular and
//! two-part-size sums.

use std::fmt;

use rayon::prelude::*;

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::series::{rat, Exponent, TruncatedSeries};

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into non-increasing order and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `lambda_i` with 1-based indexing; zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        Partition {
            parts: conjugate_parts(&self.parts),
        }
    }

    /// Side of the largest square fitting in the Young diagram.
    pub fn durfee_size(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p as usize > *i)
            .count()
    }

    pub fn frobenius(&self) -> FrobeniusSymbol {
        let r = self.durfee_size();
        let conj = self.conjugate();
        let arms = (1..=r).map(|i| self.part(i) - i as u32).collect();
        let legs = (1..=r).map(|i| conj.part(i) - i as u32).collect();
        FrobeniusSymbol { arms, legs }
    }

    pub fn kappa_direct(&self) -> i64 {
        kappa_of_parts(&self.parts)
    }

    pub fn kappa_frobenius(&self) -> i64 {
        self.frobenius().kappa()
    }

    /// Number of distinct part sizes.
    pub fn distinct_sizes(&self) -> usize {
        let mut n = 0;
        let mut prev = 0;
        for &p in &self.parts {
            if p != prev {
                n += 1;
                prev = p;
            }
        }
        n
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn conjugate_parts(parts: &[u32]) -> Vec<u32> {
    let largest = parts.first().copied().unwrap_or(0);
    (1..=largest)
        .map(|j| parts.iter().take_while(|&&p| p >= j).count() as u32)
        .collect()
}

/// `sum_k lambda_k (lambda_k - 2k + 1)` on a raw part slice.
pub fn kappa_of_parts(parts: &[u32]) -> i64 {
    parts
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let (p, k) = (p as i64, i as i64 + 1);
            p * (p - 2 * k + 1)
        })
        .sum()
}

/// Arm/leg encoding `(a_1, ..., a_r | b_1, ..., b_r)` relative to the Durfee square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusSymbol {
    arms: Vec<u32>,
    legs: Vec<u32>,
}

impl FrobeniusSymbol {
    pub fn new(arms: Vec<u32>, legs: Vec<u32>) -> Result<Self> {
        if arms.len() != legs.len() {
            return Err(Error::InvalidSymbol(format!(
                "{} arms but {} legs",
                arms.len(),
                legs.len()
            )));
        }
        for (name, seq) in [("arms", &arms), ("legs", &legs)] {
            if seq.windows(2).any(|w| w[0] <= w[1]) {
                return Err(Error::InvalidSymbol(format!("{name} {seq:?} are not strictly decreasing")));
            }
        }
        Ok(FrobeniusSymbol { arms, legs })
    }

    pub fn arms(&self) -> &[u32] {
        &self.arms
    }

    pub fn legs(&self) -> &[u32] {
        &self.legs
    }

    pub fn rank(&self) -> usize {
        self.arms.len()
    }

    pub fn kappa(&self) -> i64 {
        self.arms
            .iter()
            .zip(&self.legs)
            .map(|(&a, &b)| {
                let (a, b) = (a as i64, b as i64);
                a * (a + 1) - b * (b + 1)
            })
            .sum()
    }

    pub fn to_partition(&self) -> Partition {
        let r = self.rank();
        let mut parts: Vec<u32> = self
            .arms
            .iter()
            .enumerate()
            .map(|(i, &a)| a + i as u32 + 1)
            .collect();
        let column_lengths: Vec<u32> = self
            .legs
            .iter()
            .enumerate()
            .map(|(j, &b)| b + j as u32 + 1)
            .collect();
        let mut row = r as u32 + 1;
        loop {
            let width = column_lengths.iter().filter(|&&c| c >= row).count() as u32;
            if width == 0 {
                break;
            }
            parts.push(width);
            row += 1;
        }
        Partition { parts }
    }
}

/// Rebuilds a partition from arm and leg sequences.
pub fn from_frobenius(arms: Vec<u32>, legs: Vec<u32>) -> Result<Partition> {
    Ok(FrobeniusSymbol::new(arms, legs)?.to_partition())
}

impl fmt::Display for FrobeniusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({} | {})", join(&self.arms), join(&self.legs))
    }
}

/// Calls `visit` on every partition of weight at most `max_weight` whose
/// largest part is exactly `largest`.
fn visit_with_largest(largest: u32, max_weight: u64, visit: &mut dyn FnMut(&[u32])) {
    fn rec(parts: &mut Vec<u32>, cap: u32, remaining: u64, visit: &mut dyn FnMut(&[u32])) {
        visit(parts);
        let top = (cap as u64).min(remaining) as u32;
        for p in (1..=top).rev() {
            parts.push(p);
            rec(parts, p, remaining - p as u64, visit);
            parts.pop();
        }
    }
    if largest as u64 > max_weight {
        return;
    }
    let mut parts = vec![largest];
    rec(&mut parts, largest, max_weight - largest as u64, visit);
}

/// Calls `visit` on every partition of weight at most `max_weight`, including
/// the empty partition.
pub fn visit_up_to(max_weight: u64, visit: &mut dyn FnMut(&[u32])) {
    visit(&[]);
    for largest in (1..=max_weight as u32).rev() {
        visit_with_largest(largest, max_weight, visit);
    }
}

/// All partitions of `n` in descending lexicographic order.
pub fn enumerate(n: u64) -> Vec<Partition> {
    fn rec(n: u64, cap: u32, parts: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: parts.clone() });
            return;
        }
        let top = (cap as u64).min(n) as u32;
        for p in (1..=top).rev() {
            parts.push(p);
            rec(n - p as u64, p, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n as u32, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `n`, by Euler's recurrence on integers.
pub fn partition_count(n: u64) -> u128 {
    let n = n as usize;
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total: i128 = 0;
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign: i128 = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[m - g2] as i128;
            }
            k += 1;
        }
        p[m] = total as u128;
    }
    p[n]
}

/// `sum over lambda |- n of kappa(lambda)`, by enumeration.
pub fn kappa_sum(n: u64) -> i64 {
    enumerate(n).iter().map(Partition::kappa_direct).sum()
}

/// `a(n)`: sum of `lambda_1 (lambda_1 - 1)` over rectangular partitions of `n`.
pub fn stat_rect_a(n: u64) -> i64 {
    divisors(n)
        .into_iter()
        .map(|k| {
            let k = k as i64;
            k * (k - 1)
        })
        .sum()
}

/// `b(n)`: sum of `2 lambda_1` over rectangular partitions in two colours with
/// at least one part of each colour; `(k^j)` contributes `2k(j - 1)`.
pub fn stat_rect_b(n: u64) -> i64 {
    divisors(n)
        .into_iter()
        .map(|k| {
            let j = (n / k) as i64;
            2 * k as i64 * (j - 1)
        })
        .sum()
}

/// Visits `(largest, largest_mult, smallest, smallest_mult)` for every
/// partition of `n` with exactly two distinct part sizes.
fn for_each_two_size(n: u64, mut visit: impl FnMut(u64, u64, u64, u64)) {
    for s in 1..n {
        let mut used = s;
        let mut j = 1;
        while used < n {
            let rest = n - used;
            for big in divisors(rest) {
                if big > s {
                    visit(big, rest / big, s, j);
                }
            }
            used += s;
            j += 1;
        }
    }
}

/// `c(n)`: sum of the smallest part over partitions of `n` with exactly two
/// distinct part sizes.
pub fn stat_twosize_c(n: u64) -> i64 {
    let mut total = 0;
    for_each_two_size(n, |_, _, s, _| total += s as i64);
    total
}

/// `d(n)`: sum of the multiplicity of the largest part over the same set.
pub fn stat_twosize_d(n: u64) -> i64 {
    let mut total = 0;
    for_each_two_size(n, |_, i, _, _| total += i as i64);
    total
}

/// Named partition statistic, as exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionStat {
    Count,
    RectA,
    RectB,
    TwoSizeC,
    TwoSizeD,
    KappaSum,
}

impl PartitionStat {
    pub const ALL: [PartitionStat; 6] = [
        PartitionStat::Count,
        PartitionStat::RectA,
        PartitionStat::RectB,
        PartitionStat::TwoSizeC,
        PartitionStat::TwoSizeD,
        PartitionStat::KappaSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PartitionStat::Count => "p",
            PartitionStat::RectA => "a",
            PartitionStat::RectB => "b",
            PartitionStat::TwoSizeC => "c",
            PartitionStat::TwoSizeD => "d",
            PartitionStat::KappaSum => "kappa-sum",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn evaluate(self, n: u64) -> String {
        match self {
            PartitionStat::Count => partition_count(n).to_string(),
            PartitionStat::RectA => stat_rect_a(n).to_string(),
            PartitionStat::RectB => stat_rect_b(n).to_string(),
            PartitionStat::TwoSizeC => stat_twosize_c(n).to_string(),
            PartitionStat::TwoSizeD => stat_twosize_d(n).to_string(),
            PartitionStat::KappaSum => kappa_sum(n).to_string(),
        }
    }
}

/// Weight bound that certifies the partition-side series of the
/// `(-1)^{lambda_1}` identity up to `order`.
///
/// A nonzero summand for index `l >= 2` needs `lambda_1 > lambda_l` and at
/// least `2l - 1` parts, so its weight `w` is at least `2l` and its exponent
/// `w - l` is at least `ceil(w / 2)`.
pub fn thm54_weight_bound(order: Exponent) -> u64 {
    2 * order.max(0) as u64
}

/// The partition sum
/// `sum_lambda (-1)^{lambda_1} sum_{l>=1} q^{|lambda| - l} (lambda_{2l-1} - lambda_{2l})(lambda_1 - lambda_l)`
/// over all partitions of weight at most `max_weight`.
///
/// The result is trusted up to `floor(max_weight / 2)`, the largest order no
/// heavier partition can reach.
pub fn thm54_rhs_from_weights(max_weight: u64) -> TruncatedSeries {
    let order = (max_weight / 2) as usize;
    let width = order + 1;
    let partial: Vec<i64> = (1..=max_weight as u32)
        .into_par_iter()
        .map(|largest| {
            let mut acc = vec![0i64; width];
            visit_with_largest(largest, max_weight, &mut |parts: &[u32]| {
                thm54_accumulate(parts, &mut acc);
            });
            acc
        })
        .reduce(
            || vec![0i64; width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    TruncatedSeries::from_coeffs(0, partial.into_iter().map(rat).collect())
}

fn thm54_accumulate(parts: &[u32], acc: &mut [i64]) {
    let len = parts.len();
    let weight: i64 = parts.iter().map(|&p| p as i64).sum();
    let part = |i: usize| if i <= len { parts[i - 1] as i64 } else { 0 };
    let sign = if part(1) % 2 == 0 { 1 } else { -1 };
    let mut l = 2;
    while 2 * l - 1 <= len {
        let e = weight - l as i64;
        if e >= 0 && (e as usize) < acc.len() {
            let v = (part(2 * l - 1) - part(2 * l)) * (part(1) - part(l));
            acc[e as usize] += sign * v;
        }
        l += 1;
    }
}

/// The partition side certified to `order`.
pub fn thm54_rhs_series(order: Exponent) -> TruncatedSeries {
    let s = thm54_rhs_from_weights(thm54_weight_bound(order));
    s.truncate(order.max(-1)).unwrap_or(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        assert_eq!(enumerate(4).len(), 5);
        let six: Vec<String> = enumerate(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(six, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        for n in 0..=25 {
            let all = enumerate(n);
            assert_eq!(all.len() as u128, partition_count(n));
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
            assert!(all.iter().all(|p| p.weight() == n));
        }
    }

    #[test]
    fn two_part_size_class_of_six() {
        let c6: Vec<String> = enumerate(6)
            .into_iter()
            .filter(|p| p.distinct_sizes() == 2)
            .map(|p| p.to_string())
            .collect();
        assert_eq!(
            c6,
            ["(5,1)", "(4,2)", "(4,1,1)", "(3,1,1,1)", "(2,2,1,1)", "(2,1,1,1,1)"]
        );
    }

    #[test]
    fn conjugate_examples() {
        let lam = Partition::new(vec![4, 4, 2, 2, 1]);
        assert_eq!(lam.conjugate(), Partition::new(vec![5, 4, 2, 2]));
        assert_eq!(Partition::new(vec![3]).conjugate(), Partition::new(vec![1, 1, 1]));
        for n in 0..=20 {
            for p in enumerate(n) {
                assert_eq!(p.conjugate().conjugate(), p);
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let lam = Partition::new(vec![4, 4, 2, 2, 1]);
        let f = lam.frobenius();
        assert_eq!(f.arms(), &[3, 2]);
        assert_eq!(f.legs(), &[4, 2]);
        assert_eq!(f.to_string(), "(3,2 | 4,2)");
        assert_eq!(lam.durfee_size(), 2);
        assert_eq!(Partition::empty().frobenius().rank(), 0);
        assert_eq!(from_frobenius(vec![3, 2], vec![4, 2]).unwrap(), lam);
    }

    #[test]
    fn from_frobenius_rejects_bad_symbols() {
        assert!(matches!(from_frobenius(vec![2, 2], vec![1, 0]), Err(Error::InvalidSymbol(_))));
        assert!(matches!(from_frobenius(vec![1], vec![3, 0]), Err(Error::InvalidSymbol(_))));
        assert!(matches!(from_frobenius(vec![0, 1], vec![1, 0]), Err(Error::InvalidSymbol(_))));
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(Partition::new(vec![2, 1]).kappa_direct(), 0);
        assert_eq!(Partition::new(vec![3]).kappa_direct(), 6);
        assert_eq!(Partition::new(vec![1, 1, 1]).kappa_direct(), -6);
        assert_eq!(kappa_sum(5), 0);
    }

    #[test]
    fn rectangular_statistics() {
        assert_eq!(stat_rect_a(6), 38);
        assert_eq!(stat_rect_b(6), 24);
        assert_eq!(stat_rect_a(1), 0);
        assert_eq!(stat_rect_b(1), 0);
    }

    #[test]
    fn two_size_statistics_match_enumeration() {
        assert_eq!(stat_twosize_c(6), 7);
        assert_eq!(stat_twosize_d(6), 7);
        for n in 1..=22 {
            let class: Vec<Partition> = enumerate(n).into_iter().filter(|p| p.distinct_sizes() == 2).collect();
            let c: i64 = class.iter().map(|p| *p.parts().last().unwrap() as i64).sum();
            let d: i64 = class
                .iter()
                .map(|p| p.parts().iter().filter(|&&x| x == p.part(1)).count() as i64)
                .sum();
            assert_eq!(stat_twosize_c(n), c, "c({n})");
            assert_eq!(stat_twosize_d(n), d, "d({n})");
        }
    }

    #[test]
    fn visit_up_to_covers_every_weight_once() {
        let mut counts = vec![0u128; 16];
        visit_up_to(15, &mut |parts: &[u32]| {
            let w: u32 = parts.iter().sum();
            counts[w as usize] += 1;
        });
        for (n, &c) in counts.iter().enumerate() {
            assert_eq!(c, partition_count(n as u64));
        }
    }

    #[test]
    fn thm54_summands_respect_weight_bound() {
        for w in 0..=20 {
            for p in enumerate(w) {
                let len = p.len();
                for l in 1..=len {
                    let v = (p.part(2 * l - 1) as i64 - p.part(2 * l) as i64)
                        * (p.part(1) as i64 - p.part(l) as i64);
                    if v != 0 {
                        let e = w as i64 - l as i64;
                        assert!(e >= 0);
                        assert!(2 * e >= w as i64, "{p} at l={l}");
                        assert!(l >= 2);
                    }
                }
            }
        }
    }

    #[test]
    fn thm54_partition_side_is_weight_stable() {
        // extending the weight range never changes certified coefficients
        let a = thm54_rhs_from_weights(16);
        let b = thm54_rhs_from_weights(24);
        assert_eq!(a.order(), 8);
        assert_eq!(a.equals_up_to(&b, 8).unwrap(), None);
        assert_eq!(thm54_rhs_series(8), a);
    }

    #[test]
    fn stat_names_round_trip() {
        for s in PartitionStat::ALL {
            assert_eq!(PartitionStat::parse(s.name()), Some(s));
        }
        assert_eq!(PartitionStat::TwoSizeC.evaluate(6), "7");
        assert_eq!(PartitionStat::Count.evaluate(35), "14883");
    }
}
