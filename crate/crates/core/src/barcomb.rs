//! Ordinary partitions with their hook lengths, and bar (strict) partitions
//! with the bar lengths of their shifted diagrams.
//!
//! All enumerations are reverse-lexicographic on the part sequence, so
//! `(7), (6,1), (5,2), (4,3), (4,2,1)` for the bar partitions of 7.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::check_odd_prime;
use crate::error::{Error, Result};

/// A partition: non-increasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not non-increasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&a| a > j).count())
            .collect();
        Partition { parts }
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// A bar partition: strictly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct BarPartition {
    parts: Vec<usize>,
}

impl BarPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not strictly decreasing"
            )));
        }
        Ok(BarPartition { parts })
    }

    /// Sorts and validates arbitrary-order distinct parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        BarPartition::new(parts)
    }

    pub fn empty() -> Self {
        BarPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(lambda)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl TryFrom<Vec<usize>> for BarPartition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        BarPartition::new(parts)
    }
}

impl From<BarPartition> for Vec<usize> {
    fn from(p: BarPartition) -> Self {
        p.parts
    }
}

fn fmt_parts(parts: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

impl fmt::Display for BarPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.parts, f)
    }
}

/// Bar lengths of a shifted diagram, one decreasing row per part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarLengthTable {
    rows: Vec<Vec<usize>>,
}

impl BarLengthTable {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// The union of all rows, with multiplicity, sorted decreasing.
    pub fn multiset(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.rows.iter().flatten().copied().collect();
        all.sort_unstable_by(|a, b| b.cmp(a));
        all
    }

    pub fn total(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.rows.iter().any(|row| row.contains(&h))
    }

    pub fn product(&self) -> BigUint {
        self.rows
            .iter()
            .flatten()
            .fold(BigUint::from(1u32), |acc, &h| acc * h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignedBarClass {
    /// `n - l(lambda)` even: one self-associate spin character.
    Positive,
    /// `n - l(lambda)` odd: a pair of associate spin characters.
    Negative,
}

pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for k in (1..=max.min(remaining)).rev() {
            cur.push(k);
            rec(remaining - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Hook length of every box, row by row.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<usize>> {
    let cols = lambda.conjugate();
    lambda
        .parts
        .iter()
        .enumerate()
        .map(|(i, &row)| {
            (0..row)
                .map(|j| (row - j - 1) + (cols.parts[j] - i - 1) + 1)
                .collect()
        })
        .collect()
}

pub fn is_t_core(lambda: &Partition, t: usize) -> bool {
    hook_lengths(lambda).iter().flatten().all(|&h| h != t)
}

/// Calls `f` on every bar partition of `n` in reverse-lexicographic order.
pub fn for_each_bar_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if remaining == 0 {
            f(cur);
            return;
        }
        for k in (1..=max.min(remaining)).rev() {
            // parts below k sum to at most k(k-1)/2
            if remaining - k > k * (k - 1) / 2 {
                break;
            }
            cur.push(k);
            rec(remaining - k, k - 1, cur, f);
            cur.pop();
        }
    }
    rec(n, n, &mut Vec::new(), &mut f);
}

pub fn enumerate_bar_partitions(n: usize) -> Vec<BarPartition> {
    let mut out = Vec::new();
    for_each_bar_partition(n, |parts| {
        out.push(BarPartition {
            parts: parts.to_vec(),
        })
    });
    out
}

/// `H_i = {1..a_i} + {a_i + a_j : j > i} - {a_i - a_j : j > i}`, each row decreasing.
pub fn bar_lengths(lambda: &BarPartition) -> BarLengthTable {
    let parts = &lambda.parts;
    let rows = parts
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            // multiplicities of values 1..2*a_i
            let mut mult = vec![0u32; 2 * ai + 1];
            for m in &mut mult[1..=ai] {
                *m += 1;
            }
            for &aj in &parts[i + 1..] {
                mult[ai + aj] += 1;
            }
            for &aj in &parts[i + 1..] {
                debug_assert!(mult[ai - aj] > 0);
                mult[ai - aj] -= 1;
            }
            let mut row = Vec::with_capacity(ai);
            for h in (1..mult.len()).rev() {
                for _ in 0..mult[h] {
                    row.push(h);
                }
            }
            row
        })
        .collect();
    BarLengthTable { rows }
}

pub fn bar_sign(lambda: &BarPartition) -> SignedBarClass {
    if (lambda.n() - lambda.len()).is_multiple_of(2) {
        SignedBarClass::Positive
    } else {
        SignedBarClass::Negative
    }
}

/// True iff `p` is not a bar length of `lambda`.
pub fn is_p_bar_core(lambda: &BarPartition, p: u64) -> Result<bool> {
    let p = check_odd_prime(p)? as usize;
    Ok(!bar_lengths(lambda).contains(p))
}

/// All `p`-bar-cores of `n`, in the same order as [`enumerate_bar_partitions`].
///
/// Cores are generated directly from their abacus shape: no part divisible
/// by `p`, each residue class `j` holds `j, j+p, ..., j+(k-1)p`, and classes
/// `j` and `p-j` are never both used. The bar-length definition and this
/// shape are checked against each other in the tests.
pub fn enumerate_p_bar_cores(n: usize, p: u64) -> Result<Vec<BarPartition>> {
    let p = check_odd_prime(p)? as usize;
    let runners: Vec<(usize, usize)> = (1..=(p - 1) / 2).map(|j| (j, p - j)).collect();

    fn rec(
        idx: usize,
        remaining: usize,
        p: usize,
        runners: &[(usize, usize)],
        cur: &mut Vec<usize>,
        out: &mut Vec<BarPartition>,
    ) {
        if idx == runners.len() {
            if remaining == 0 {
                out.push(BarPartition::from_unsorted(cur.clone()).expect("distinct parts"));
            }
            return;
        }
        rec(idx + 1, remaining, p, runners, cur, out);
        let (a, b) = runners[idx];
        for r in [a, b] {
            let mark = cur.len();
            let mut used = 0;
            let mut part = r;
            while used + part <= remaining {
                used += part;
                cur.push(part);
                rec(idx + 1, remaining - used, p, runners, cur, out);
                part += p;
            }
            cur.truncate(mark);
        }
    }

    let mut out = Vec::new();
    rec(0, n, p, &runners, &mut Vec::new(), &mut out);
    out.sort_unstable_by(|x, y| y.parts.cmp(&x.parts));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bar(parts: &[usize]) -> BarPartition {
        BarPartition::new(parts.to_vec()).unwrap()
    }

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Coefficients of `prod (1 + q^k)` by direct polynomial expansion.
    fn distinct_parts_counts(order: usize) -> Vec<u64> {
        let mut c = vec![0u64; order + 1];
        c[0] = 1;
        for k in 1..=order {
            for i in (k..=order).rev() {
                c[i] += c[i - k];
            }
        }
        c
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![2, 2, 1]).is_ok());
        assert!(BarPartition::new(vec![2, 2]).is_err());
        assert!(BarPartition::new(vec![1, 2]).is_err());
        assert!(BarPartition::from_unsorted(vec![1, 3, 2]).is_ok());
        assert!(serde_json::from_str::<BarPartition>("[3,3]").is_err());
        let b: BarPartition = serde_json::from_str("[5,3,2]").unwrap();
        assert_eq!(serde_json::to_string(&b).unwrap(), "[5,3,2]");
    }

    #[test]
    fn partition_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(9).len(), 30);
        assert_eq!(
            enumerate_partitions(4),
            vec![
                part(&[4]),
                part(&[3, 1]),
                part(&[2, 2]),
                part(&[2, 1, 1]),
                part(&[1, 1, 1, 1])
            ]
        );
    }

    #[test]
    fn hooks() {
        assert_eq!(hook_lengths(&part(&[1])), vec![vec![1]]);
        assert_eq!(hook_lengths(&part(&[2, 1])), vec![vec![3, 1], vec![1]]);
        assert_eq!(hook_lengths(&part(&[5])), vec![vec![5, 4, 3, 2, 1]]);
        assert_eq!(
            hook_lengths(&part(&[3, 2, 2])),
            vec![vec![5, 4, 1], vec![3, 2], vec![2, 1]]
        );
    }

    #[test]
    fn t_cores() {
        assert!(!is_t_core(&part(&[2, 1]), 3));
        assert!(is_t_core(&Partition::empty(), 5));
        assert!(is_t_core(&part(&[1]), 2));
        assert!(is_t_core(&part(&[2, 1]), 2));
    }

    #[test]
    fn t_core_iff_no_hook_divisible_by_t() {
        for n in 0..=20 {
            for lambda in enumerate_partitions(n) {
                let hooks: Vec<usize> = hook_lengths(&lambda).into_iter().flatten().collect();
                for t in 2..=7 {
                    assert_eq!(
                        is_t_core(&lambda, t),
                        hooks.iter().all(|h| h % t != 0),
                        "{lambda} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn bar_partitions_of_seven() {
        assert_eq!(
            enumerate_bar_partitions(7),
            vec![
                bar(&[7]),
                bar(&[6, 1]),
                bar(&[5, 2]),
                bar(&[4, 3]),
                bar(&[4, 2, 1])
            ]
        );
        assert_eq!(enumerate_bar_partitions(0), vec![BarPartition::empty()]);
    }

    #[test]
    fn bar_partition_counts_match_distinct_part_expansion() {
        let expected = distinct_parts_counts(60);
        for n in 0..=60 {
            let mut count = 0u64;
            for_each_bar_partition(n, |_| count += 1);
            assert_eq!(count, expected[n], "n={n}");
        }
    }

    #[test]
    fn shifted_diagram_of_five_three_two() {
        let t = bar_lengths(&bar(&[5, 3, 2]));
        assert_eq!(t.rows(), &[vec![8, 7, 5, 4, 1], vec![5, 3, 2], vec![2, 1]]);
        assert_eq!(t.total(), 10);
        assert_eq!(t.product(), BigUint::from(67_200u32));
    }

    #[test]
    fn small_bar_length_tables() {
        assert_eq!(bar_lengths(&bar(&[1])).rows(), &[vec![1]]);
        let t = bar_lengths(&bar(&[3, 2, 1]));
        // H_1 = {1,2,3} + {5,4} - {1,2}; H_2 = {1,2} + {3} - {1}; H_3 = {1}
        assert_eq!(t.rows(), &[vec![5, 4, 3], vec![3, 2], vec![1]]);
        assert_eq!(t.total(), 6);
        assert!(bar_lengths(&BarPartition::empty()).rows().is_empty());
    }

    #[test]
    fn bar_length_rows_have_part_sizes_and_divide_factorial() {
        for n in 0..=20usize {
            let factorial: BigUint = (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k);
            for lambda in enumerate_bar_partitions(n) {
                let t = bar_lengths(&lambda);
                for (row, &a) in t.rows().iter().zip(lambda.parts()) {
                    assert_eq!(row.len(), a);
                }
                assert_eq!(t.total(), n);
                assert_eq!(&factorial % t.product(), BigUint::from(0u32), "{lambda}");
            }
        }
    }

    #[test]
    fn signs() {
        assert_eq!(bar_sign(&bar(&[7])), SignedBarClass::Positive);
        assert_eq!(bar_sign(&bar(&[6, 1])), SignedBarClass::Negative);
        assert_eq!(bar_sign(&bar(&[4, 2, 1])), SignedBarClass::Positive);
        assert_eq!(bar_sign(&BarPartition::empty()), SignedBarClass::Positive);
    }

    #[test]
    fn bar_cores() {
        assert!(!is_p_bar_core(&bar(&[5, 3, 2]), 3).unwrap());
        assert!(is_p_bar_core(&bar(&[2]), 3).unwrap());
        assert!(is_p_bar_core(&bar(&[16, 9, 4, 2]), 7).unwrap());
        assert!(!is_p_bar_core(&bar(&[16, 9, 5, 2]), 7).unwrap());
        assert_eq!(is_p_bar_core(&bar(&[2]), 9), Err(Error::InvalidPrime(9)));
        assert_eq!(is_p_bar_core(&bar(&[2]), 2), Err(Error::InvalidPrime(2)));
    }

    #[test]
    fn seven_bar_cores_of_thirty_one() {
        let cores = enumerate_p_bar_cores(31, 7).unwrap();
        let mut expected = vec![
            bar(&[16, 9, 4, 2]),
            bar(&[12, 10, 5, 3, 1]),
            bar(&[17, 10, 3, 1]),
            bar(&[16, 9, 3, 2, 1]),
        ];
        expected.sort_by(|a, b| b.cmp(a));
        assert_eq!(cores, expected);
        assert!(enumerate_p_bar_cores(3, 3).unwrap().is_empty());
        for p in [3, 5, 7, 11] {
            assert_eq!(
                enumerate_p_bar_cores(0, p).unwrap(),
                vec![BarPartition::empty()]
            );
        }
        assert!(enumerate_p_bar_cores(5, 15).is_err());
    }

    #[test]
    fn generated_cores_equal_filtered_enumeration() {
        for p in [3u64, 5, 7, 11] {
            for n in 0..=40 {
                let filtered: Vec<BarPartition> = enumerate_bar_partitions(n)
                    .into_iter()
                    .filter(|l| is_p_bar_core(l, p).unwrap())
                    .collect();
                assert_eq!(
                    enumerate_p_bar_cores(n, p).unwrap(),
                    filtered,
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn bar_core_iff_no_bar_length_divisible_by_p() {
        for n in 0..=40 {
            for lambda in enumerate_bar_partitions(n) {
                let hs = bar_lengths(&lambda).multiset();
                for p in [3u64, 5, 7] {
                    assert_eq!(
                        is_p_bar_core(&lambda, p).unwrap(),
                        hs.iter().all(|&h| !(h as u64).is_multiple_of(p)),
                        "{lambda} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn sign_classes_partition_the_bar_partitions() {
        let expected = distinct_parts_counts(70);
        for n in 0..=70 {
            let (mut pos, mut neg) = (0u64, 0u64);
            for_each_bar_partition(n, |parts| {
                if (n - parts.len()) % 2 == 0 {
                    pos += 1
                } else {
                    neg += 1
                }
            });
            assert_eq!(pos + neg, expected[n]);
        }
    }
}
