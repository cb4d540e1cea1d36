//! Partitions, Dyson ranks, the symmetrized second rank moment and smallest
//! part counts.
//!
//! Everything here is computed combinatorially (enumeration or counting
//! recurrences on Ferrers diagrams) and never through generating functions,
//! so the values can be used as ground truth for [`crate::qseries`].

use std::collections::BTreeMap;

use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A partition stored as a non-increasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("parts must be non-increasing".into()));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Largest part minus number of parts; the empty partition has rank 0.
    pub fn rank(&self) -> i64 {
        match self.parts.first() {
            Some(&l) => l as i64 - self.parts.len() as i64,
            None => 0,
        }
    }

    pub fn smallest_part_multiplicity(&self) -> usize {
        match self.parts.last() {
            Some(&s) => self.parts.iter().rev().take_while(|&&p| p == s).count(),
            None => 0,
        }
    }

    pub fn conjugate(&self) -> Partition {
        let largest = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=largest)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }
}

/// Iterator over the partitions of `n` in descending lexicographic order,
/// starting from `(n)` and ending at `(1, 1, ..., 1)`.
pub struct Partitions {
    current: Option<Vec<u32>>,
}

pub fn partitions_of(n: u32) -> Partitions {
    let first = if n == 0 { Vec::new() } else { vec![n] };
    Partitions { current: Some(first) }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition { parts: cur.clone() };
        let mut parts = cur;
        let mut ones = 0u32;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.pop() {
            let m = last - 1;
            let mut rest = ones + last;
            while rest >= m {
                parts.push(m);
                rest -= m;
            }
            if rest > 0 {
                parts.push(rest);
            }
            self.current = Some(parts);
        }
        Some(out)
    }
}

/// p(n) via the pentagonal number recurrence.
pub fn count_partitions(n: u64) -> Integer {
    partition_table(n as usize).pop().unwrap_or_default()
}

/// p(0), ..., p(n_max).
pub fn partition_table(n_max: usize) -> Vec<Integer> {
    let mut p: Vec<Integer> = Vec::with_capacity(n_max + 1);
    p.push(Integer::from(1));
    for i in 1..=n_max {
        let mut sum = Integer::new();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            if k % 2 == 1 {
                sum += &p[i - g1];
                if g2 <= i {
                    sum += &p[i - g2];
                }
            } else {
                sum -= &p[i - g1];
                if g2 <= i {
                    sum -= &p[i - g2];
                }
            }
            k += 1;
        }
        p.push(sum);
    }
    p
}

/// The counts N(m, n) for a fixed n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDistribution {
    pub n: u64,
    #[serde(with = "crate::qseries::serde_int_map")]
    pub counts: BTreeMap<i64, Integer>,
}

impl RankDistribution {
    pub fn get(&self, m: i64) -> Integer {
        self.counts.get(&m).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> Integer {
        self.counts.values().sum()
    }

    /// Σ_m C(m,2) N(m,n) with C(m,2) = m(m-1)/2 for every integer m.
    pub fn eta2(&self) -> Integer {
        self.counts
            .iter()
            .map(|(&m, c)| Integer::from(binom2(m)) * c)
            .sum()
    }
}

pub(crate) fn binom2(m: i64) -> i64 {
    m * (m - 1) / 2
}

/// Rank distributions for every n up to a bound.
///
/// Partitions are counted by number of parts and largest part: adding
/// parts of size L to the table of partitions with parts below L, the
/// increment at (n, parts) is exactly the number of partitions with largest
/// part L and that many parts.
pub struct RankTable {
    rows: Vec<RankDistribution>,
}

impl RankTable {
    pub fn new(n_max: usize) -> Self {
        let width = n_max + 1;
        // g[n * width + l]: partitions of n into exactly l parts, each <= current L
        let mut g = vec![Integer::new(); width * width];
        g[0] = Integer::from(1);
        let mut rows: Vec<BTreeMap<i64, Integer>> = vec![BTreeMap::new(); width];
        rows[0].insert(0, Integer::from(1));
        for big in 1..=n_max {
            for n in big..=n_max {
                for l in 1..=(n - big + 1) {
                    let inc = g[(n - big) * width + l - 1].clone();
                    if inc == 0 {
                        continue;
                    }
                    let m = big as i64 - l as i64;
                    *rows[n].entry(m).or_default() += &inc;
                    g[n * width + l] += inc;
                }
            }
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(n, counts)| RankDistribution { n: n as u64, counts })
            .collect();
        RankTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn distribution(&self, n: usize) -> &RankDistribution {
        &self.rows[n]
    }

    pub fn eta2(&self, n: usize) -> Integer {
        self.rows[n].eta2()
    }

    pub fn into_rows(self) -> Vec<RankDistribution> {
        self.rows
    }
}

pub fn rank_distribution(n: u64) -> RankDistribution {
    RankTable::new(n as usize).into_rows().pop().expect("table has row n")
}

/// N(m, n) by listing every partition of n.
pub fn rank_distribution_by_enumeration(n: u32) -> RankDistribution {
    let mut counts: BTreeMap<i64, Integer> = BTreeMap::new();
    for p in partitions_of(n) {
        *counts.entry(p.rank()).or_default() += 1;
    }
    RankDistribution { n: n as u64, counts }
}

pub fn eta2_moment(n: u64) -> Integer {
    rank_distribution(n).eta2()
}

/// η₂(0), ..., η₂(n_max) from the rank table.
pub fn eta2_moment_table(n_max: usize) -> Vec<Integer> {
    let table = RankTable::new(n_max);
    (0..=n_max).map(|n| table.eta2(n)).collect()
}

/// spt(0), ..., spt(n_max).
///
/// A partition of n whose smallest part s occurs exactly m times is a
/// partition of n - ms into parts larger than s with m copies of s appended.
pub fn spt_table(n_max: usize) -> Vec<Integer> {
    // above[t][j]: partitions of j into parts >= t, for t in 1..=n_max+1
    let mut above = vec![vec![Integer::new(); n_max + 1]; n_max + 2];
    for row in above.iter_mut() {
        row[0] = Integer::from(1);
    }
    for t in (1..=n_max).rev() {
        for j in 1..=n_max {
            let mut v = above[t + 1][j].clone();
            if j >= t {
                v += &above[t][j - t];
            }
            above[t][j] = v;
        }
    }
    let mut out = vec![Integer::new(); n_max + 1];
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let mut total = Integer::new();
        for s in 1..=n {
            let mut m = 1;
            while m * s <= n {
                total += Integer::from(m) * &above[s + 1][n - m * s];
                m += 1;
            }
        }
        *slot = total;
    }
    out
}

pub fn spt_oracle(n: u64) -> Result<Integer> {
    if n == 0 {
        return Err(Error::InvalidArgument("spt is defined for n >= 1".into()));
    }
    Ok(spt_table(n as usize).pop().expect("table has row n"))
}

/// spt(n) by listing every partition of n.
pub fn spt_by_enumeration(n: u32) -> Integer {
    partitions_of(n)
        .map(|p| p.smallest_part_multiplicity())
        .sum::<usize>()
        .into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_partition_counts() {
        let p = partition_table(10);
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (a, b) in p.iter().zip(expected) {
            assert_eq!(*a, b);
        }
    }

    #[test]
    fn enumeration_order_is_descending() {
        let all: Vec<Vec<u32>> = partitions_of(4).map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            all,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions_of(0).count(), 1);
    }

    #[test]
    fn rank_examples() {
        let d1 = rank_distribution(1);
        assert_eq!(d1.counts.len(), 1);
        assert_eq!(d1.get(0), 1);
        let d2 = rank_distribution(2);
        assert_eq!((d2.get(1), d2.get(-1), d2.get(0)), (1.into(), 1.into(), 0.into()));
        let d0 = rank_distribution(0);
        assert_eq!(d0.get(0), 1);
    }

    #[test]
    fn moment_examples() {
        assert_eq!(eta2_moment(1), 0);
        assert_eq!(eta2_moment(2), 1);
        assert_eq!(eta2_moment(3), 4);
    }

    #[test]
    fn spt_examples() {
        assert_eq!(spt_oracle(1).unwrap(), 1);
        assert_eq!(spt_oracle(2).unwrap(), 3);
        assert_eq!(spt_oracle(3).unwrap(), 5);
        assert!(spt_oracle(0).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        let p = Partition::new(vec![3, 1, 1]).unwrap();
        assert_eq!(p.rank(), 0);
        assert_eq!(p.conjugate().parts(), &[3, 1, 1]);
        assert_eq!(p.smallest_part_multiplicity(), 2);
    }
}
