//! Durfee symbols, 2-marked Durfee symbols and their odd analogues.
//!
//! Marked symbols are enumerated side by side: for a fixed side S and a
//! fixed largest subscript-1 top value M₁ the four blocks (top/bottom ×
//! subscript 1/2) are independent bounded partitions, so the enumeration is
//! a product of memoized row lists.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::partitions::{binom2, Partition};
use crate::{Error, Result};

/// A Durfee symbol: the columns right of the Durfee square (top) and the
/// rows below it (bottom).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DurfeeSymbol {
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
    pub side: u32,
}

impl DurfeeSymbol {
    pub fn from_partition(p: &Partition) -> Self {
        let parts = p.parts();
        let side = parts
            .iter()
            .enumerate()
            .take_while(|(i, &x)| x as usize > *i)
            .count() as u32;
        let bottom = parts[side as usize..].to_vec();
        let conj = p.conjugate();
        let top = conj.parts()[side as usize..].to_vec();
        DurfeeSymbol { top, bottom, side }
    }

    pub fn n(&self) -> u64 {
        let s = self.side as u64;
        s * s + self.top.iter().chain(&self.bottom).map(|&x| x as u64).sum::<u64>()
    }

    pub fn rank(&self) -> i64 {
        self.top.len() as i64 - self.bottom.len() as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedEntry {
    pub value: u32,
    pub mark: u8,
}

/// A 2-marked Durfee symbol. For odd symbols the entries are odd and the
/// represented integer uses 2S²+2S+1 in place of S².
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedDurfeeSymbol {
    pub top: Vec<MarkedEntry>,
    pub bottom: Vec<MarkedEntry>,
    pub side: u32,
}

impl MarkedDurfeeSymbol {
    fn counts(&self) -> [i64; 4] {
        let c = |row: &[MarkedEntry], m: u8| row.iter().filter(|e| e.mark == m).count() as i64;
        [c(&self.top, 1), c(&self.bottom, 1), c(&self.top, 2), c(&self.bottom, 2)]
    }

    /// ρ₁ + 2ρ₂ with ρ₁ = τ₁ − β₁ − 1 and ρ₂ = τ₂ − β₂.
    pub fn full_rank(&self) -> i64 {
        let [t1, b1, t2, b2] = self.counts();
        (t1 - b1 - 1) + 2 * (t2 - b2)
    }

    fn entries_sum(&self) -> u64 {
        self.top.iter().chain(&self.bottom).map(|e| e.value as u64).sum()
    }

    pub fn n(&self) -> u64 {
        let s = self.side as u64;
        s * s + self.entries_sum()
    }

    pub fn n_odd(&self) -> u64 {
        let s = self.side as u64;
        2 * s * s + 2 * s + 1 + self.entries_sum()
    }

    pub fn is_valid(&self) -> bool {
        self.check(self.side)
    }

    pub fn is_valid_odd(&self) -> bool {
        self.top.iter().chain(&self.bottom).all(|e| e.value % 2 == 1) && self.check(2 * self.side + 1)
    }

    fn check(&self, cap: u32) -> bool {
        let row_ok = |row: &[MarkedEntry]| {
            row.iter().all(|e| (e.mark == 1 || e.mark == 2) && e.value >= 1 && e.value <= cap)
                && row
                    .windows(2)
                    .all(|w| w[0].value >= w[1].value && w[0].mark >= w[1].mark)
        };
        if !row_ok(&self.top) || !row_ok(&self.bottom) {
            return false;
        }
        let m1 = match self.top.iter().filter(|e| e.mark == 1).map(|e| e.value).max() {
            Some(v) => v,
            None => return false,
        };
        self.bottom.iter().all(|e| match e.mark {
            1 => e.value <= m1,
            _ => e.value >= m1 && e.value <= cap,
        })
    }
}

/// An odd Durfee symbol: odd entries bounded by 2·side+1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddDurfeeSymbol {
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
    pub side: u32,
}

impl OddDurfeeSymbol {
    pub fn n(&self) -> u64 {
        let s = self.side as u64;
        2 * s * s + 2 * s + 1 + self.top.iter().chain(&self.bottom).map(|&x| x as u64).sum::<u64>()
    }

    pub fn is_valid(&self) -> bool {
        let cap = 2 * self.side + 1;
        let ok = |row: &[u32]| {
            row.iter().all(|&x| x % 2 == 1 && x <= cap) && row.windows(2).all(|w| w[0] >= w[1])
        };
        ok(&self.top) && ok(&self.bottom)
    }
}

pub fn odd_rank(s: &OddDurfeeSymbol) -> i64 {
    s.top.len() as i64 - s.bottom.len() as i64
}

pub fn full_rank(s: &MarkedDurfeeSymbol) -> i64 {
    s.full_rank()
}

type Rows = Rc<Vec<Vec<u32>>>;

/// Memoized lists of non-increasing rows with a given sum and value range.
struct RowCache {
    odd: bool,
    memo: HashMap<(u32, u32, u32), Rows>,
}

impl RowCache {
    fn new(odd: bool) -> Self {
        RowCache { odd, memo: HashMap::new() }
    }

    fn rows(&mut self, sum: u32, lo: u32, hi: u32) -> Rows {
        if let Some(r) = self.memo.get(&(sum, lo, hi)) {
            return r.clone();
        }
        let mut out = Vec::new();
        if sum == 0 {
            out.push(Vec::new());
        } else {
            let step = if self.odd { 2 } else { 1 };
            let mut p = hi.min(sum);
            if self.odd && p.is_multiple_of(2) {
                p = p.saturating_sub(1);
            }
            while p >= lo.max(1) {
                for rest in self.rows(sum - p, lo, p).iter() {
                    let mut row = Vec::with_capacity(rest.len() + 1);
                    row.push(p);
                    row.extend_from_slice(rest);
                    out.push(row);
                }
                if p < step {
                    break;
                }
                p -= step;
            }
        }
        let out = Rc::new(out);
        self.memo.insert((sum, lo, hi), out.clone());
        out
    }
}

fn visit_marked_impl<F: FnMut(&MarkedDurfeeSymbol)>(n: u64, odd: bool, mut f: F) {
    let mut cache = RowCache::new(odd);
    let mut sym = MarkedDurfeeSymbol::default();
    let step = if odd { 2 } else { 1 };
    let mut side = if odd { 0u32 } else { 1u32 };
    loop {
        let s = side as u64;
        let base = if odd { 2 * s * s + 2 * s + 1 } else { s * s };
        if base + 1 > n {
            break;
        }
        let budget = (n - base) as u32;
        let cap = if odd { 2 * side + 1 } else { side };
        let mut m1 = 1;
        while m1 <= cap.min(budget) {
            for a in m1..=budget {
                let top1 = cache.rows(a - m1, 1, m1);
                if top1.is_empty() {
                    continue;
                }
                let r1 = budget - a;
                for b in 0..=r1 {
                    let top2 = cache.rows(b, m1, cap);
                    if top2.is_empty() {
                        continue;
                    }
                    for c in 0..=(r1 - b) {
                        let bot1 = cache.rows(c, 1, m1);
                        let bot2 = cache.rows(r1 - b - c, m1, cap);
                        if bot1.is_empty() || bot2.is_empty() {
                            continue;
                        }
                        for t2 in top2.iter() {
                            for t1 in top1.iter() {
                                for b2 in bot2.iter() {
                                    for b1 in bot1.iter() {
                                        sym.side = side;
                                        sym.top.clear();
                                        sym.top.extend(t2.iter().map(|&v| MarkedEntry { value: v, mark: 2 }));
                                        sym.top.push(MarkedEntry { value: m1, mark: 1 });
                                        sym.top.extend(t1.iter().map(|&v| MarkedEntry { value: v, mark: 1 }));
                                        sym.bottom.clear();
                                        sym.bottom.extend(b2.iter().map(|&v| MarkedEntry { value: v, mark: 2 }));
                                        sym.bottom.extend(b1.iter().map(|&v| MarkedEntry { value: v, mark: 1 }));
                                        f(&sym);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            m1 += step;
        }
        side += 1;
    }
}

/// Calls `f` on every 2-marked Durfee symbol representing `n`.
pub fn visit_marked<F: FnMut(&MarkedDurfeeSymbol)>(n: u64, f: F) {
    visit_marked_impl(n, false, f)
}

/// Calls `f` on every odd 2-marked Durfee symbol representing `n`.
pub fn visit_odd_marked<F: FnMut(&MarkedDurfeeSymbol)>(n: u64, f: F) {
    visit_marked_impl(n, true, f)
}

pub fn enumerate_marked(n: u64) -> Result<Vec<MarkedDurfeeSymbol>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut out = Vec::new();
    visit_marked(n, |s| out.push(s.clone()));
    Ok(out)
}

pub fn enumerate_odd_marked(n: u64) -> Result<Vec<MarkedDurfeeSymbol>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut out = Vec::new();
    visit_odd_marked(n, |s| out.push(s.clone()));
    Ok(out)
}

/// D₂(n), the number of 2-marked Durfee symbols of n.
pub fn count_marked(n: u64) -> Integer {
    let mut c = 0u64;
    visit_marked(n, |_| c += 1);
    c.into()
}

/// D₂ᵒ(n), the number of odd 2-marked Durfee symbols of n.
pub fn count_odd_marked(n: u64) -> Integer {
    let mut c = 0u64;
    visit_odd_marked(n, |_| c += 1);
    c.into()
}

/// NF₂(m, n) for all m.
pub fn nf2_distribution(n: u64) -> Result<BTreeMap<i64, Integer>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    visit_marked(n, |s| *counts.entry(s.full_rank()).or_default() += 1);
    Ok(counts.into_iter().map(|(m, c)| (m, Integer::from(c))).collect())
}

/// Reduces a distribution m ↦ c(m) to residue classes r mod t.
pub fn reduce_mod(dist: &BTreeMap<i64, Integer>, t: u32) -> Vec<Integer> {
    let mut out = vec![Integer::new(); t as usize];
    for (&m, c) in dist {
        out[m.rem_euclid(t as i64) as usize] += c;
    }
    out
}

pub fn enumerate_odd(n: u64) -> Result<Vec<OddDurfeeSymbol>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut cache = RowCache::new(true);
    let mut out = Vec::new();
    let mut side = 0u32;
    loop {
        let s = side as u64;
        let base = 2 * s * s + 2 * s + 1;
        if base > n {
            break;
        }
        let budget = (n - base) as u32;
        let cap = 2 * side + 1;
        for a in 0..=budget {
            let tops = cache.rows(a, 1, cap);
            let bots = cache.rows(budget - a, 1, cap);
            for t in tops.iter() {
                for b in bots.iter() {
                    out.push(OddDurfeeSymbol { top: t.clone(), bottom: b.clone(), side });
                }
            }
        }
        side += 1;
    }
    Ok(out)
}

/// Nᵒ(m, n) by enumeration.
pub fn odd_rank_distribution(n: u64) -> Result<BTreeMap<i64, Integer>> {
    let mut counts: BTreeMap<i64, Integer> = BTreeMap::new();
    for s in enumerate_odd(n)? {
        *counts.entry(odd_rank(&s)).or_default() += 1;
    }
    Ok(counts)
}

/// η₂ᵒ(n) = Σ_m C(m+1, 2) Nᵒ(m, n).
pub fn eta2_odd_moment(n: u64) -> Result<Integer> {
    Ok(odd_rank_distribution(n)?
        .iter()
        .map(|(&m, c)| Integer::from(binom2(m + 1)) * c)
        .sum())
}
