//! Exact checks of congruences statistic(A·n+B) ≡ 0 (mod Q) and brute-force
//! scans for such progressions.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::durfee::{nf2_distribution, reduce_mod};
use crate::partitions::{partition_table, spt_table};
use crate::qseries::{r2_full_rank_series, r2_odd_series, r2_series};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest index each statistic is tabulated to.
pub const P_CAP: u64 = 20_000;
pub const ETA2_CAP: u64 = 5_000;
pub const SPT_CAP: u64 = 3_000;
pub const NF2_CAP: u64 = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    P,
    Eta2,
    Eta2Odd,
    Spt,
    /// NF₂(r,t;n).
    Nf2 { r: u32, t: u32 },
}

impl Statistic {
    pub fn cap(&self) -> u64 {
        match self {
            Statistic::P => P_CAP,
            Statistic::Eta2 | Statistic::Eta2Odd => ETA2_CAP,
            Statistic::Spt => SPT_CAP,
            Statistic::Nf2 { .. } => NF2_CAP,
        }
    }

    /// Exact values at indices 0..=n_max.
    pub fn table(&self, n_max: u64) -> Result<Vec<Integer>> {
        if n_max > self.cap() {
            return Err(Error::OracleRangeExceeded(format!("{self} tabulated only up to n = {}", self.cap())));
        }
        let len = n_max as usize + 1;
        Ok(match *self {
            Statistic::P => partition_table(n_max as usize),
            Statistic::Eta2 => r2_series(len)?.into_coeffs(),
            Statistic::Eta2Odd => r2_odd_series(len)?.into_coeffs(),
            Statistic::Spt => spt_table(n_max as usize),
            Statistic::Nf2 { r, t } => nf2_residue_table(t, n_max)?.into_iter().map(|row| row[r as usize].clone()).collect(),
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::P => write!(f, "p"),
            Statistic::Eta2 => write!(f, "eta2"),
            Statistic::Eta2Odd => write!(f, "eta2_odd"),
            Statistic::Spt => write!(f, "spt"),
            Statistic::Nf2 { r, t } => write!(f, "nf2({r},{t})"),
        }
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Statistic::P),
            "eta2" => Ok(Statistic::Eta2),
            "eta2_odd" => Ok(Statistic::Eta2Odd),
            "spt" => Ok(Statistic::Spt),
            _ => {
                let inner = s
                    .strip_prefix("nf2(")
                    .and_then(|x| x.strip_suffix(')'))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown statistic '{s}'")))?;
                let (r, t) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidArgument(format!("expected nf2(r,t), got '{s}'")))?;
                let r: u32 = r.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad r in '{s}'")))?;
                let t: u32 = t.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad t in '{s}'")))?;
                if t < 2 || r >= t {
                    return Err(Error::InvalidArgument("nf2 needs t ≥ 2 and 0 ≤ r < t".into()));
                }
                Ok(Statistic::Nf2 { r, t })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Status {
    VerifiedUpTo { n: u64 },
    RefutedAt { n: u64 },
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::VerifiedUpTo { n } => write!(f, "verified-up-to {n}"),
            Status::RefutedAt { n } => write!(f, "refuted-at {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionCandidate {
    pub statistic: Statistic,
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    pub modulus: u64,
    pub n_max_tested: u64,
    pub status: Status,
}

impl ProgressionCandidate {
    pub fn verified(&self) -> bool {
        matches!(self.status, Status::VerifiedUpTo { .. })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "statistic": self.statistic.to_string(),
            "A": self.a,
            "B": self.b,
            "modulus": self.modulus,
            "n_max_tested": self.n_max_tested,
            "status": self.status.to_string(),
        })
    }

    pub const CSV_HEADER: &'static str = "statistic,A,B,modulus,n_max_tested,status";

    pub fn to_csv_row(&self) -> String {
        format!("\"{}\",{},{},{},{},{}", self.statistic, self.a, self.b, self.modulus, self.n_max_tested, self.status)
    }
}

fn check(values: &[Integer], a: u64, b: u64, modulus: u64, n_max: u64) -> Status {
    for n in 0..=n_max {
        let idx = (a * n + b) as usize;
        if !values[idx].is_divisible_u(modulus as u32) {
            return Status::RefutedAt { n };
        }
    }
    Status::VerifiedUpTo { n: n_max }
}

fn require(a: u64, b: u64, modulus: u64) -> Result<()> {
    if a == 0 {
        return Err(Error::InvalidArgument("A must be positive".into()));
    }
    if b >= a {
        return Err(Error::InvalidArgument("need 0 ≤ B < A".into()));
    }
    if modulus == 0 || modulus > u32::MAX as u64 {
        return Err(Error::InvalidArgument("modulus out of range".into()));
    }
    Ok(())
}

/// Checks statistic(A·n+B) ≡ 0 (mod modulus) for 0 ≤ n ≤ n_max.
pub fn verify_progression(statistic: Statistic, a: u64, b: u64, modulus: u64, n_max: u64) -> Result<ProgressionCandidate> {
    require(a, b, modulus)?;
    let values = statistic.table(a * n_max + b)?;
    Ok(ProgressionCandidate { statistic, a, b, modulus, n_max_tested: n_max, status: check(&values, a, b, modulus, n_max) })
}

/// Every (A, B) with A ≤ a_max, B < A whose progression survives all
/// n ≤ n_max. Survivors are checked again against a freshly computed table.
pub fn scan(statistic: Statistic, modulus: u64, a_max: u64, n_max: u64) -> Result<Vec<ProgressionCandidate>> {
    require(1, 0, modulus)?;
    if a_max == 0 {
        return Ok(Vec::new());
    }
    let values = statistic.table(a_max * n_max + a_max - 1)?;
    let found: Vec<ProgressionCandidate> = (1..=a_max)
        .into_par_iter()
        .flat_map_iter(|a| {
            let values = &values;
            (0..a).filter_map(move |b| match check(values, a, b, modulus, n_max) {
                s @ Status::VerifiedUpTo { .. } => {
                    Some(ProgressionCandidate { statistic, a, b, modulus, n_max_tested: n_max, status: s })
                }
                Status::RefutedAt { .. } => None,
            })
        })
        .collect();
    for c in &found {
        let again = verify_progression(statistic, c.a, c.b, c.modulus, c.n_max_tested)?;
        if !again.verified() {
            return Err(Error::InvalidArgument(format!("scan result ({}, {}) failed re-verification", c.a, c.b)));
        }
    }
    Ok(found)
}

/// Drops candidates implied by a smaller one: (A, B) is redundant when some
/// other survivor (A′, B′) has A′ | A and B ≡ B′ (mod A′).
pub fn primitive(candidates: &[ProgressionCandidate]) -> Vec<ProgressionCandidate> {
    candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d.a < c.a && c.a % d.a == 0 && c.b % d.a == d.b))
        .cloned()
        .collect()
}

/// Rows n = 0..=n_max of NF₂(r,t;n), r = 0..t−1, from the full-rank series.
pub fn nf2_residue_table(t: u32, n_max: u64) -> Result<Vec<Vec<Integer>>> {
    if t < 2 {
        return Err(Error::InvalidArgument("t must be at least 2".into()));
    }
    if n_max > NF2_CAP {
        return Err(Error::OracleRangeExceeded(format!("nf2 tabulated only up to n = {NF2_CAP}")));
    }
    let series = r2_full_rank_series(n_max as usize + 1)?;
    Ok(series
        .coeffs()
        .iter()
        .map(|poly| {
            let red = poly.reduce_mod(t);
            (0..t as i64).map(|r| red.coeff(r)).collect()
        })
        .collect())
}

/// The same table from Durfee-symbol enumeration, n ≥ 1.
pub fn nf2_residue_table_by_enumeration(t: u32, n_max: u64) -> Result<Vec<Vec<Integer>>> {
    if t < 2 {
        return Err(Error::InvalidArgument("t must be at least 2".into()));
    }
    let mut rows = vec![vec![Integer::new(); t as usize]];
    let rest: Result<Vec<Vec<Integer>>> = (1..=n_max).into_par_iter().map(|n| Ok(reduce_mod(&nf2_distribution(n)?, t))).collect();
    rows.extend(rest?);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_statistic() {
        assert_eq!("p".parse::<Statistic>().unwrap(), Statistic::P);
        assert_eq!("nf2(1,3)".parse::<Statistic>().unwrap(), Statistic::Nf2 { r: 1, t: 3 });
        assert!("nf2(3,3)".parse::<Statistic>().is_err());
        assert!("q".parse::<Statistic>().is_err());
    }

    #[test]
    fn refutes_wrong_progression() {
        let c = verify_progression(Statistic::P, 5, 3, 5, 200).unwrap();
        assert_eq!(c.status, Status::RefutedAt { n: 0 });
    }

    #[test]
    fn primitive_drops_refinements() {
        let found = scan(Statistic::P, 5, 10, 30).unwrap();
        let prim = primitive(&found);
        assert_eq!(prim.iter().map(|c| (c.a, c.b)).collect::<Vec<_>>(), vec![(5, 4)]);
    }
}
