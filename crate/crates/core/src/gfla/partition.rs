//! Integer partitions in Jordan-block notation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Jordan block sizes, weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Build from the rank sequence `r_0 = n, r_1 = rank(A), r_2 = rank(A^2), ...`
    /// ending in zero: the number of parts of size at least `i` is `r_{i-1} - r_i`.
    pub fn from_rank_sequence(ranks: &[usize]) -> Partition {
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut parts = Vec::new();
        for (i, &count) in at_least.iter().enumerate() {
            let next = at_least.get(i + 1).copied().unwrap_or(0);
            for _ in 0..count - next {
                parts.push(i + 1);
            }
        }
        Partition::new(parts)
    }

    /// Rank sequence `rank(N^i)` for `i = 0..=largest part` of a nilpotent
    /// matrix with these Jordan blocks.
    pub fn rank_sequence(&self) -> Vec<usize> {
        let top = self.parts.first().copied().unwrap_or(0);
        (0..=top)
            .map(|i| self.parts.iter().map(|&p| p.saturating_sub(i)).sum())
            .collect()
    }

    /// Dominance order: `self` dominates `other` if every partial sum of
    /// `self` is at least the corresponding partial sum of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let len = self.parts.len().max(other.parts.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    /// Exponent notation, largest part first: `5^26,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == p {
                j += 1;
            }
            if j - i == 1 {
                out.push(p.to_string());
            } else {
                out.push(format!("{}^{}", p, j - i));
            }
            i = j;
        }
        write!(f, "{}", out.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Partition::new(Vec::new()));
        }
        let mut parts = Vec::new();
        for item in s.split(',') {
            let bad = || Error::Invalid(format!("bad partition component '{}'", item));
            let (size, mult) = match item.split_once('^') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (item.trim(), "1"),
            };
            let size: usize = size.parse().map_err(|_| bad())?;
            let mult: usize = mult.parse().map_err(|_| bad())?;
            if size == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat(size).take(mult));
        }
        Ok(Partition::new(parts))
    }
}
