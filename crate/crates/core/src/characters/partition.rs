use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, got ({0},{1},{2})")]
    NotDecreasing(u32, u32, u32),
    #[error("expected three comma-separated non-negative integers, got {0:?}")]
    Malformed(String),
}

/// λ₁ ≥ λ₂ ≥ λ₃ ≥ 0, the highest weight of an irreducible Sp(6)-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u32; 3]", into = "[u32; 3]")]
pub struct Partition([u32; 3]);

impl Partition {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self, PartitionError> {
        if a < b || b < c {
            return Err(PartitionError::NotDecreasing(a, b, c));
        }
        Ok(Self([a, b, c]))
    }

    pub const fn zero() -> Self {
        Self([0, 0, 0])
    }

    pub fn parts(&self) -> &[u32; 3] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All partitions of weight `w` with at most three parts, in
    /// lexicographically descending order.
    pub fn of_weight(w: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        for a in (0..=w).rev() {
            for b in (0..=a.min(w - a)).rev() {
                let c = w - a - b;
                if c <= b {
                    out.push(Partition([a, b, c]));
                }
            }
        }
        out
    }

    /// Partitions of weight ≤ `max`, ascending weight then lexicographically
    /// descending.
    pub fn up_to_weight(max: u32) -> Vec<Partition> {
        (0..=max).flat_map(Self::of_weight).collect()
    }
}

impl TryFrom<[u32; 3]> for Partition {
    type Error = PartitionError;

    fn try_from(p: [u32; 3]) -> Result<Self, Self::Error> {
        Self::new(p[0], p[1], p[2])
    }
}

impl From<Partition> for [u32; 3] {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Parses `"a,b,c"` (surrounding parentheses allowed).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || PartitionError::Malformed(s.to_string());
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<u32> = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| malformed())?;
        let [a, b, c]: [u32; 3] = parts.try_into().map_err(|_| malformed())?;
        Self::new(a, b, c)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "({a},{b},{c})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_parsing() {
        assert_eq!("2,1,0".parse::<Partition>().unwrap().parts(), &[2, 1, 0]);
        assert_eq!("(4, 3, 3)".parse::<Partition>().unwrap().weight(), 10);
        assert_eq!(
            "0,0,1".parse::<Partition>(),
            Err(PartitionError::NotDecreasing(0, 0, 1))
        );
        assert!(matches!("1,2".parse::<Partition>(), Err(PartitionError::Malformed(_))));
        assert!(matches!("a,b,c".parse::<Partition>(), Err(PartitionError::Malformed(_))));
        assert!(matches!("-1,0,0".parse::<Partition>(), Err(PartitionError::Malformed(_))));
    }

    #[test]
    fn enumeration_order_and_counts() {
        let w4: Vec<String> = Partition::of_weight(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(w4, ["(4,0,0)", "(3,1,0)", "(2,2,0)", "(2,1,1)"]);
        let counts: Vec<usize> = (0..=10).map(|w| Partition::of_weight(w).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 4, 5, 7, 8, 10, 12, 14]);
    }

    #[test]
    fn serde_rejects_invalid() {
        let p: Partition = serde_json::from_str("[3,1,0]").unwrap();
        assert_eq!(p.to_string(), "(3,1,0)");
        assert!(serde_json::from_str::<Partition>("[0,1,0]").is_err());
    }
}
