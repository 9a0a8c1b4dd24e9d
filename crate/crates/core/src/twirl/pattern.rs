use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset `r ⊆ {1,…,n}` of device labels (1-based, sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnomalyPattern {
    n: usize,
    members: Vec<usize>,
}

impl AnomalyPattern {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("repeated device in pattern {members:?}")));
        }
        if let Some(&bad) = members.iter().find(|&&m| m == 0 || m > n) {
            return Err(Error::Config(format!("device {bad} outside 1..={n}")));
        }
        Ok(Self { n, members })
    }

    /// The null pattern `∅`.
    pub fn null(n: usize) -> Self {
        Self { n, members: Vec::new() }
    }

    /// All `binom(n, k)` patterns of size `k`, lexicographic on members.
    pub fn all(n: usize, k: usize) -> Vec<Self> {
        fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<AnomalyPattern>) {
            if cur.len() == k {
                out.push(AnomalyPattern { n, members: cur.clone() });
                return;
            }
            for m in start..=n {
                if n - m + 1 < k - cur.len() {
                    break;
                }
                cur.push(m);
                rec(n, k, m + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= n {
            rec(n, k, 1, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Every subset of `{1,…,n}`, ordered by size and then lexicographically.
    pub fn power_set(n: usize) -> Vec<Self> {
        (0..=n).flat_map(|k| Self::all(n, k)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The null pattern `∅` (no anomalous device).
    pub fn is_null(&self) -> bool {
        self.is_empty()
    }

    /// Whether the 0-based device index belongs to the pattern.
    pub fn contains_index(&self, device: usize) -> bool {
        self.members.binary_search(&(device + 1)).is_ok()
    }

    /// 0-based device indices.
    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().map(|m| m - 1).collect()
    }

    /// Devices outside the pattern, 0-based.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| !self.contains_index(j)).collect()
    }
}

impl fmt::Display for AnomalyPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration() {
        let pats = AnomalyPattern::all(4, 2);
        let members: Vec<Vec<usize>> = pats.iter().map(|p| p.members().to_vec()).collect();
        assert_eq!(members, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(AnomalyPattern::all(5, 3).len(), 10);
        assert_eq!(AnomalyPattern::power_set(4).len(), 16);
        assert!(AnomalyPattern::all(2, 3).is_empty());
    }

    #[test]
    fn validation_and_display() {
        assert!(AnomalyPattern::new(3, vec![0]).is_err());
        assert!(AnomalyPattern::new(3, vec![4]).is_err());
        assert!(AnomalyPattern::new(3, vec![2, 2]).is_err());
        let p = AnomalyPattern::new(3, vec![3, 1]).unwrap();
        assert_eq!(p.to_string(), "{1,3}");
        assert_eq!(p.complement_indices(), vec![1]);
        assert_eq!(AnomalyPattern::null(2).to_string(), "∅");
    }
}
