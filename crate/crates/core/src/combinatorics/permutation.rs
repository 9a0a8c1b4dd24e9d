use std::fmt;

use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// A permutation of `{0, …, k−1}` in one-line notation.
///
/// Composition follows `(p ∘ q)(x) = p(q(x))` everywhere in this crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x >= k || seen[x] {
                return Err(Error::Permutation(format!("{images:?} is not a bijection on 0..{k}")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(k: usize) -> Self {
        Self { images: (0..k).collect() }
    }

    /// Swap of `a` and `b` on `k` points.
    pub fn transposition(k: usize, a: usize, b: usize) -> Result<Self> {
        if a >= k || b >= k || a == b {
            return Err(Error::Permutation(format!("transposition ({a} {b}) on {k} points")));
        }
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(a, b);
        Ok(Self { images })
    }

    /// The cycle `0 → 1 → … → k−1 → 0`.
    pub fn long_cycle(k: usize) -> Self {
        Self { images: (0..k).map(|i| (i + 1) % k.max(1)).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Permutation(format!(
                "cannot compose permutations on {} and {} points",
                self.len(),
                other.len()
            )));
        }
        Ok(Self { images: other.images.iter().map(|&x| self.images[x]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Cycle lengths, weakly decreasing.
    pub fn cycle_type(&self) -> Partition {
        let k = self.len();
        let mut seen = vec![false; k];
        let mut lengths = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lengths.push(len);
        }
        Partition::from_unsorted(lengths)
    }

    pub fn num_cycles(&self) -> usize {
        self.cycle_type().rows()
    }

    /// All `k!` permutations in lexicographic order of their one-line form.
    pub fn all(k: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(Self { images: cur.clone() });
            if !next_lexicographic(&mut cur) {
                break;
            }
        }
        out
    }

    /// Length of the longest strictly increasing subsequence of the one-line form.
    pub fn longest_increasing_subsequence(&self) -> usize {
        let mut tails: Vec<usize> = Vec::new();
        for &x in &self.images {
            match tails.binary_search(&x) {
                Ok(_) => {}
                Err(pos) if pos == tails.len() => tails.push(x),
                Err(pos) => tails[pos] = x,
            }
        }
        tails.len()
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn composition_convention() {
        // p = (0 1), q = (1 2); (p∘q)(1) = p(2) = 2, (p∘q)(2) = p(1) = 0
        let p = Permutation::transposition(3, 0, 1).unwrap();
        let q = Permutation::transposition(3, 1, 2).unwrap();
        let pq = p.compose(&q).unwrap();
        assert_eq!(pq.images(), &[1, 2, 0]);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(3).cycle_type().parts(), &[1, 1, 1]);
        assert_eq!(Permutation::new(vec![1, 0, 2]).unwrap().cycle_type().parts(), &[2, 1]);
        assert_eq!(Permutation::long_cycle(3).cycle_type().parts(), &[3]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(0).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
        let all = Permutation::all(3);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn lis() {
        assert_eq!(Permutation::identity(5).longest_increasing_subsequence(), 5);
        assert_eq!(Permutation::new(vec![2, 1, 0]).unwrap().longest_increasing_subsequence(), 1);
        assert_eq!(Permutation::new(vec![1, 0, 3, 2]).unwrap().longest_increasing_subsequence(), 2);
    }
}
