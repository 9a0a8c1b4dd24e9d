use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::Partition;
use crate::error::{Error, Result};

/// Pair of partitions labelling an irrep of the mixed action `U^{⊗n} ⊗ (U*)^{⊗m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedIrrepLabel {
    pub left: Partition,
    pub right: Partition,
    pub local_dim: usize,
}

impl MixedIrrepLabel {
    pub fn new(left: Partition, right: Partition, local_dim: usize) -> Result<Self> {
        let rows = left.rows() + right.rows();
        if rows > local_dim {
            return Err(Error::RowCap { rows, dim: local_dim });
        }
        Ok(Self { left, right, local_dim })
    }

    pub fn vacuum(local_dim: usize) -> Self {
        Self { left: Partition::empty(), right: Partition::empty(), local_dim }
    }
}

impl fmt::Display for MixedIrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

/// Unified highest weight of length `d`: entry `i` (1-based) is
/// `λ_{R,1} + λ_{L,i} − λ_{R,d+1−i}`.
pub fn mixed_to_standard(label: &MixedIrrepLabel) -> Result<Vec<usize>> {
    let d = label.local_dim;
    let rows = label.left.rows() + label.right.rows();
    if rows > d {
        return Err(Error::RowCap { rows, dim: d });
    }
    let top = label.right.part(0);
    Ok((0..d).map(|i| top + label.left.part(i) - label.right.part(d - 1 - i)).collect())
}

/// [`mixed_to_standard`] as a [`Partition`] (trailing zeros dropped).
pub fn mixed_to_partition(label: &MixedIrrepLabel) -> Result<Partition> {
    Partition::new(mixed_to_standard(label)?)
}
