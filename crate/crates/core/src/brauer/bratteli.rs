use std::collections::BTreeMap;

use crate::combinatorics::{mixed_to_partition, su_irrep_dim, MixedIrrepLabel, Partition};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Irrep labels and path counts along `A_{0,0} → A_{n,0} → A_{n,m}`.
#[derive(Clone, Debug)]
pub struct BratteliLattice {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub levels: Vec<BTreeMap<MixedIrrepLabel, BigUint>>,
}

/// Builds the lattice: `n` steps adding a box to `λ_L`, then `m` steps that
/// either add a box to `λ_R` or remove one from `λ_L`, keeping
/// `rows(λ_L) + rows(λ_R) ≤ d`. A vertex's count is the sum over its parents.
pub fn bratteli_lattice(n: usize, m: usize, d: usize) -> Result<BratteliLattice> {
    if d < 2 {
        return Err(Error::Config(format!("Bratteli lattice needs d >= 2 (got {d})")));
    }
    let mut levels = vec![BTreeMap::from([(MixedIrrepLabel::vacuum(d), BigUint::one())])];
    for step in 0..n + m {
        let mut next: BTreeMap<MixedIrrepLabel, BigUint> = BTreeMap::new();
        for (label, count) in levels.last().expect("level 0 exists") {
            let mut children: Vec<(Partition, Partition)> = Vec::new();
            if step < n {
                children.extend(label.left.add_box().into_iter().map(|l| (l, label.right.clone())));
            } else {
                children.extend(label.right.add_box().into_iter().map(|r| (label.left.clone(), r)));
                children.extend(label.left.remove_box().into_iter().map(|l| (l, label.right.clone())));
            }
            for (l, r) in children {
                if let Ok(child) = MixedIrrepLabel::new(l, r, d) {
                    *next.entry(child).or_insert_with(BigUint::zero) += count;
                }
            }
        }
        levels.push(next);
    }
    Ok(BratteliLattice { n, m, d, levels })
}

impl BratteliLattice {
    pub fn final_level(&self) -> &BTreeMap<MixedIrrepLabel, BigUint> {
        self.levels.last().expect("level 0 exists")
    }

    /// `Σ path_count · dim V_λ̂` over the final level; equals `d^{n+m}`.
    pub fn dimension_sum(&self) -> Result<BigUint> {
        let mut acc = BigUint::zero();
        for (label, count) in self.final_level() {
            acc += count * su_irrep_dim(&mixed_to_partition(label)?, self.d)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(l: &[usize], r: &[usize], d: usize) -> MixedIrrepLabel {
        MixedIrrepLabel::new(Partition::new(l.to_vec()).unwrap(), Partition::new(r.to_vec()).unwrap(), d).unwrap()
    }

    #[test]
    fn trivial_chain() {
        let b = bratteli_lattice(1, 0, 2).unwrap();
        assert_eq!(b.final_level().len(), 1);
        assert_eq!(b.final_level()[&label(&[1], &[], 2)], BigUint::one());
        assert_eq!(b.levels[0].len(), 1);
    }

    #[test]
    fn qubit_three_three() {
        let b = bratteli_lattice(3, 3, 2).unwrap();
        let expected = [(vec![3], vec![3], 1u32), (vec![2], vec![2], 5), (vec![1], vec![1], 9), (vec![], vec![], 5)];
        assert_eq!(b.final_level().len(), 4);
        for (l, r, c) in expected {
            assert_eq!(b.final_level()[&label(&l, &r, 2)], BigUint::from(c));
        }
        assert_eq!(b.dimension_sum().unwrap(), BigUint::from(64u32));
    }

    #[test]
    fn dimension_sums() {
        for n in 0..=3 {
            for m in 0..=3 {
                for d in [2usize, 3] {
                    let b = bratteli_lattice(n, m, d).unwrap();
                    assert_eq!(b.dimension_sum().unwrap(), BigUint::from(d).pow((n + m) as u32), "({n},{m},{d})");
                }
            }
        }
    }

    #[test]
    fn path_counts_square_to_algebra_dimension() {
        // For d ≥ n + m the algebra is semisimple of dimension (n+m)!.
        let b = bratteli_lattice(2, 2, 4).unwrap();
        let total: BigUint = b.final_level().values().map(|c| c * c).sum();
        assert_eq!(total, BigUint::from(24u32));
    }
}
