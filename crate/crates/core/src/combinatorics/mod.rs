//! Exact combinatorics over permutations and partitions.

mod counting;
mod mixed;
mod partition;
mod permutation;

pub use counting::{binomial, catalan, f_coeff, factorial, su_irrep_dim, sym_group_irrep_dim};
pub use mixed::{mixed_to_partition, mixed_to_standard, MixedIrrepLabel};
pub use partition::{partitions_of, Partition};
pub use permutation::Permutation;

/// Cycle type of a permutation; alias kept for call sites that read better as a free function.
pub fn cycle_type(p: &Permutation) -> Partition {
    p.cycle_type()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm_strategy(k: usize) -> impl Strategy<Value = Permutation> {
        Just((0..k).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn cycle_type_is_conjugation_invariant((p, q) in (1usize..8).prop_flat_map(|k| (perm_strategy(k), perm_strategy(k)))) {
            let conj = q.compose(&p).unwrap().compose(&q.inverse()).unwrap();
            prop_assert_eq!(cycle_type(&p), cycle_type(&conj));
            prop_assert_eq!(cycle_type(&p).weight(), p.len());
        }

        #[test]
        fn inverse_composes_to_identity(p in (0usize..9).prop_flat_map(perm_strategy)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        }
    }
}
