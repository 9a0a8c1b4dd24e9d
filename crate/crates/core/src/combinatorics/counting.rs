//! Exact counting: irrep dimensions, Haar trace moments and Catalan numbers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combinatorics::{partitions_of, Partition};
use crate::error::{Error, Result};

pub fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // running product stays integral: C(n−k+i, i) at step i
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - k + i) / BigUint::from(i))
}

/// Dimension of the irreducible representation of `S_m` labelled by `lambda`
/// (hook length formula).
pub fn sym_group_irrep_dim(lambda: &Partition) -> BigUint {
    let hooks = lambda.hook_lengths().into_iter().fold(BigUint::one(), |acc, h| acc * BigUint::from(h));
    let (q, r) = factorial(lambda.weight()).div_rem(&hooks);
    debug_assert!(r.is_zero());
    q
}

/// Dimension of the `SU(d)` irrep with highest weight `lambda`:
/// the product over boxes of `(d + column − row) / hook`.
pub fn su_irrep_dim(lambda: &Partition, d: usize) -> Result<BigUint> {
    if lambda.rows() > d {
        return Err(Error::RowCap { rows: lambda.rows(), dim: d });
    }
    let mut num = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            num *= BigUint::from(d + j - i);
        }
    }
    let den = lambda.hook_lengths().into_iter().fold(BigUint::one(), |acc, h| acc * BigUint::from(h));
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// `f_{m,d} = Σ_{λ ⊢ m, ℓ(λ) ≤ d} d_λ²`, the `2m`-th Haar moment of `|tr U|` on `U(d)`.
pub fn f_coeff(m: usize, d: usize) -> BigUint {
    partitions_of(m, d.max(1))
        .iter()
        .map(|lambda| {
            let dim = sym_group_irrep_dim(lambda);
            &dim * &dim
        })
        .sum()
}

/// `C_m = binom(2m+1, m) / (2m+1)`.
pub fn catalan(m: usize) -> BigUint {
    let (q, r) = binomial(2 * m + 1, m).div_rem(&BigUint::from(2 * m + 1));
    debug_assert!(r.is_zero());
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Permutation;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Independent count: permutations of S_m whose LIS is at most d.
    fn lis_count(m: usize, d: usize) -> u64 {
        Permutation::all(m).iter().filter(|p| p.longest_increasing_subsequence() <= d).count() as u64
    }

    /// Catalan numbers by the convolution recurrence.
    fn catalan_recurrence(m: usize) -> Vec<u64> {
        let mut c = vec![1u64];
        for n in 0..m {
            c.push((0..=n).map(|i| c[i] * c[n - i]).sum());
        }
        c
    }

    #[test]
    fn symmetric_group_dims() {
        assert_eq!(sym_group_irrep_dim(&part(&[5])), big(1));
        assert_eq!(sym_group_irrep_dim(&part(&[2, 1])), big(2));
        assert_eq!(sym_group_irrep_dim(&part(&[2, 2])), big(2));
        assert_eq!(sym_group_irrep_dim(&part(&[3, 2, 1])), big(16));
    }

    #[test]
    fn su_dims() {
        assert_eq!(su_irrep_dim(&Partition::empty(), 2).unwrap(), big(1));
        assert_eq!(su_irrep_dim(&part(&[6]), 2).unwrap(), big(7));
        assert_eq!(su_irrep_dim(&part(&[1]), 3).unwrap(), big(3));
        // adjoint of SU(3)
        assert_eq!(su_irrep_dim(&part(&[2, 1]), 3).unwrap(), big(8));
        assert!(matches!(su_irrep_dim(&part(&[1, 1, 1]), 2), Err(Error::RowCap { .. })));
    }

    #[test]
    fn burnside_identity() {
        for m in 0..=8 {
            assert_eq!(f_coeff(m, m.max(1)), factorial(m), "m = {m}");
        }
    }

    #[test]
    fn f_coeff_examples_and_lis_oracle() {
        assert_eq!(f_coeff(0, 3), big(1));
        assert_eq!(f_coeff(3, 2), big(5));
        assert_eq!(f_coeff(3, 3), big(6));
        assert_eq!(f_coeff(4, 2), big(14));
        for m in 0..=7 {
            for d in 1..=4 {
                assert_eq!(f_coeff(m, d), big(lis_count(m, d)), "m = {m}, d = {d}");
            }
        }
    }

    #[test]
    fn f_coeff_monotone_in_d() {
        for m in 0..=7 {
            let values: Vec<BigUint> = (1..=9).map(|d| f_coeff(m, d)).collect();
            assert!(values.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(values[8], factorial(m));
        }
    }

    #[test]
    fn catalan_numbers() {
        let rec = catalan_recurrence(10);
        assert_eq!(catalan(0), big(1));
        assert_eq!(catalan(2), big(2));
        assert_eq!(catalan(5), big(42));
        for (m, &c) in rec.iter().enumerate() {
            assert_eq!(catalan(m), big(c));
            assert_eq!(f_coeff(m, 2), catalan(m));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(9, 5), big(126));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(binomial(60, 30), big(118264581564861424));
    }
}
