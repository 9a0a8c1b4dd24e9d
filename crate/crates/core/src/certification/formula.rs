use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::combinatorics::{binomial, f_coeff};
use crate::error::{Error, Result};

/// Optimal parallel success probability for `k` anomalies in dimension `d`:
/// `d^{-2k} Σ_m (−1)^m binom(k,m) f_{m,d} d^{2(k−m)}`, exactly.
pub fn success_probability_formula(k: usize, d: usize) -> Result<BigRational> {
    if k == 0 || d < 2 {
        return Err(Error::Config(format!("formula needs k >= 1 and d >= 2 (got k={k}, d={d})")));
    }
    let d2 = BigInt::from(d * d);
    let mut num = BigInt::zero();
    for m in 0..=k {
        let term = BigInt::from(binomial(k, m)) * BigInt::from(f_coeff(m, d)) * d2.pow((k - m) as u32);
        if m % 2 == 0 {
            num += term;
        } else {
            num -= term;
        }
    }
    Ok(BigRational::new(num, d2.pow(k as u32)))
}

/// `binom(2k+1, k+1) / 4^k`, the `d = 2` specialization.
pub fn catalan_closed_form(k: usize) -> BigRational {
    BigRational::new(BigInt::from(binomial(2 * k + 1, k + 1)), BigInt::from(BigUint::from(4u32).pow(k as u32)))
}

/// `"num/den"` rendering used in reports.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn worked_values() {
        for d in 2..=7 {
            let d2 = (d * d) as i64;
            assert_eq!(success_probability_formula(1, d).unwrap(), q(d2 - 1, d2));
        }
        assert_eq!(success_probability_formula(2, 2).unwrap(), q(5, 8));
        assert_eq!(success_probability_formula(3, 2).unwrap(), q(35, 64));
        assert_eq!(success_probability_formula(4, 2).unwrap(), q(63, 128));
        assert_eq!(success_probability_formula(2, 3).unwrap(), q(65, 81));
        assert!(success_probability_formula(0, 2).is_err());
        assert!(success_probability_formula(1, 1).is_err());
    }

    #[test]
    fn two_anomaly_closed_form() {
        // (d⁴ − 2d² + 2)/d⁴ for d ≥ 2, from f₁ = 1 and f₂ = 2.
        for d in 2..=8i64 {
            let d4 = d.pow(4);
            assert_eq!(success_probability_formula(2, d as usize).unwrap(), q(d4 - 2 * d * d + 2, d4));
        }
    }

    #[test]
    fn qubit_case_is_catalan() {
        for k in 1..=10 {
            assert_eq!(success_probability_formula(k, 2).unwrap(), catalan_closed_form(k), "k={k}");
        }
    }

    #[test]
    fn monotone_in_k_and_d() {
        for k in 1..=5 {
            for d in 2..=6 {
                let p = success_probability_formula(k, d).unwrap();
                assert!(p < success_probability_formula(k, d + 1).unwrap(), "increasing in d at k={k}, d={d}");
                assert!(p > success_probability_formula(k + 1, d).unwrap(), "decreasing in k at k={k}, d={d}");
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(rational_string(&q(5, 8)), "5/8");
        assert_eq!(rational_string(&q(2, 1)), "2");
        assert_eq!(rational_to_f64(&q(5, 8)), 0.625);
    }
}
