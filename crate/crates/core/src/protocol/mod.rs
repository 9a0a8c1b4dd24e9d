//! Monte Carlo simulation of the local parallel protocol: every device gets
//! half of `|φ⁺⟩`, and the `{Π₀, Π₁}` measurement clicks only on devices
//! that applied the anomalous unitary.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certification::{rational_string, rational_to_f64, success_probability_formula};
use crate::combinatorics::f_coeff;
use crate::error::{Error, Result};
use crate::linalg::{haar_unitary, Unitary};
use crate::scalar::Real;

/// Trials per shard; shard `i` draws from the ChaCha stream `i` of the seed.
pub const SHARD_SIZE: usize = 8192;

/// Largest moment order accepted by [`moment_estimate`].
pub const MAX_MOMENT: usize = 6;
/// Fewest trials accepted by [`moment_estimate`].
pub const MIN_MOMENT_TRIALS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Average of the conditional success probability `(1 − |tr U|²/d²)^k`.
    RaoBlackwell,
    /// Per-device click outcomes, counting exact identifications.
    Bernoulli,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rao-blackwell" => Ok(Self::RaoBlackwell),
            "bernoulli" => Ok(Self::Bernoulli),
            other => Err(Error::Config(format!("unknown mode {other:?} (expected rao-blackwell or bernoulli)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > self.n {
            return Err(Error::Config(format!("need 1 <= k <= n (got n={}, k={})", self.n, self.k)));
        }
        if self.d < 2 {
            return Err(Error::Config(format!("need d >= 2 (got {})", self.d)));
        }
        if self.trials == 0 {
            return Err(Error::Config("need at least one trial".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationResult {
    pub estimate: f64,
    pub stderr: f64,
    pub analytic: String,
    pub analytic_value: f64,
    /// `(estimate − analytic)/stderr`; absent when the sample has no spread.
    pub z_score: Option<f64>,
    pub trials: usize,
}

/// `1 − |tr U|²/d²`: probability that `Π₁` clicks on `(1 ⊗ U)|φ⁺⟩`.
pub fn click_probability<T: Real>(u: &Unitary<T>) -> T {
    let d = T::lit(u.dim() as f64);
    let p = T::one() - u.trace().norm_sqr() / (d * d);
    p.max(T::zero()).min(T::one())
}

/// Sum and sum of squares of `f` over `trials` draws, sharded deterministically.
fn sharded_moments(trials: usize, seed: u64, mut f: impl FnMut(&mut ChaCha8Rng) -> f64) -> (f64, f64) {
    let mut total = (0.0, 0.0);
    let shards = trials.div_ceil(SHARD_SIZE);
    for shard in 0..shards {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shard as u64);
        let count = SHARD_SIZE.min(trials - shard * SHARD_SIZE);
        let mut part = (0.0, 0.0);
        for _ in 0..count {
            let x = f(&mut rng);
            part.0 += x;
            part.1 += x * x;
        }
        total.0 += part.0;
        total.1 += part.1;
    }
    total
}

fn summarize(sum: f64, sum_sq: f64, trials: usize, analytic: &BigRational) -> SimulationResult {
    let t = trials as f64;
    let mean = sum / t;
    let var = if trials > 1 { ((sum_sq - t * mean * mean) / (t - 1.0)).max(0.0) } else { 0.0 };
    let stderr = (var / t).sqrt();
    let analytic_value = rational_to_f64(analytic);
    SimulationResult {
        estimate: mean,
        stderr,
        analytic: rational_string(analytic),
        analytic_value,
        z_score: (stderr > 0.0).then(|| (mean - analytic_value) / stderr),
        trials,
    }
}

/// Estimates the success probability of the local parallel protocol.
///
/// Every anomalous device applies the same Haar-random `U`; non-anomalous
/// devices act trivially and never click.
pub fn simulate(config: &SimulationConfig) -> Result<SimulationResult> {
    config.validate()?;
    let analytic = success_probability_formula(config.k, config.d)?;
    let (n, k, d) = (config.n, config.k, config.d);
    let (sum, sum_sq) = match config.mode {
        Mode::RaoBlackwell => sharded_moments(config.trials, config.seed, |rng| {
            click_probability(&haar_unitary::<f64, _>(d, rng)).powi(k as i32)
        }),
        Mode::Bernoulli => sharded_moments(config.trials, config.seed, |rng| {
            let u = haar_unitary::<f64, _>(d, rng);
            let p = click_probability(&u);
            let mut truth = sample(rng, n, k).into_vec();
            truth.sort_unstable();
            let clicked: Vec<usize> = (0..n).filter(|j| truth.binary_search(j).is_ok() && rng.gen_bool(p)).collect();
            if clicked == truth {
                1.0
            } else {
                0.0
            }
        }),
    };
    Ok(summarize(sum, sum_sq, config.trials, &analytic))
}

/// Monte Carlo `E|tr U|^{2m}` compared against `f_{m,d}`.
pub fn moment_estimate(m: usize, d: usize, trials: usize, seed: u64) -> Result<SimulationResult> {
    if m > MAX_MOMENT {
        return Err(Error::Config(format!("moment order {m} > {MAX_MOMENT}")));
    }
    if trials < MIN_MOMENT_TRIALS {
        return Err(Error::Config(format!("moment estimates need >= {MIN_MOMENT_TRIALS} trials (got {trials})")));
    }
    if d == 0 {
        return Err(Error::Config("need d >= 1".into()));
    }
    let exact = BigRational::from_integer(BigInt::from(f_coeff(m, d)));
    let (sum, sum_sq) =
        sharded_moments(trials, seed, |rng| haar_unitary::<f64, _>(d, rng).trace().norm_sqr().powi(m as i32));
    Ok(summarize(sum, sum_sq, trials, &exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use num_complex::Complex;

    fn config(n: usize, k: usize, d: usize, trials: usize, mode: Mode) -> SimulationConfig {
        SimulationConfig { n, k, d, trials, seed: 2024, mode }
    }

    #[test]
    fn click_examples() {
        assert_eq!(click_probability(&Unitary::<f64>::identity(3)), 0.0);
        let z = ComplexMatrix::from_real_diagonal(&[1.0, -1.0]);
        assert_eq!(click_probability(&Unitary::new(z).unwrap()), 1.0);
        let phase =
            ComplexMatrix::from_fn(
                2,
                2,
                |r, c| {
                    if r == c {
                        Complex::from_polar(1.0, 0.3)
                    } else {
                        Complex::new(0.0, 0.0)
                    }
                },
            );
        assert!(click_probability::<f64>(&Unitary::new(phase).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn determinism_and_n_invariance() {
        let a = simulate(&config(3, 2, 2, 20_000, Mode::RaoBlackwell)).unwrap();
        let b = simulate(&config(3, 2, 2, 20_000, Mode::RaoBlackwell)).unwrap();
        assert_eq!(a, b);
        let c = simulate(&config(7, 2, 2, 20_000, Mode::RaoBlackwell)).unwrap();
        assert_eq!(a.estimate.to_bits(), c.estimate.to_bits());
        let x = simulate(&config(4, 2, 2, 20_000, Mode::Bernoulli)).unwrap();
        let y = simulate(&config(4, 2, 2, 20_000, Mode::Bernoulli)).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.analytic, a.analytic);
    }

    #[test]
    fn estimates_are_probabilities() {
        for mode in [Mode::RaoBlackwell, Mode::Bernoulli] {
            let r = simulate(&config(2, 1, 3, 5_000, mode)).unwrap();
            assert!((0.0..=1.0).contains(&r.estimate));
            assert!(r.z_score.unwrap().abs() < 5.0);
        }
    }

    #[test]
    fn rao_blackwell_has_smaller_spread() {
        let mut wins = 0;
        for seed in 0..20 {
            let rb = simulate(&SimulationConfig { seed, ..config(4, 2, 2, 2_000, Mode::RaoBlackwell) }).unwrap();
            let be = simulate(&SimulationConfig { seed, ..config(4, 2, 2, 2_000, Mode::Bernoulli) }).unwrap();
            if rb.stderr <= be.stderr {
                wins += 1;
            }
        }
        assert_eq!(wins, 20);
    }

    #[test]
    fn invalid_configs() {
        assert!(simulate(&config(3, 0, 2, 10, Mode::Bernoulli)).is_err());
        assert!(simulate(&config(3, 4, 2, 10, Mode::Bernoulli)).is_err());
        assert!(simulate(&config(3, 1, 1, 10, Mode::Bernoulli)).is_err());
        assert!(simulate(&config(3, 1, 2, 0, Mode::Bernoulli)).is_err());
        assert!("fast".parse::<Mode>().is_err());
    }

    #[test]
    fn moments() {
        let zero = moment_estimate(0, 3, 10_000, 1).unwrap();
        assert_eq!((zero.estimate, zero.stderr, zero.z_score), (1.0, 0.0, None));
        let m2 = moment_estimate(2, 2, 20_000, 1).unwrap();
        assert_eq!(m2.analytic, "2");
        assert!(m2.z_score.unwrap().abs() < 4.0);
        assert!(moment_estimate(7, 2, 10_000, 1).is_err());
        assert!(moment_estimate(1, 2, 100, 1).is_err());
    }
}
