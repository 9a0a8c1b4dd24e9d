use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::Real;

/// A square matrix checked to be unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> Unitary<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        if !matrix.is_unitary(T::lit(T::UNITARY_TOL)) {
            return Err(Error::Shape("matrix is not unitary within tolerance".into()));
        }
        Ok(Self { matrix })
    }

    pub fn identity(d: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(d) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex<T> {
        self.matrix.trace()
    }

    /// Column-stacked `|U⟩⟩ = Σ_i |i⟩ ⊗ U|i⟩`, indexed `i·d + j ↦ U_{ji}`.
    pub fn vectorize(&self) -> Vec<Complex<T>> {
        let d = self.dim();
        (0..d * d).map(|idx| self.matrix[(idx % d, idx / d)]).collect()
    }
}

/// Haar-distributed unitary on `C^d`.
///
/// Draws a complex Ginibre matrix and orthonormalizes its columns (modified
/// Gram–Schmidt, applied twice). Gram–Schmidt fixes the QR factorization with
/// a positive real diagonal in `R`; that is the normalization under which `Q`
/// is exactly Haar, so no further phase correction is needed (the bias that
/// the Mezzadri correction removes comes from LAPACK-style QR, whose `R`
/// diagonal signs are arbitrary).
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Unitary<T> {
    assert!(d >= 1, "Haar unitary needs d >= 1");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut cols: Vec<Vec<Complex<f64>>> = (0..d)
        .map(|_| {
            (0..d)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex::new(re * scale, im * scale)
                })
                .collect()
        })
        .collect();
    for j in 0..d {
        for _pass in 0..2 {
            for i in 0..j {
                let proj: Complex<f64> = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let qi = cols[i].clone();
                for (x, q) in cols[j].iter_mut().zip(&qi) {
                    *x -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in &mut cols[j] {
            *x /= norm;
        }
    }
    let matrix = ComplexMatrix::from_fn(d, d, |r, c| Complex::new(T::lit(cols[c][r].re), T::lit(cols[c][r].im)));
    Unitary { matrix }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_dimensional_is_a_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = haar_unitary::<f64, _>(1, &mut rng);
        assert!((u.matrix()[(0, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unitarity_and_determinism() {
        for d in 1..=6 {
            let mut a = ChaCha8Rng::seed_from_u64(d as u64);
            let mut b = ChaCha8Rng::seed_from_u64(d as u64);
            let u = haar_unitary::<f64, _>(d, &mut a);
            assert!(u.matrix().is_unitary(1e-10));
            assert_eq!(u, haar_unitary::<f64, _>(d, &mut b));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!(haar_unitary::<f32, _>(3, &mut rng).matrix().is_unitary(1e-5));
    }

    #[test]
    fn vectorization_convention() {
        let m = ComplexMatrix::from_fn(2, 2, |r, c| Complex::new((2 * r + c) as f64, 0.0));
        let u = Unitary { matrix: m };
        // |U⟩⟩ = Σ_i |i⟩ ⊗ U|i⟩
        let v = u.vectorize();
        assert_eq!(v.iter().map(|z| z.re).collect::<Vec<_>>(), vec![0.0, 2.0, 1.0, 3.0]);
    }
}
